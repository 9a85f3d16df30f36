use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morsetwist_core::catalog::{self, CatalogDatum};
use morsetwist_core::complex::HomologyOptions;
use morsetwist_core::cw::{from_simplicial, validate_regular, FacetList, RegularCW};
use morsetwist_core::invariants::{
    check_inequalities, euler_numbers, hspace_obstruction, novikov_numbers, parallel_form_obstruction,
    InvariantReport, ObstructionVerdict,
};
use morsetwist_core::morse::{lift_cover, LocalSystem, MorseDatum};
use morsetwist_core::rings::{parse_rational, Rational};
use morsetwist_core::Error;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Twisted Morse and cellular homology with exact arithmetic.
#[derive(Parser)]
#[command(name = "morsetwist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check structure and that boundaries square to zero.
    Validate { file: PathBuf },
    /// Homology of the twisted chain complex.
    Homology(Compute),
    /// Cohomology of the dual cochain complex.
    Cohomology(Compute),
    /// Novikov numbers of a class, optionally against zero counts.
    Novikov {
        #[command(flatten)]
        compute: Compute,
        /// Zero counts c_0,c_1,… for the Novikov inequalities.
        #[arg(long, value_delimiter = ',')]
        zeros: Option<Vec<usize>>,
    },
    /// Euler number from cells and from homology.
    Euler(Compute),
    /// H-space and parallel-form verdicts.
    Obstructions(Compute),
    /// Build a regular CW complex from a facet list.
    FromTriangulation {
        facets: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Built-in examples.
    Example {
        #[command(subcommand)]
        action: ExampleAction,
    },
}

#[derive(Subcommand)]
enum ExampleAction {
    List,
    Show { name: String },
    Run {
        name: Option<String>,
        #[arg(long, default_value = "16")]
        depth: String,
        #[arg(long = "max-iter", default_value_t = 10_000)]
        max_iter: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemFlag {
    Trivial,
    UnitRep,
    Exp,
    Nov,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Compute {
    /// Morse datum (JSON), regular CW complex (JSON) or facet list.
    file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    example: Option<String>,
    #[arg(long, value_enum)]
    system: Option<SystemFlag>,
    /// Comma-separated rationals; a single 0 stands for the zero class.
    #[arg(long, allow_hyphen_values = true)]
    class: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value = "16")]
    depth: String,
    #[arg(long = "max-iter", default_value_t = 10_000)]
    max_iter: usize,
}

/// Exit 1: a mathematical failure. Exit 2: input could not be read or parsed.
enum Fail {
    Math(String),
    Input(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::MalformedFacets(_)
            | Error::UnknownExample(_)
            | Error::NonpositiveDepth(_)
            | Error::ClassLength { .. } => Fail::Input(e.to_string()),
            _ => Fail::Math(e.to_string()),
        }
    }
}

type Out = Result<bool, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Out {
    match cmd {
        Command::Validate { file } => validate(&file),
        Command::Homology(c) => homology(&c, false),
        Command::Cohomology(c) => homology(&c, true),
        Command::Novikov { compute, zeros } => novikov(&compute, zeros),
        Command::Euler(c) => euler(&c),
        Command::Obstructions(c) => obstructions(&c),
        Command::FromTriangulation { facets, output } => from_triangulation(&facets, output.as_deref()),
        Command::Example { action } => example(action),
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

/// Facet text starts with `vertices`; JSON with `points` is a Morse datum,
/// with `cells` a CW complex.
fn parse_input(text: &str) -> Result<CatalogDatum, Fail> {
    let t = text.trim_start();
    if t.starts_with("vertices") {
        return Ok(CatalogDatum::Facets(FacetList::parse(text)?));
    }
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Fail::Input(format!("parse error: {e}")))?;
    if v.get("points").is_some() {
        let d: MorseDatum = serde_json::from_value(v).map_err(|e| Fail::Input(format!("parse error: {e}")))?;
        Ok(CatalogDatum::Morse(d))
    } else if v.get("cells").is_some() {
        Ok(CatalogDatum::Cw(RegularCW::from_json(text)?))
    } else {
        Err(Fail::Input("input is neither a Morse datum, a CW complex nor a facet list".into()))
    }
}

fn load(c: &Compute) -> Result<CatalogDatum, Fail> {
    match (&c.file, &c.example) {
        (Some(f), None) => {
            let d = parse_input(&read(f)?)?;
            if let CatalogDatum::Morse(m) = &d {
                m.check()?;
            }
            Ok(d)
        }
        (None, Some(name)) => Ok(catalog::get_example(name)?.datum),
        _ => Err(Fail::Input("give an input file or --example NAME".into())),
    }
}

fn forms(d: &CatalogDatum) -> usize {
    match d {
        CatalogDatum::Morse(m) => m.basis_forms.len(),
        CatalogDatum::Cw(c) => c.basis_forms.len(),
        CatalogDatum::Facets(_) => 0,
    }
}

fn parse_class(s: &str, n: usize) -> Result<Vec<Rational>, Fail> {
    let v = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    if v.len() == 1 && v[0].is_zero() {
        return Ok(vec![Rational::zero(); n]);
    }
    if v.len() != n {
        return Err(Error::ClassLength { expected: n, got: v.len() }.into());
    }
    Ok(v)
}

fn class_of(c: &Compute, d: &CatalogDatum) -> Result<Option<Vec<Rational>>, Fail> {
    c.class.as_deref().map(|s| parse_class(s, forms(d))).transpose()
}

fn system(c: &Compute, d: &CatalogDatum) -> Result<LocalSystem, Fail> {
    let class = class_of(c, d)?;
    let need = |name: &str| Fail::Input(format!("--system {name} needs --class"));
    match (c.system, class) {
        (None, _) => Err(Fail::Input("--system is required".into())),
        (Some(SystemFlag::Trivial), None) => Ok(LocalSystem::Trivial),
        (Some(SystemFlag::UnitRep), None) => Ok(LocalSystem::UnitRep),
        (Some(SystemFlag::Trivial | SystemFlag::UnitRep), Some(_)) => {
            Err(Fail::Input("--class applies only to exp and nov".into()))
        }
        (Some(SystemFlag::Exp), Some(v)) => Ok(LocalSystem::Exp(v)),
        (Some(SystemFlag::Nov), Some(v)) => Ok(LocalSystem::Nov(v)),
        (Some(SystemFlag::Exp), None) => Err(need("exp")),
        (Some(SystemFlag::Nov), None) => Err(need("nov")),
    }
}

fn options(depth: &str, max_iter: usize) -> Result<HomologyOptions, Fail> {
    let depth = parse_rational(depth)?;
    if !depth.is_positive() {
        return Err(Error::NonpositiveDepth(depth.to_string()).into());
    }
    Ok(HomologyOptions { depth, max_iter })
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("report serializes")
}

fn homology(c: &Compute, dual: bool) -> Out {
    let d = load(c)?;
    let sys = system(c, &d)?;
    let opts = options(&c.depth, c.max_iter)?;
    let complex = if dual { catalog::cochain(&d, &sys)? } else { d.complex(&sys)? };
    if let Err(v) = complex.validate() {
        return Err(Fail::Math(v.to_string()));
    }
    let h = complex.homology(&opts)?;
    match c.format {
        Format::Text => println!("{h}"),
        Format::Json => println!("{}", json(&h)),
    }
    Ok(h.is_complete())
}

fn novikov(c: &Compute, zeros: Option<Vec<usize>>) -> Out {
    let d = load(c)?;
    let class = class_of(c, &d)?.ok_or_else(|| Fail::Input("novikov needs --class".into()))?;
    let opts = options(&c.depth, c.max_iter)?;
    let n = novikov_numbers(&d.as_morse()?, &class, &opts)?;
    let check = zeros.map(|z| check_inequalities(&z, &n)).transpose()?;
    let report = InvariantReport::new(&n, check.as_ref(), vec![]);
    match c.format {
        Format::Text => print!("{report}"),
        Format::Json => println!("{}", json(&report)),
    }
    Ok(n.is_complete() && report.pass != Some(false))
}

fn euler(c: &Compute) -> Out {
    let d = load(c)?;
    let sys = system(c, &d)?;
    let opts = options(&c.depth, c.max_iter)?;
    let e = euler_numbers(&d.as_morse()?, &sys, &opts)?;
    match c.format {
        Format::Text => println!("euler number ({}): cells {}, homology {}", e.system, e.cells, e.homology),
        Format::Json => println!("{}", json(&e)),
    }
    Ok(e.cells == e.homology)
}

#[derive(Serialize)]
struct Verdicts {
    verdicts: Vec<ObstructionVerdict>,
}

fn obstructions(c: &Compute) -> Out {
    let d = load(c)?;
    let sys = system(c, &d)?;
    let opts = options(&c.depth, c.max_iter)?;
    let m = d.as_morse()?;
    let mut verdicts = vec![hspace_obstruction(&m, &sys, &opts)?];
    if let Some(class) = sys.class() {
        if class.iter().any(|x| !x.is_zero()) {
            verdicts.push(parallel_form_obstruction(&m, class)?);
        }
    }
    match c.format {
        Format::Text => {
            for v in &verdicts {
                println!("{v}");
            }
        }
        Format::Json => println!("{}", json(&Verdicts { verdicts })),
    }
    Ok(true)
}

fn report(label: &str, r: Result<(), String>) -> bool {
    match r {
        Ok(()) => {
            println!("{label}: ok");
            true
        }
        Err(m) => {
            println!("{label}: {m}");
            false
        }
    }
}

fn squares_to_zero(d: &CatalogDatum, sys: &LocalSystem) -> Result<(), String> {
    let c = d.complex(sys).map_err(|e| e.to_string())?;
    c.validate().map_err(|v| v.to_string())
}

fn validate(file: &Path) -> Out {
    let d = parse_input(&read(file)?)?;
    let mut ok = true;
    match &d {
        CatalogDatum::Morse(m) => {
            if !report("structure", m.check().map_err(|e| e.to_string())) {
                return Ok(false);
            }
            ok &= report("trivial", squares_to_zero(&d, &LocalSystem::Trivial));
            if m.flows.iter().all(|f| f.unit_tag.is_some()) {
                ok &= report("unit-rep", squares_to_zero(&d, &LocalSystem::UnitRep));
            }
            let n = m.basis_forms.len();
            for i in 0..n {
                let mut class = vec![Rational::zero(); n];
                class[i] = Rational::from_integer(1.into());
                let sys = LocalSystem::Exp(class);
                ok &= report(&sys.to_string(), squares_to_zero(&d, &sys));
            }
            if m.deck_group.is_some() {
                let lifted = lift_cover(m)
                    .map_err(|e| e.to_string())
                    .and_then(|l| squares_to_zero(&CatalogDatum::Morse(l), &LocalSystem::Trivial));
                ok &= report("lift", lifted);
            }
        }
        CatalogDatum::Cw(c) => {
            if !report("regularity", validate_regular(c).map_err(|v| v.to_string())) {
                return Ok(false);
            }
            ok &= report("trivial", squares_to_zero(&d, &LocalSystem::Trivial));
        }
        CatalogDatum::Facets(f) => {
            let cw = from_simplicial(f)?;
            ok &= report("regularity", validate_regular(&cw).map_err(|v| v.to_string()));
            ok &= report("trivial", squares_to_zero(&d, &LocalSystem::Trivial));
        }
    }
    Ok(ok)
}

fn from_triangulation(facets: &Path, output: Option<&Path>) -> Out {
    let f = FacetList::parse(&read(facets)?)?;
    let mut cw = from_simplicial(&f)?;
    if let Some(stem) = facets.file_stem() {
        cw.name = stem.to_string_lossy().into_owned();
    }
    if let Err(v) = validate_regular(&cw) {
        return Err(Fail::Math(v.to_string()));
    }
    let text = cw.to_json();
    let Some(out) = output else {
        println!("{text}");
        return Ok(true);
    };
    fs::write(out, text + "\n").map_err(|e| Fail::Input(format!("{}: {e}", out.display())))?;
    let d = CatalogDatum::Cw(cw.clone());
    let c = d.complex(&LocalSystem::Trivial)?;
    let h = c.homology(&HomologyOptions::default())?;
    let counts: Vec<String> = cw.counts().iter().map(usize::to_string).collect();
    println!("regular CW complex with cell counts ({}), euler number {}", counts.join(", "), c.euler_cells());
    println!("{h}");
    Ok(true)
}

fn example(action: ExampleAction) -> Out {
    match action {
        ExampleAction::List => {
            for n in catalog::NAMES {
                let about = match n {
                    "rpn(n)" => "real projective n-space, one critical point per index".to_string(),
                    _ => catalog::get_example(n)?.about,
                };
                println!("{n:<18} {about}");
            }
            Ok(true)
        }
        ExampleAction::Show { name } => {
            let e = catalog::get_example(&name)?;
            print!("{}", e.datum.export().trim_end());
            println!();
            Ok(true)
        }
        ExampleAction::Run { name, depth, max_iter } => {
            let opts = options(&depth, max_iter)?;
            let results = match name {
                Some(n) => catalog::run_entry(&catalog::get_example(&n)?, &opts),
                None => catalog::run_all(&opts),
            };
            for r in &results {
                println!("{r}");
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            println!("{} passed, {failed} failed", results.len() - failed);
            Ok(failed == 0)
        }
    }
}
