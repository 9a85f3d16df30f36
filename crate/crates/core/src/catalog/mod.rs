//! Built-in examples with their expected results.

mod data;

pub use data::{
    circle_regular, circle_std, genus2, genus2_oriented, klein, rp2, rp2_triangulated, rpn, s2_triangulated, torus,
};

use std::fmt;

use num_bigint::BigInt;

use crate::complex::{AnyComplex, HomologyOptions, HomologySummary};
use crate::cw::{cw_to_morse, from_simplicial, steenrod_boundary, FacetList, RegularCW};
use crate::error::{Error, Result};
use crate::invariants::{check_inequalities, hspace_obstruction, novikov_numbers, parallel_form_obstruction};
use crate::morse::{build_cochain, build_complex, lift_cover, LocalSystem, MorseDatum};
use crate::rings::{int_rat, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogDatum {
    Morse(MorseDatum),
    Cw(RegularCW),
    Facets(FacetList),
}

impl CatalogDatum {
    /// JSON for Morse data and CW complexes, facet text for triangulations.
    pub fn export(&self) -> String {
        match self {
            CatalogDatum::Morse(d) => d.to_json(),
            CatalogDatum::Cw(c) => c.to_json(),
            CatalogDatum::Facets(f) => f.to_text(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CatalogDatum::Morse(_) => "morse datum",
            CatalogDatum::Cw(_) => "regular CW complex",
            CatalogDatum::Facets(_) => "facet list",
        }
    }

    pub fn as_morse(&self) -> Result<MorseDatum> {
        match self {
            CatalogDatum::Morse(d) => Ok(d.clone()),
            CatalogDatum::Cw(c) => cw_to_morse(c),
            CatalogDatum::Facets(f) => cw_to_morse(&from_simplicial(f)?),
        }
    }

    /// Chain complex of a system: Morse complex for Morse data, cellular
    /// boundary otherwise.
    pub fn complex(&self, sys: &LocalSystem) -> Result<AnyComplex> {
        match self {
            CatalogDatum::Morse(d) => build_complex(d, sys),
            CatalogDatum::Cw(c) => steenrod_boundary(c, sys),
            CatalogDatum::Facets(f) => steenrod_boundary(&from_simplicial(f)?, sys),
        }
    }
}

/// What an expectation asserts.
#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    /// Homology (or cohomology) Betti numbers and torsion.
    Homology { system: LocalSystem, cochain: bool, betti: Vec<usize>, torsion: Vec<Vec<u64>> },
    /// Untwisted homology of the cover given by the deck tags.
    Lift { betti: Vec<usize>, torsion: Vec<Vec<u64>> },
    Novikov { class: Vec<Rational>, b: Vec<usize>, q: Vec<usize> },
    /// Both the cell count and the homology give this Euler number.
    Euler { system: LocalSystem, value: i64 },
    Inequalities { class: Vec<Rational>, zeros: Vec<usize>, slack: Vec<i64> },
    HSpace { system: LocalSystem, triggered: bool },
    ParallelForm { class: Vec<Rational>, triggered: bool },
    /// Cellular boundary and the Morse complex of the associated datum agree.
    Agreement { system: LocalSystem },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expectation {
    pub label: String,
    pub check: Check,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub about: String,
    pub datum: CatalogDatum,
    pub expectations: Vec<Expectation>,
}

/// Outcome of one expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub entry: String,
    pub label: String,
    pub pass: bool,
    pub observed: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "ok  " } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.entry, self.label)?;
        if !self.pass {
            write!(f, " (observed {})", self.observed)?;
        }
        Ok(())
    }
}

/// Registry names; `rpn(n)` stands for the family `rpn(2)`, `rpn(3)`, ….
pub const NAMES: [&str; 10] = [
    "circle-std",
    "circle-regular",
    "rp2",
    "rp2-lift",
    "rpn(n)",
    "torus",
    "klein",
    "genus2",
    "rp2-triangulated",
    "s2-triangulated",
];

/// Entries evaluated by [`run_all`].
pub fn default_run() -> Vec<String> {
    let mut v: Vec<String> = NAMES.iter().filter(|n| **n != "rpn(n)").map(|s| s.to_string()).collect();
    v.extend((2..=5).map(|n| format!("rpn({n})")));
    v
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int_rat(x)).collect()
}

fn exp(v: &[i64]) -> LocalSystem {
    LocalSystem::Exp(ints(v))
}

fn nov(v: &[i64]) -> LocalSystem {
    LocalSystem::Nov(ints(v))
}

fn hom(label: &str, system: LocalSystem, betti: &[usize], torsion: &[&[u64]]) -> Expectation {
    Expectation {
        label: label.into(),
        check: Check::Homology {
            system,
            cochain: false,
            betti: betti.to_vec(),
            torsion: torsion.iter().map(|t| t.to_vec()).collect(),
        },
    }
}

fn cohom(label: &str, system: LocalSystem, betti: &[usize]) -> Expectation {
    Expectation {
        label: label.into(),
        check: Check::Homology { system, cochain: true, betti: betti.to_vec(), torsion: vec![vec![]; betti.len()] },
    }
}

fn novikov(label: &str, class: &[i64], b: &[usize], q: &[usize]) -> Expectation {
    Expectation { label: label.into(), check: Check::Novikov { class: ints(class), b: b.to_vec(), q: q.to_vec() } }
}

fn expect(label: &str, check: Check) -> Expectation {
    Expectation { label: label.into(), check }
}

fn parse_rpn(name: &str) -> Option<usize> {
    let n = name.strip_prefix("rpn(").and_then(|s| s.strip_suffix(')')).or_else(|| name.strip_prefix("rpn"))?;
    n.parse().ok().filter(|&n| n >= 1)
}

fn rpn_entry(n: usize) -> CatalogEntry {
    // untwisted: ∂_k = 0 for odd k, 2 for even k; sign system: the reverse
    let (mut b, mut t, mut bs, mut ts) = (vec![0; n + 1], vec![vec![]; n + 1], vec![0; n + 1], vec![vec![]; n + 1]);
    b[0] = 1;
    for k in 0..=n {
        if k % 2 == 1 {
            if k == n {
                b[k] = 1;
            } else {
                t[k] = vec![2];
            }
        } else if k == n {
            bs[k] = 1;
        } else {
            ts[k] = vec![2];
        }
    }
    let t: Vec<&[u64]> = t.iter().map(Vec::as_slice).collect();
    let ts: Vec<&[u64]> = ts.iter().map(Vec::as_slice).collect();
    let even = n % 2 == 0;
    CatalogEntry {
        name: format!("rpn({n})"),
        about: format!("real projective {n}-space, one critical point per index"),
        datum: CatalogDatum::Morse(rpn(n)),
        expectations: vec![
            hom("untwisted integer homology", LocalSystem::Trivial, &b, &t),
            hom("orientation system: free part only in the top degree when n is even", LocalSystem::UnitRep, &bs, &ts),
            expect(
                if even {
                    "orientation system obstructs an associative H-space (n even)"
                } else {
                    "orientation system gives no obstruction (n odd, real homology vanishes)"
                },
                Check::HSpace { system: LocalSystem::UnitRep, triggered: even },
            ),
            expect(
                "Euler number of the orientation system",
                Check::Euler { system: LocalSystem::UnitRep, value: i64::from(even) },
            ),
        ],
    }
}

pub fn get_example(name: &str) -> Result<CatalogEntry> {
    if let Some(n) = parse_rpn(name) {
        return Ok(rpn_entry(n));
    }
    let t = LocalSystem::Trivial;
    let u = LocalSystem::UnitRep;
    let entry = |about: &str, datum, expectations| CatalogEntry {
        name: name.into(),
        about: about.into(),
        datum,
        expectations,
    };
    Ok(match name {
        "circle-std" => entry(
            "round circle with its height function: one minimum, one maximum",
            CatalogDatum::Morse(circle_std()),
            vec![
                hom("trivial system: (Z, Z)", t.clone(), &[1, 1], &[&[], &[]]),
                hom("sign representation: H_0 = Z/2, H_1 = 0", u.clone(), &[0, 0], &[&[2], &[]]),
                hom("exp, class 0: real homology of the circle", exp(&[0]), &[1, 1], &[&[], &[]]),
                hom("exp, class 1: everything vanishes", exp(&[1]), &[0, 0], &[&[], &[]]),
                novikov("Novikov numbers, class 0", &[0], &[1, 1], &[0, 0]),
                novikov("Novikov numbers, class 1 vanish", &[1], &[0, 0], &[0, 0]),
                expect(
                    "inequalities for class 1 with the two critical points",
                    Check::Inequalities { class: ints(&[1]), zeros: vec![1, 1], slack: vec![1, 1] },
                ),
                expect("sign representation: no H-space obstruction, real homology vanishes", Check::HSpace { system: u.clone(), triggered: false }),
            ],
        ),
        "circle-regular" => entry(
            "circle as a regular CW complex: two vertices, two edges",
            CatalogDatum::Cw(circle_regular()),
            vec![
                hom("trivial system: (Z, Z)", t.clone(), &[1, 1], &[&[], &[]]),
                hom("sign flip on one edge: H_0 = Z/2, H_1 = 0", u.clone(), &[0, 0], &[&[2], &[]]),
                hom("exp, class 1: everything vanishes", exp(&[1]), &[0, 0], &[&[], &[]]),
                expect("cellular and Morse complexes agree, trivial system", Check::Agreement { system: t.clone() }),
                expect("cellular and Morse complexes agree, unit tags", Check::Agreement { system: u.clone() }),
                expect("cellular and Morse complexes agree, exp class 1", Check::Agreement { system: exp(&[1]) }),
                expect("cellular and Morse complexes agree, Novikov class 1", Check::Agreement { system: nov(&[1]) }),
            ],
        ),
        "rp2" => entry(
            "projective plane with three critical points",
            CatalogDatum::Morse(rp2()),
            vec![
                hom("untwisted: (Z, Z/2, 0)", t.clone(), &[1, 0, 0], &[&[], &[2], &[]]),
                hom("orientation system: (Z/2, 0, Z)", u.clone(), &[0, 0, 1], &[&[2], &[], &[]]),
                hom("exp, class 1: real homology (R, 0, 0)", exp(&[1]), &[1, 0, 0], &[&[], &[], &[]]),
                hom("exp, class -3/2: real homology (R, 0, 0)", LocalSystem::Exp(vec![Rational::new((-3).into(), 2.into())]), &[1, 0, 0], &[&[], &[], &[]]),
                expect("orientation system obstructs an associative H-space", Check::HSpace { system: u.clone(), triggered: true }),
                expect("untwisted Euler number 1", Check::Euler { system: t.clone(), value: 1 }),
            ],
        ),
        "rp2-lift" => entry(
            "projective plane with deck tags of its double cover",
            CatalogDatum::Morse(rp2()),
            vec![expect("lifted complex is the sphere: (Z, 0, Z)", Check::Lift { betti: vec![1, 0, 1], torsion: vec![vec![]; 3] })],
        ),
        "torus" => entry(
            "flat torus with the standard perfect Morse function",
            CatalogDatum::Morse(torus()),
            vec![
                hom("untwisted: (Z, Z^2, Z)", t.clone(), &[1, 2, 1], &[&[], &[], &[]]),
                novikov("Novikov numbers, class 0", &[0, 0], &[1, 2, 1], &[0, 0, 0]),
                novikov("Novikov numbers, class (1,0) vanish", &[1, 0], &[0, 0, 0], &[0, 0, 0]),
                novikov("Novikov numbers, class (0,1) vanish", &[0, 1], &[0, 0, 0], &[0, 0, 0]),
                expect("exp (1,0): no H-space obstruction", Check::HSpace { system: exp(&[1, 0]), triggered: false }),
                expect("exp (1,0): no parallel-form obstruction", Check::ParallelForm { class: ints(&[1, 0]), triggered: false }),
            ],
        ),
        "klein" => entry(
            "Klein bottle with four critical points",
            CatalogDatum::Morse(klein()),
            vec![
                hom("untwisted: (Z, Z + Z/2, 0)", t.clone(), &[1, 1, 0], &[&[], &[2], &[]]),
                novikov("Novikov numbers, class 0", &[0], &[1, 1, 0], &[0, 1, 0]),
                novikov("Novikov numbers, class 1 vanish", &[1], &[0, 0, 0], &[0, 0, 0]),
                expect(
                    "inequalities for class 0 with the four critical points",
                    Check::Inequalities { class: ints(&[0]), zeros: vec![1, 2, 1], slack: vec![0, 0, 0] },
                ),
            ],
        ),
        "genus2" => {
            let mut ex = vec![
                cohom("exp cochains, class 0: (1, 4, 1)", exp(&[0, 0, 0, 0]), &[1, 4, 1]),
                hom("exp, class (1,0,0,0): (0, R^2, 0)", exp(&[1, 0, 0, 0]), &[0, 2, 0], &[&[], &[], &[]]),
                novikov("Novikov numbers, class 0", &[0, 0, 0, 0], &[1, 4, 1], &[0, 0, 0]),
                novikov("Novikov numbers, class (1,0,0,0)", &[1, 0, 0, 0], &[0, 2, 0], &[0, 0, 0]),
                novikov("Novikov numbers, class (1,1,0,0)", &[1, 1, 0, 0], &[0, 2, 0], &[0, 0, 0]),
                expect(
                    "inequalities for class (1,0,0,0): at least 2 index-1 zeros",
                    Check::Inequalities { class: ints(&[1, 0, 0, 0]), zeros: vec![1, 4, 1], slack: vec![1, 2, 1] },
                ),
                expect("exp (1,0,0,0) obstructs an associative H-space", Check::HSpace { system: exp(&[1, 0, 0, 0]), triggered: true }),
                expect("exp (1,0,0,0) obstructs a parallel form", Check::ParallelForm { class: ints(&[1, 0, 0, 0]), triggered: true }),
                expect("Euler number -2 under exp (1,0,0,0)", Check::Euler { system: exp(&[1, 0, 0, 0]), value: -2 }),
            ];
            for i in 0..4 {
                let mut c = [0; 4];
                c[i] = 1;
                ex.push(cohom(&format!("exp cochains, basis class {}: (0, 2, 0)", i + 1), exp(&c), &[0, 2, 0]));
            }
            entry("closed surface of genus two with a perfect Morse function", CatalogDatum::Morse(genus2()), ex)
        }
        "rp2-triangulated" => entry(
            "six-vertex minimal triangulation of the projective plane",
            CatalogDatum::Facets(rp2_triangulated()),
            vec![
                hom("simplicial homology: (Z, Z/2, 0)", t.clone(), &[1, 0, 0], &[&[], &[2], &[]]),
                expect("Euler number 1", Check::Euler { system: t.clone(), value: 1 }),
                expect("cellular and Morse complexes agree", Check::Agreement { system: t.clone() }),
            ],
        ),
        "s2-triangulated" => entry(
            "boundary of the tetrahedron",
            CatalogDatum::Facets(s2_triangulated()),
            vec![
                hom("simplicial homology: (Z, 0, Z)", t.clone(), &[1, 0, 1], &[&[], &[], &[]]),
                expect("Euler number 2", Check::Euler { system: t, value: 2 }),
            ],
        ),
        _ => return Err(Error::UnknownExample(name.into())),
    })
}

/// `(Z, Z/2, 0)` style rendering.
pub fn tuple(h: &HomologySummary) -> String {
    let parts: Vec<String> = (0..h.degrees.len()).map(|k| h.group(k)).collect();
    format!("({})", parts.join(", "))
}

fn list(v: &[impl fmt::Display]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn matches(h: &HomologySummary, betti: &[usize], torsion: &[Vec<u64>]) -> bool {
    let t: Vec<Vec<BigInt>> = torsion.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    h.is_complete() && h.betti == betti && h.torsion == t
}

fn evaluate(datum: &CatalogDatum, check: &Check, opts: &HomologyOptions) -> Result<(bool, String)> {
    Ok(match check {
        Check::Homology { system, cochain, betti, torsion } => {
            let mut c = datum.complex(system)?;
            if *cochain {
                c = c.dualize()?;
            }
            if let Err(v) = c.validate() {
                return Ok((false, v.to_string()));
            }
            let h = c.homology(opts)?;
            (matches(&h, betti, torsion), tuple(&h))
        }
        Check::Lift { betti, torsion } => {
            let d = lift_cover(&datum.as_morse()?)?;
            let h = build_complex(&d, &LocalSystem::Trivial)?.homology(opts)?;
            (matches(&h, betti, torsion), tuple(&h))
        }
        Check::Novikov { class, b, q } => {
            let n = novikov_numbers(&datum.as_morse()?, class, opts)?;
            let ok = n.is_complete() && n.b == *b && n.q == *q;
            (ok, format!("b = {}, q = {}", list(&n.b), list(&n.q)))
        }
        Check::Euler { system, value } => {
            let c = datum.complex(system)?;
            let cells = c.euler_cells();
            let h = c.homology(opts)?.euler()?;
            (cells == *value && h == *value, format!("cells {cells}, homology {h}"))
        }
        Check::Inequalities { class, zeros, slack } => {
            let n = novikov_numbers(&datum.as_morse()?, class, opts)?;
            let r = check_inequalities(zeros, &n)?;
            (r.pass && r.slack == *slack, format!("slack {}", list(&r.slack)))
        }
        Check::HSpace { system, triggered } => {
            let v = hspace_obstruction(&datum.as_morse()?, system, opts)?;
            (v.triggered == *triggered, v.witness)
        }
        Check::ParallelForm { class, triggered } => {
            let v = parallel_form_obstruction(&datum.as_morse()?, class)?;
            (v.triggered == *triggered, v.witness)
        }
        Check::Agreement { system } => {
            let a = datum.complex(system)?;
            let b = build_complex(&datum.as_morse()?, system)?;
            let (ha, hb) = (a.homology(opts)?, b.homology(opts)?);
            (a == b && ha == hb, format!("cellular {}, Morse {}", tuple(&ha), tuple(&hb)))
        }
    })
}

/// Evaluates every expectation of an entry; errors count as failures.
pub fn run_entry(e: &CatalogEntry, opts: &HomologyOptions) -> Vec<CheckResult> {
    e.expectations
        .iter()
        .map(|x| {
            let (pass, observed) = evaluate(&e.datum, &x.check, opts).unwrap_or_else(|err| (false, err.to_string()));
            CheckResult { entry: e.name.clone(), label: x.label.clone(), pass, observed }
        })
        .collect()
}

pub fn run_all(opts: &HomologyOptions) -> Vec<CheckResult> {
    default_run()
        .iter()
        .flat_map(|n| run_entry(&get_example(n).expect("registered"), opts))
        .collect()
}

/// Cochain complex of a catalog datum.
pub fn cochain(datum: &CatalogDatum, sys: &LocalSystem) -> Result<AnyComplex> {
    match datum {
        CatalogDatum::Morse(d) => build_cochain(d, sys),
        _ => datum.complex(sys)?.dualize(),
    }
}
