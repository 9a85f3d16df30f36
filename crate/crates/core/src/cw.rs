//! Regular CW complexes: regularity checks, the twisted cellular boundary,
//! simplicial input and the passage to Morse data.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::{AnyComplex, ChainComplex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::morse::{CriticalPoint, FlowLine, LocalSystem, MorseDatum};
use crate::rings::{serde_rational, ExpSum, NovElem, Rational, Ring};

/// Incidence `[cell : face] = ±1` with the holonomy of the unique path class
/// from the cell's basepoint to the face's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Incidence {
    pub cell: String,
    pub face: String,
    pub incidence: i8,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_periods")]
    pub periods: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_tag: Option<i64>,
}

mod opt_periods {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "serde_rational::vec")] Vec<Rational>);

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref().map(|v| Wrap(v.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularCW {
    pub name: String,
    pub dimension: usize,
    #[serde(default)]
    pub basis_forms: Vec<String>,
    /// `cells[k]`: labels of the k-cells.
    pub cells: Vec<Vec<String>>,
    pub incidences: Vec<Incidence>,
}

/// First failure found by [`validate_regular`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityViolation {
    pub cell: String,
    pub face: Option<String>,
    pub reason: String,
}

impl fmt::Display for RegularityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.face {
            Some(face) => write!(f, "{} / {}: {}", self.cell, face, self.reason),
            None => write!(f, "{}: {}", self.cell, self.reason),
        }
    }
}

impl RegularCW {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }

    /// Degree of a cell label.
    pub fn degree(&self, label: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.iter().any(|x| x == label))
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }
}

fn violation(cell: &str, face: Option<&str>, reason: impl Into<String>) -> RegularityViolation {
    RegularityViolation { cell: cell.into(), face: face.map(String::from), reason: reason.into() }
}

/// Checks labels and degrees, incidences in {±1} with one record per pair,
/// two endpoints of opposite sign on every 1-cell, a nonempty boundary on
/// every higher cell, exactly two intermediate cells between cells two
/// degrees apart, and `∂² = 0`.
pub fn validate_regular(cw: &RegularCW) -> std::result::Result<(), RegularityViolation> {
    if cw.cells.len() != cw.dimension + 1 {
        return Err(violation(
            &cw.name,
            None,
            format!("{} cell degrees listed for dimension {}", cw.cells.len(), cw.dimension),
        ));
    }
    let mut degree: HashMap<&str, usize> = HashMap::new();
    for (k, cs) in cw.cells.iter().enumerate() {
        for c in cs {
            if degree.insert(c, k).is_some() {
                return Err(violation(c, None, "duplicate cell label"));
            }
        }
    }
    let n = cw.basis_forms.len();
    let mut faces: HashMap<&str, BTreeMap<&str, i8>> = HashMap::new();
    for inc in &cw.incidences {
        let (c, f) = (inc.cell.as_str(), inc.face.as_str());
        let (Some(&a), Some(&b)) = (degree.get(c), degree.get(f)) else {
            return Err(violation(c, Some(f), "unknown cell"));
        };
        if a != b + 1 {
            return Err(violation(c, Some(f), format!("degrees {a} and {b} do not differ by one")));
        }
        if inc.incidence != 1 && inc.incidence != -1 {
            return Err(violation(c, Some(f), format!("incidence {} is not ±1", inc.incidence)));
        }
        if let Some(p) = &inc.periods {
            if p.len() != n {
                return Err(violation(c, Some(f), format!("{} periods for {n} basis forms", p.len())));
            }
        }
        if let Some(u) = inc.unit_tag {
            if u != 1 && u != -1 {
                return Err(violation(c, Some(f), format!("unit tag {u} is not ±1")));
            }
        }
        if faces.entry(c).or_default().insert(f, inc.incidence).is_some() {
            return Err(violation(c, Some(f), "more than one incidence record"));
        }
    }
    let empty = BTreeMap::new();
    let bd = |c: &str| faces.get(c).unwrap_or(&empty);
    for c in cw.cells.get(1).into_iter().flatten() {
        let b = bd(c);
        if b.len() != 2 || b.values().map(|&s| s as i32).sum::<i32>() != 0 {
            return Err(violation(c, None, "a 1-cell needs two distinct endpoints of opposite incidence"));
        }
    }
    for cs in cw.cells.iter().skip(2) {
        for c in cs {
            let b = bd(c);
            if b.is_empty() {
                return Err(violation(c, None, "cell has empty boundary"));
            }
            let mut between: BTreeMap<&str, (usize, i32)> = BTreeMap::new();
            for (&f, &s) in b {
                for (&g, &t) in bd(f) {
                    let e = between.entry(g).or_insert((0, 0));
                    e.0 += 1;
                    e.1 += (s * t) as i32;
                }
            }
            for (g, (count, sum)) in between {
                if count != 2 {
                    return Err(violation(c, Some(g), format!("{count} intermediate cells, expected 2")));
                }
                if sum != 0 {
                    return Err(violation(c, Some(g), "boundary squared is nonzero"));
                }
            }
        }
    }
    Ok(())
}

fn require_regular(cw: &RegularCW) -> Result<()> {
    validate_regular(cw).map_err(|v| Error::NotRegular(v.to_string()))
}

fn dot(class: &[Rational], p: &[Rational]) -> Rational {
    class.iter().zip(p).map(|(a, b)| a * b).sum()
}

fn assemble<R: Ring>(cw: &RegularCW, weight: impl Fn(&Incidence) -> Result<R>) -> Result<ChainComplex<R>> {
    let m = cw.dimension;
    let pos = |k: usize, c: &str| cw.cells[k].iter().position(|x| x == c).expect("validated");
    let mut bds: Vec<Matrix<R>> = (1..=m).map(|k| Matrix::zeros(cw.cells[k - 1].len(), cw.cells[k].len())).collect();
    for inc in &cw.incidences {
        let k = cw.degree(&inc.cell).expect("validated");
        let w = weight(inc)?;
        let w = if inc.incidence < 0 { -w } else { w };
        bds[k - 1][(pos(k - 1, &inc.face), pos(k, &inc.cell))] = w;
    }
    ChainComplex::new(cw.cells.clone(), bds)
}

/// Twisted cellular boundary: entry (face, cell) is the incidence times the
/// system's transport along the incidence.
pub fn steenrod_boundary(cw: &RegularCW, sys: &LocalSystem) -> Result<AnyComplex> {
    require_regular(cw)?;
    if let Some(c) = sys.class() {
        if c.len() != cw.basis_forms.len() {
            return Err(Error::ClassLength { expected: cw.basis_forms.len(), got: c.len() });
        }
    }
    let label = |i: &Incidence| format!("({} -> {})", i.cell, i.face);
    let periods = |i: &Incidence| i.periods.clone().ok_or_else(|| Error::MissingHolonomy(label(i)));
    Ok(match sys {
        LocalSystem::Trivial => AnyComplex::Int(assemble(cw, |_| Ok(BigInt::from(1)))?),
        LocalSystem::UnitRep => AnyComplex::Int(assemble(cw, |i| {
            i.unit_tag.map(BigInt::from).ok_or_else(|| Error::MissingHolonomy(label(i)))
        })?),
        LocalSystem::Exp(c) => AnyComplex::Exp(assemble(cw, |i| {
            Ok(ExpSum::t_pow(dot(c, &periods(i)?)))
        })?),
        LocalSystem::Nov(c) => AnyComplex::Nov(assemble(cw, |i| {
            Ok(NovElem::t_pow(-dot(c, &periods(i)?)))
        })?),
    })
}

/// One critical point per cell and one flow line per incidence, with sign
/// the incidence. Missing periods become zero.
pub fn cw_to_morse(cw: &RegularCW) -> Result<MorseDatum> {
    require_regular(cw)?;
    let points = cw
        .cells
        .iter()
        .enumerate()
        .flat_map(|(k, cs)| cs.iter().map(move |c| CriticalPoint { id: c.clone(), index: k }))
        .collect();
    let zeros = vec![Rational::zero(); cw.basis_forms.len()];
    let flows = cw
        .incidences
        .iter()
        .map(|i| FlowLine {
            from: i.cell.clone(),
            to: i.face.clone(),
            sign: i.incidence,
            periods: i.periods.clone().unwrap_or_else(|| zeros.clone()),
            unit_tag: i.unit_tag,
            deck_tag: None,
        })
        .collect();
    let d = MorseDatum {
        name: cw.name.clone(),
        dimension: cw.dimension,
        basis_forms: cw.basis_forms.clone(),
        points,
        flows,
        deck_group: None,
    };
    d.check()?;
    Ok(d)
}

/// Maximal simplices on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetList {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl FacetList {
    /// `vertices N` then one facet per line; blank lines and `#` comments
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: String| Error::MalformedFacets(m);
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (_, head) = lines.next().ok_or_else(|| bad("empty input".into()))?;
        let vertices = head
            .strip_prefix("vertices")
            .and_then(|n| n.trim().parse::<usize>().ok())
            .ok_or_else(|| bad(format!("expected `vertices N`, got `{head}`")))?;
        let mut facets = Vec::new();
        for (no, l) in lines {
            let f = l
                .split_whitespace()
                .map(|x| x.parse::<usize>().map_err(|_| bad(format!("line {}: `{x}` is not an index", no + 1))))
                .collect::<Result<Vec<_>>>()?;
            facets.push(f);
        }
        let out = FacetList { vertices, facets };
        out.check()?;
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.vertices);
        for f in &self.facets {
            let f: Vec<String> = f.iter().map(usize::to_string).collect();
            s.push_str(&f.join(" "));
            s.push('\n');
        }
        s
    }

    /// Nonempty, equal-size facets of distinct in-range vertices, no
    /// facet repeated.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedFacets(m));
        let Some(first) = self.facets.first() else {
            return bad("no facets".into());
        };
        let mut seen = BTreeSet::new();
        for f in &self.facets {
            if f.is_empty() {
                return bad("empty facet".into());
            }
            if f.len() != first.len() {
                return bad(format!("facets of sizes {} and {}: the complex is not pure", first.len(), f.len()));
            }
            if let Some(v) = f.iter().find(|&&v| v >= self.vertices) {
                return bad(format!("vertex {v} out of range 0..{}", self.vertices));
            }
            let s: BTreeSet<usize> = f.iter().copied().collect();
            if s.len() != f.len() {
                return bad(format!("facet {f:?} repeats a vertex"));
            }
            if !seen.insert(s) {
                return bad(format!("facet {f:?} appears twice"));
            }
        }
        Ok(())
    }
}

fn simplex_label(s: &[usize]) -> String {
    s.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
}

/// Every face of every facet as a cell, oriented by sorted vertex order:
/// removing the i-th vertex gives incidence `(-1)^i`. Cells are labelled by
/// their vertices joined with dots, e.g. `0.2.5`.
pub fn from_simplicial(f: &FacetList) -> Result<RegularCW> {
    f.check()?;
    let m = f.facets[0].len() - 1;
    let mut simplices: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); m + 1];
    for facet in &f.facets {
        let mut v = facet.clone();
        v.sort_unstable();
        for mask in 1u64..(1 << v.len()) {
            let s: Vec<usize> = (0..v.len()).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).collect();
            simplices[s.len() - 1].insert(s);
        }
    }
    let mut incidences = Vec::new();
    for k in 1..=m {
        for s in &simplices[k] {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                incidences.push(Incidence {
                    cell: simplex_label(s),
                    face: simplex_label(&face),
                    incidence: if i % 2 == 0 { 1 } else { -1 },
                    periods: None,
                    unit_tag: None,
                });
            }
        }
    }
    Ok(RegularCW {
        name: "triangulation".into(),
        dimension: m,
        basis_forms: vec![],
        cells: simplices.iter().map(|ss| ss.iter().map(|s| simplex_label(s)).collect()).collect(),
        incidences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::HomologyOptions;

    fn deformed_circle() -> RegularCW {
        let inc = |c: &str, f: &str, s: i8| Incidence {
            cell: c.into(),
            face: f.into(),
            incidence: s,
            periods: None,
            unit_tag: Some(1),
        };
        RegularCW {
            name: "circle".into(),
            dimension: 1,
            basis_forms: vec![],
            cells: vec![vec!["p1".into(), "p2".into()], vec!["q1".into(), "q2".into()]],
            incidences: vec![inc("q1", "p2", 1), inc("q1", "p1", -1), inc("q2", "p2", 1), inc("q2", "p1", -1)],
        }
    }

    #[test]
    fn regularity() {
        assert_eq!(validate_regular(&deformed_circle()), Ok(()));
        let mut one_vertex = RegularCW {
            name: "s1".into(),
            dimension: 1,
            basis_forms: vec![],
            cells: vec![vec!["p".into()], vec!["q".into()]],
            incidences: vec![],
        };
        assert!(validate_regular(&one_vertex).is_err());
        for s in [1, -1] {
            one_vertex.incidences.push(Incidence {
                cell: "q".into(),
                face: "p".into(),
                incidence: s,
                periods: None,
                unit_tag: None,
            });
        }
        let v = validate_regular(&one_vertex).unwrap_err();
        assert_eq!(v.face.as_deref(), Some("p"));
        let mut zero = deformed_circle();
        zero.incidences[0].incidence = 0;
        assert!(validate_regular(&zero).is_err());
    }

    #[test]
    fn circle_boundary() {
        let c = steenrod_boundary(&deformed_circle(), &LocalSystem::Trivial).unwrap();
        let AnyComplex::Int(c) = c else { panic!() };
        assert_eq!(c.boundary(1), &Matrix::from_i64(&[&[-1, -1], &[1, 1]]));
        let mut missing = deformed_circle();
        missing.incidences[2].unit_tag = None;
        assert!(matches!(steenrod_boundary(&missing, &LocalSystem::UnitRep), Err(Error::MissingHolonomy(_))));
        assert!(matches!(
            steenrod_boundary(&deformed_circle(), &LocalSystem::Exp(vec![])),
            Err(Error::MissingHolonomy(_))
        ));
    }

    #[test]
    fn simplicial_spheres() {
        let circle = FacetList::parse("vertices 3\n0 1\n1 2\n0 2\n").unwrap();
        let cw = from_simplicial(&circle).unwrap();
        assert_eq!(cw.counts(), vec![3, 3]);
        assert_eq!(validate_regular(&cw), Ok(()));
        let h = steenrod_boundary(&cw, &LocalSystem::Trivial).unwrap().homology(&HomologyOptions::default()).unwrap();
        assert_eq!(h.betti, vec![1, 1]);

        let s2 = FacetList { vertices: 4, facets: vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]] };
        let cw = from_simplicial(&s2).unwrap();
        let d = cw_to_morse(&cw).unwrap();
        assert_eq!(d.points.len(), 14);
        let h = crate::morse::build_complex(&d, &LocalSystem::Trivial)
            .unwrap()
            .homology(&HomologyOptions::default())
            .unwrap();
        assert_eq!(h.betti, vec![1, 0, 1]);
        assert_eq!(FacetList::parse(&s2.to_text()).unwrap(), s2);
    }

    #[test]
    fn facet_errors() {
        for bad in ["", "verts 3\n0 1", "vertices 2\n0 2", "vertices 3\n0 1\n1 0", "vertices 3\n0 0", "vertices 3\n0 1\n0 1 2", "vertices 3\n0 x"] {
            assert!(matches!(FacetList::parse(bad), Err(Error::MalformedFacets(_))), "{bad:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let mut cw = deformed_circle();
        cw.basis_forms = vec!["a".into()];
        for (i, inc) in cw.incidences.iter_mut().enumerate() {
            inc.periods = Some(vec![Rational::new((i as i64).into(), 4.into())]);
        }
        assert_eq!(RegularCW::from_json(&cw.to_json()).unwrap(), cw);
        assert!(cw.to_json().contains("\"cells\""));
    }
}
