//! Pinned flow data of the built-in examples.

use crate::cw::{FacetList, Incidence, RegularCW};
use crate::morse::{CriticalPoint, DeckGroup, FlowLine, MorseDatum};
use crate::rings::{rat, Rational};

fn pt(id: &str, index: usize) -> CriticalPoint {
    CriticalPoint { id: id.into(), index }
}

fn line(from: &str, to: &str, sign: i8, periods: &[(i64, i64)]) -> FlowLine {
    FlowLine::new(from, to, sign, periods.iter().map(|&(a, b)| rat(a, b)).collect())
}

fn datum(name: &str, dimension: usize, forms: &[&str], points: Vec<CriticalPoint>, flows: Vec<FlowLine>) -> MorseDatum {
    MorseDatum {
        name: name.into(),
        dimension,
        basis_forms: forms.iter().map(|s| s.to_string()).collect(),
        points,
        flows,
        deck_group: None,
    }
}

/// Height function on the round circle: maximum `q`, minimum `p`, one line
/// down each side. The sign representation flips across the left line.
pub fn circle_std() -> MorseDatum {
    datum(
        "circle-std",
        1,
        &["dtheta"],
        vec![pt("q", 1), pt("p", 0)],
        vec![
            line("q", "p", 1, &[(-1, 2)]).with_unit(1),
            line("q", "p", -1, &[(1, 2)]).with_unit(-1),
        ],
    )
}

/// Two vertices and two edges; the second edge carries the sign flip on its
/// `p1` end.
pub fn circle_regular() -> RegularCW {
    let inc = |c: &str, f: &str, s: i8, p: (i64, i64), u: i64| Incidence {
        cell: c.into(),
        face: f.into(),
        incidence: s,
        periods: Some(vec![rat(p.0, p.1)]),
        unit_tag: Some(u),
    };
    RegularCW {
        name: "circle-regular".into(),
        dimension: 1,
        basis_forms: vec!["dtheta".into()],
        cells: vec![vec!["p1".into(), "p2".into()], vec!["q1".into(), "q2".into()]],
        incidences: vec![
            inc("q1", "p2", 1, (1, 4), 1),
            inc("q1", "p1", -1, (-1, 4), 1),
            inc("q2", "p2", 1, (-1, 4), 1),
            inc("q2", "p1", -1, (1, 4), -1),
        ],
    }
}

/// Three points `p, q, r`; the closed form is exact, so every line has
/// period 1. Deck tags describe the two-sheeted sphere cover.
pub fn rp2() -> MorseDatum {
    let mut d = datum(
        "rp2",
        2,
        &["eta"],
        vec![pt("p", 0), pt("q", 1), pt("r", 2)],
        vec![
            line("r", "q", 1, &[(1, 1)]).with_unit(1).with_deck("e"),
            line("r", "q", 1, &[(1, 1)]).with_unit(-1).with_deck("s"),
            line("q", "p", 1, &[(1, 1)]).with_unit(1).with_deck("e"),
            line("q", "p", -1, &[(1, 1)]).with_unit(-1).with_deck("s"),
        ],
    );
    d.deck_group = Some(DeckGroup::z2());
    d
}

/// Cell chain `p0 → … → pn` with two lines per step; the signs agree when
/// the upper index is even and differ when it is odd. Unit tags give the
/// orientation (sign) system.
pub fn rpn(n: usize) -> MorseDatum {
    let id = |k: usize| format!("p{k}");
    let points = (0..=n).map(|k| pt(&id(k), k)).collect();
    let mut flows = Vec::new();
    for k in 1..=n {
        let second = if k % 2 == 0 { 1 } else { -1 };
        flows.push(line(&id(k), &id(k - 1), 1, &[]).with_unit(1));
        flows.push(line(&id(k), &id(k - 1), second, &[]).with_unit(-1));
    }
    datum(&format!("rpn({n})"), n, &[], points, flows)
}

/// Minimum `p`, saddles `q` (first factor loop) and `r` (second), maximum `s`.
pub fn torus() -> MorseDatum {
    datum(
        "torus",
        2,
        &["dx", "dy"],
        vec![pt("p", 0), pt("q", 1), pt("r", 1), pt("s", 2)],
        vec![
            line("q", "p", 1, &[(-1, 2), (0, 1)]),
            line("q", "p", -1, &[(1, 2), (0, 1)]),
            line("r", "p", 1, &[(0, 1), (-1, 2)]),
            line("r", "p", -1, &[(0, 1), (1, 2)]),
            line("s", "r", 1, &[(-1, 2), (0, 1)]),
            line("s", "r", -1, &[(1, 2), (0, 1)]),
            line("s", "q", 1, &[(0, 1), (1, 2)]),
            line("s", "q", -1, &[(0, 1), (-1, 2)]),
        ],
    )
}

/// Klein bottle; `r` runs along the loop the form measures, `q` along the
/// orientation-reversing one.
pub fn klein() -> MorseDatum {
    datum(
        "klein",
        2,
        &["eta"],
        vec![pt("p", 0), pt("q", 1), pt("r", 1), pt("s", 2)],
        vec![
            line("r", "p", 1, &[(-1, 2)]),
            line("r", "p", -1, &[(1, 2)]),
            line("q", "p", 1, &[(0, 1)]),
            line("q", "p", -1, &[(0, 1)]),
            line("s", "r", 1, &[(0, 1)]),
            line("s", "r", -1, &[(0, 1)]),
            line("s", "q", -1, &[(-1, 2)]),
            line("s", "q", -1, &[(1, 2)]),
        ],
    )
}

/// Genus-2 surface with the perfect Morse function: minimum `p0`, saddles
/// `p1_1 … p1_4`, maximum `p2`. Form `eta_i` measures the loop of `p1_i`.
pub fn genus2() -> MorseDatum {
    genus2_oriented(1)
}

/// Same with every loop period multiplied by `o`; `o = -1` runs each loop the
/// other way round.
pub fn genus2_oriented(o: i64) -> MorseDatum {
    let e = |i: usize| -> Vec<Rational> { (1..=4).map(|j| rat(if i == j { o } else { 0 }, 1)).collect() };
    let zero = || vec![rat(0, 1); 4];
    // the maximum's descending disc meets saddle i on the side of saddle sigma(i)
    let sigma = [2, 1, 4, 3];
    let mut points = vec![pt("p0", 0)];
    let mut flows = Vec::new();
    for i in 1..=4 {
        let s = format!("p1_{i}");
        points.push(pt(&s, 1));
        flows.push(FlowLine::new(&s, "p0", 1, zero()));
        flows.push(FlowLine::new(&s, "p0", -1, e(i)));
    }
    points.push(pt("p2", 2));
    for i in 1..=4 {
        let s = format!("p1_{i}");
        let loop_ = e(sigma[i - 1]);
        let (plus, minus) = if i % 2 == 1 { (zero(), loop_) } else { (loop_, zero()) };
        flows.push(FlowLine::new("p2", &s, 1, plus));
        flows.push(FlowLine::new("p2", &s, -1, minus));
    }
    datum("genus2", 2, &["eta1", "eta2", "eta3", "eta4"], points, flows)
}

/// Six-vertex minimal triangulation of the projective plane.
pub fn rp2_triangulated() -> FacetList {
    FacetList {
        vertices: 6,
        facets: [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ]
        .iter()
        .map(|f| f.to_vec())
        .collect(),
    }
}

/// Boundary of the tetrahedron.
pub fn s2_triangulated() -> FacetList {
    FacetList {
        vertices: 4,
        facets: vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    }
}
