//! Loops visible in a Morse datum: parallel flow lines, and cycles of the
//! graph whose vertices are index-0 points and whose edges are index-1
//! points with their two descending lines.
//!
//! This sees only loops expressible through the datum. It is sound (every
//! reported nontrivial holonomy is real) but can miss loops of the underlying
//! space that no 1-skeleton cycle represents.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::system::{transport, LocalSystem, Transport};
use super::MorseDatum;
use crate::error::{Error, Result};
use crate::rings::{format_rational, Rational};

/// Edge from the index-1 point `via`: lines `via → to` (first) and
/// `via → from` (second).
#[derive(Clone, Debug)]
struct Edge {
    via: String,
    from: usize,
    to: usize,
    first: usize,
    second: usize,
}

/// The 1-skeleton graph with a spanning tree and its fundamental cycles.
#[derive(Clone, Debug)]
pub struct OneSkeleton {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    /// Each cycle as edge multiplicities.
    cycles: Vec<BTreeMap<usize, i32>>,
}

impl OneSkeleton {
    /// Fails with `UnsupportedSkeleton` when an index-1 point has one line or
    /// more than two, and `Disconnected` when the graph is not connected.
    pub fn new(d: &MorseDatum) -> Result<Self> {
        let vertices: Vec<String> = d.points_of_index(0).into_iter().map(String::from).collect();
        if vertices.is_empty() {
            return Err(Error::Disconnected("datum has no index-0 point".into()));
        }
        let vid = |id: &str| vertices.iter().position(|v| v == id).expect("index-0 target");
        let mut edges = Vec::new();
        for q in d.points_of_index(1) {
            let lines: Vec<usize> = (0..d.flows.len()).filter(|&i| d.flows[i].from == q).collect();
            match lines.as_slice() {
                [] => {}
                &[a, b] => edges.push(Edge {
                    via: q.into(),
                    from: vid(&d.flows[b].to),
                    to: vid(&d.flows[a].to),
                    first: a,
                    second: b,
                }),
                other => {
                    return Err(Error::UnsupportedSkeleton(format!(
                        "index-1 point {q} has {} descending lines; loop detection needs 0 or 2",
                        other.len()
                    )))
                }
            }
        }

        // path[v]: multiplicities of edges from the root to v
        let n = vertices.len();
        let mut path: Vec<Option<BTreeMap<usize, i32>>> = vec![None; n];
        path[0] = Some(BTreeMap::new());
        let mut tree = vec![false; edges.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for (k, e) in edges.iter().enumerate() {
                // relation: from = g_e · to
                let (next, dir) = if e.to == v && path[e.from].is_none() {
                    (e.from, 1)
                } else if e.from == v && path[e.to].is_none() {
                    (e.to, -1)
                } else {
                    continue;
                };
                let mut p = path[v].clone().expect("visited");
                *p.entry(k).or_insert(0) += dir;
                path[next] = Some(p);
                tree[k] = true;
                queue.push_back(next);
            }
        }
        if let Some(v) = path.iter().position(Option::is_none) {
            return Err(Error::Disconnected(format!(
                "index-0 point {} is not joined to {} through index-1 points",
                vertices[v], vertices[0]
            )));
        }
        let path: Vec<BTreeMap<usize, i32>> = path.into_iter().map(|p| p.expect("all visited")).collect();
        let mut cycles = Vec::new();
        for (k, e) in edges.iter().enumerate() {
            if tree[k] {
                continue;
            }
            // g_e · pos(to) · pos(from)⁻¹
            let mut c: BTreeMap<usize, i32> = BTreeMap::new();
            *c.entry(k).or_insert(0) += 1;
            for (&j, &m) in &path[e.to] {
                *c.entry(j).or_insert(0) += m;
            }
            for (&j, &m) in &path[e.from] {
                *c.entry(j).or_insert(0) -= m;
            }
            c.retain(|_, m| *m != 0);
            cycles.push(c);
        }
        Ok(OneSkeleton { vertices, edges, cycles })
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Relation unit `g` with `from = g · to` in H₀: `-ε₁ε₂ · w₁ · w₂⁻¹`.
    /// With `signed = false` only the holonomy `w₁ · w₂⁻¹` is returned.
    fn edge_unit(&self, d: &MorseDatum, sys: &LocalSystem, k: usize, signed: bool) -> Result<Transport> {
        let e = &self.edges[k];
        let (f1, f2) = (&d.flows[e.first], &d.flows[e.second]);
        let mut g = transport(f1, sys)?.mul(&transport(f2, sys)?.inv());
        if signed {
            g.sign *= -f1.sign * f2.sign;
        }
        Ok(g)
    }

    fn cycle_units(&self, d: &MorseDatum, sys: &LocalSystem, signed: bool) -> Result<Vec<Transport>> {
        self.cycles
            .iter()
            .map(|c| {
                let mut u = Transport::one();
                for (&k, &m) in c {
                    let g = self.edge_unit(d, sys, k, signed)?;
                    let g = if m < 0 { g.inv() } else { g };
                    for _ in 0..m.unsigned_abs() {
                        u = u.mul(&g);
                    }
                }
                Ok(u)
            })
            .collect()
    }

    fn cycle_periods(&self, d: &MorseDatum) -> Vec<Vec<Rational>> {
        let n = d.basis_forms.len();
        self.cycles
            .iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); n];
                for (&k, &m) in c {
                    let e = &self.edges[k];
                    let m = Rational::from_integer(BigInt::from(m));
                    for (i, x) in v.iter_mut().enumerate() {
                        *x += &m * (&d.flows[e.first].periods[i] - &d.flows[e.second].periods[i]);
                    }
                }
                v
            })
            .collect()
    }

    fn describe_cycle(&self, i: usize) -> String {
        let vias: Vec<&str> = self.cycles[i].keys().map(|&k| self.edges[k].via.as_str()).collect();
        let ends: Vec<&str> = self.cycles[i]
            .keys()
            .flat_map(|&k| [self.edges[k].from, self.edges[k].to])
            .map(|v| self.vertices[v].as_str())
            .collect();
        format!("loop through {} (index-0 points {})", vias.join(", "), dedup(ends).join(", "))
    }
}

fn dedup(mut v: Vec<&str>) -> Vec<&str> {
    let mut seen = Vec::new();
    v.retain(|x| {
        if seen.contains(x) {
            false
        } else {
            seen.push(*x);
            true
        }
    });
    v
}

pub fn render_transport(t: &Transport) -> String {
    let s = if t.sign < 0 { "-" } else { "" };
    if t.exponent.is_zero() {
        format!("{s}1")
    } else {
        format!("{s}t^({})", format_rational(&t.exponent))
    }
}

/// H₀ or H⁰ of a rank-one system, as a cyclic module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum H0Group {
    Zero,
    Int,
    IntMod(BigInt),
    Real,
    Nov,
    NovMod(BigInt),
}

/// Same notation as the homology summaries: `Z`, `Z/2`, `R`, `Nov`, `Nov/2`, `0`.
impl fmt::Display for H0Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H0Group::Zero => write!(f, "0"),
            H0Group::Int => write!(f, "Z"),
            H0Group::IntMod(n) => write!(f, "Z/{n}"),
            H0Group::Real => write!(f, "R"),
            H0Group::Nov => write!(f, "Nov"),
            H0Group::NovMod(n) => write!(f, "Nov/{n}"),
        }
    }
}

fn fiber(sys: &LocalSystem) -> H0Group {
    match sys {
        LocalSystem::Trivial | LocalSystem::UnitRep => H0Group::Int,
        LocalSystem::Exp(_) => H0Group::Real,
        LocalSystem::Nov(_) => H0Group::Nov,
    }
}

/// `G/H` where `H` is generated by `(1 - u)·G` over the detected loop units.
pub fn h0_quotient(d: &MorseDatum, sys: &LocalSystem) -> Result<H0Group> {
    sys.check(d)?;
    let units = OneSkeleton::new(d)?.cycle_units(d, sys, true)?;
    let minus_one = units.iter().any(|u| u.sign < 0 && u.exponent.is_zero());
    let moving = units.iter().any(|u| !u.exponent.is_zero());
    Ok(match sys {
        LocalSystem::Trivial | LocalSystem::UnitRep if minus_one => H0Group::IntMod(2.into()),
        LocalSystem::Trivial | LocalSystem::UnitRep => H0Group::Int,
        LocalSystem::Exp(_) if units.iter().any(|u| !u.is_one()) => H0Group::Zero,
        LocalSystem::Exp(_) => H0Group::Real,
        // 1 ∓ t^a with a ≠ 0 has top coefficient ±1, hence is a unit
        LocalSystem::Nov(_) if moving => H0Group::Zero,
        LocalSystem::Nov(_) if minus_one => H0Group::NovMod(2.into()),
        LocalSystem::Nov(_) => H0Group::Nov,
    })
}

/// The subgroup of the fiber fixed by every detected loop unit.
pub fn h0_cohomology(d: &MorseDatum, sys: &LocalSystem) -> Result<H0Group> {
    sys.check(d)?;
    let units = OneSkeleton::new(d)?.cycle_units(d, sys, true)?;
    // every fiber is torsion-free, so (u - 1)g = 0 forces g = 0 once u ≠ 1
    Ok(if units.iter().all(Transport::is_one) { fiber(sys) } else { H0Group::Zero })
}

/// Every detected loop with nontrivial holonomy: parallel lines with
/// different transports (the loop runs out along the first and back along
/// the second), then 1-skeleton cycles.
pub fn nontrivial_loops(d: &MorseDatum, sys: &LocalSystem) -> Result<Vec<(String, Transport)>> {
    sys.check(d)?;
    let mut out = Vec::new();
    for class in d.parallel_classes() {
        let w0 = transport(&d.flows[class[0]], sys)?;
        for &i in &class[1..] {
            let wi = transport(&d.flows[i], sys)?;
            if wi != w0 {
                let text = format!(
                    "parallel lines {} and {} carry transports {} and {}",
                    d.flow_label(class[0]),
                    d.flow_label(i),
                    render_transport(&w0),
                    render_transport(&wi)
                );
                out.push((text, w0.mul(&wi.inv())));
            }
        }
    }
    if let Ok(sk) = OneSkeleton::new(d) {
        for (i, u) in sk.cycle_units(d, sys, false)?.into_iter().enumerate() {
            if !u.is_one() {
                out.push((format!("{} has holonomy {}", sk.describe_cycle(i), render_transport(&u)), u));
            }
        }
    }
    Ok(out)
}

/// First piece of evidence that the system is not simple.
pub fn non_simplicity_evidence(d: &MorseDatum, sys: &LocalSystem) -> Result<Option<String>> {
    Ok(nontrivial_loops(d, sys)?.into_iter().next().map(|(s, _)| s))
}

pub fn is_non_simple(d: &MorseDatum, sys: &LocalSystem) -> Result<bool> {
    Ok(non_simplicity_evidence(d, sys)?.is_some())
}

/// Period vectors of every detected loop: differences along parallel lines,
/// and 1-skeleton cycles when the skeleton is supported.
pub fn loop_periods(d: &MorseDatum) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for class in d.parallel_classes() {
        let p0 = &d.flows[class[0]].periods;
        for &i in &class[1..] {
            out.push(p0.iter().zip(&d.flows[i].periods).map(|(a, b)| a - b).collect());
        }
    }
    if let Ok(sk) = OneSkeleton::new(d) {
        out.extend(sk.cycle_periods(d));
    }
    out
}
