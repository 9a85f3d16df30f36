//! Morse data: critical points and signed flow lines carrying periods and
//! optional unit and deck tags, and the twisted complexes they define.

mod cover;
mod skeleton;
mod system;

pub use cover::lift_cover;
pub use skeleton::{
    h0_cohomology, h0_quotient, is_non_simple, loop_periods, non_simplicity_evidence, nontrivial_loops,
    render_transport, H0Group, OneSkeleton,
};
pub use system::{
    build_cochain, build_complex, flow_weight, transport, LocalSystem, Transport, Weight,
};

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::{serde_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalPoint {
    pub id: String,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowLine {
    pub from: String,
    pub to: String,
    pub sign: i8,
    /// Integral of each basis form along the line, in the flow direction.
    #[serde(with = "serde_rational::vec")]
    pub periods: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_tag: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deck_tag: Option<String>,
}

/// Finite group given by its multiplication table:
/// `table[i][j] = elements[i] · elements[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeckGroup {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseDatum {
    pub name: String,
    pub dimension: usize,
    pub basis_forms: Vec<String>,
    pub points: Vec<CriticalPoint>,
    pub flows: Vec<FlowLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deck_group: Option<DeckGroup>,
}

impl FlowLine {
    pub fn new(from: &str, to: &str, sign: i8, periods: Vec<Rational>) -> Self {
        FlowLine {
            from: from.into(),
            to: to.into(),
            sign,
            periods,
            unit_tag: None,
            deck_tag: None,
        }
    }

    pub fn with_unit(mut self, tag: i64) -> Self {
        self.unit_tag = Some(tag);
        self
    }

    pub fn with_deck(mut self, tag: &str) -> Self {
        self.deck_tag = Some(tag.into());
        self
    }
}

impl DeckGroup {
    pub fn trivial() -> Self {
        DeckGroup {
            elements: vec!["e".into()],
            table: vec![vec!["e".into()]],
        }
    }

    /// ℤ/2 = {e, s}.
    pub fn z2() -> Self {
        DeckGroup {
            elements: vec!["e".into(), "s".into()],
            table: vec![
                vec!["e".into(), "s".into()],
                vec!["s".into(), "e".into()],
            ],
        }
    }

    fn position(&self, g: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|x| x == g)
            .ok_or_else(|| Error::UnknownGroupElement(g.into()))
    }

    pub fn mul(&self, a: &str, b: &str) -> Result<String> {
        Ok(self.table[self.position(a)?][self.position(b)?].clone())
    }

    /// Checks closure, associativity, a two-sided identity and inverses.
    pub fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        let bad = |m: &str| Err(Error::InvalidGroup(m.into()));
        if n == 0 {
            return bad("no elements");
        }
        if self.elements.iter().collect::<HashSet<_>>().len() != n {
            return bad("repeated element");
        }
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return bad("table is not square in the element count");
        }
        let mut t = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                t[i][j] = self.position(&self.table[i][j]).or_else(|_| {
                    Err(Error::InvalidGroup(format!(
                        "table entry {} is not an element",
                        self.table[i][j]
                    )))
                })?;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return bad("multiplication is not associative");
                    }
                }
            }
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|a| t[e][a] == a && t[a][e] == a)) else {
            return bad("no identity element");
        };
        if (0..n).any(|a| !(0..n).any(|b| t[a][b] == e && t[b][a] == e)) {
            return bad("some element has no inverse");
        }
        Ok(())
    }
}

impl MorseDatum {
    pub fn from_json(text: &str) -> Result<Self> {
        let d: MorseDatum = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        d.check()?;
        Ok(d)
    }

    /// Canonical pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("datum serializes")
    }

    pub fn point(&self, id: &str) -> Option<&CriticalPoint> {
        self.points.iter().find(|p| p.id == id)
    }

    /// Ids of index-`k` points in input order.
    pub fn points_of_index(&self, k: usize) -> Vec<&str> {
        self.points
            .iter()
            .filter(|p| p.index == k)
            .map(|p| p.id.as_str())
            .collect()
    }

    /// Zero counts per index, `c_k`.
    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dimension).map(|k| self.points_of_index(k).len()).collect()
    }

    pub fn flow_label(&self, i: usize) -> String {
        let f = &self.flows[i];
        format!("#{i} ({} -> {})", f.from, f.to)
    }

    /// Structural checks: unique ids, index drop of one along every line,
    /// signs and unit tags in {±1}, period vectors of the declared length,
    /// deck tags inside a valid declared group.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDatum(m));
        let mut index: HashMap<&str, usize> = HashMap::new();
        for p in &self.points {
            if p.index > self.dimension {
                return bad(format!("point {} has index {} > dimension {}", p.id, p.index, self.dimension));
            }
            if index.insert(&p.id, p.index).is_some() {
                return bad(format!("duplicate point id {}", p.id));
            }
        }
        if let Some(g) = &self.deck_group {
            g.validate()?;
        }
        for (i, f) in self.flows.iter().enumerate() {
            let label = self.flow_label(i);
            let (Some(&a), Some(&b)) = (index.get(f.from.as_str()), index.get(f.to.as_str())) else {
                return bad(format!("flow {label} names an unknown point"));
            };
            if a != b + 1 {
                return bad(format!("flow {label} goes from index {a} to index {b}"));
            }
            if f.sign != 1 && f.sign != -1 {
                return bad(format!("flow {label} has sign {}", f.sign));
            }
            if f.periods.len() != self.basis_forms.len() {
                return bad(format!(
                    "flow {label} has {} periods for {} basis forms",
                    f.periods.len(),
                    self.basis_forms.len()
                ));
            }
            if let Some(u) = f.unit_tag {
                if u != 1 && u != -1 {
                    return Err(Error::NonUnit(format!("unit tag {u} on flow {label}")));
                }
            }
            if let Some(t) = &f.deck_tag {
                match &self.deck_group {
                    Some(g) => {
                        g.position(t)?;
                    }
                    None => return bad(format!("flow {label} has a deck tag but no group is declared")),
                }
            }
        }
        Ok(())
    }

    /// Flow lines grouped by (from, to), in first-appearance order.
    pub(crate) fn parallel_classes(&self) -> Vec<Vec<usize>> {
        let mut order: Vec<(&str, &str)> = Vec::new();
        let mut groups: BTreeMap<(&str, &str), Vec<usize>> = BTreeMap::new();
        for (i, f) in self.flows.iter().enumerate() {
            let key = (f.from.as_str(), f.to.as_str());
            groups.entry(key).or_insert_with(|| {
                order.push(key);
                Vec::new()
            });
            groups.get_mut(&key).expect("inserted").push(i);
        }
        order.into_iter().map(|k| groups.remove(&k).expect("present")).collect()
    }

    /// Gauge transformation of a unit-tagged datum: a line `q → p` gets
    /// `g(p) · tag · g(q)⁻¹`.
    pub fn gauge_transform(&self, g: &HashMap<String, i64>) -> Result<Self> {
        let mut out = self.clone();
        for p in &self.points {
            match g.get(&p.id) {
                Some(1) | Some(-1) => {}
                Some(u) => return Err(Error::NonUnit(format!("gauge value {u} at {}", p.id))),
                None => return Err(Error::NonUnit(format!("gauge has no value at {}", p.id))),
            }
        }
        for (i, f) in out.flows.iter_mut().enumerate() {
            let tag = f.unit_tag.ok_or_else(|| Error::MissingUnitTag(self.flow_label(i)))?;
            // ±1 is its own inverse
            f.unit_tag = Some(g[&f.to] * tag * g[&f.from]);
        }
        Ok(out)
    }

    /// Replaces every period vector `P(q → p)` by `P + h(q) - h(p)`: the
    /// periods of a cohomologous class.
    pub fn shift_potential(&self, h: &HashMap<String, Vec<Rational>>) -> Result<Self> {
        let n = self.basis_forms.len();
        let zero = vec![Rational::default(); n];
        let get = |id: &str| -> Result<&Vec<Rational>> {
            let v = h.get(id).unwrap_or(&zero);
            if v.len() != n {
                return Err(Error::ClassLength { expected: n, got: v.len() });
            }
            Ok(v)
        };
        let mut out = self.clone();
        for f in out.flows.iter_mut() {
            let (hq, hp) = (get(&f.from)?, get(&f.to)?);
            for (k, x) in f.periods.iter_mut().enumerate() {
                *x = &*x + &hq[k] - &hp[k];
            }
        }
        Ok(out)
    }
}
