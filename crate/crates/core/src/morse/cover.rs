use super::{CriticalPoint, FlowLine, MorseDatum};
use crate::error::{Error, Result};

/// Untwisted datum of the finite cover determined by the deck tags: a point
/// `(x, γ)` for every point and group element, and for each line `q → p`
/// tagged `g` a line `(q, γ) → (p, γ·g)` with the same sign.
///
/// Lifted points are labelled `x@γ`.
pub fn lift_cover(d: &MorseDatum) -> Result<MorseDatum> {
    d.check()?;
    let g = d
        .deck_group
        .as_ref()
        .ok_or_else(|| Error::InvalidGroup("datum declares no deck group".into()))?;
    let label = |x: &str, e: &str| format!("{x}@{e}");
    let mut points = Vec::new();
    for p in &d.points {
        for e in &g.elements {
            points.push(CriticalPoint { id: label(&p.id, e), index: p.index });
        }
    }
    let mut flows = Vec::new();
    for (i, f) in d.flows.iter().enumerate() {
        let tag = f
            .deck_tag
            .as_deref()
            .ok_or_else(|| Error::MissingDeckTag(d.flow_label(i)))?;
        for e in &g.elements {
            let target = g.mul(e, tag)?;
            flows.push(FlowLine::new(&label(&f.from, e), &label(&f.to, &target), f.sign, vec![]));
        }
    }
    Ok(MorseDatum {
        name: format!("{}-lift", d.name),
        dimension: d.dimension,
        basis_forms: vec![],
        points,
        flows,
        deck_group: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::DeckGroup;

    #[test]
    fn trivial_group_copies() {
        let d = MorseDatum {
            name: "arc".into(),
            dimension: 1,
            basis_forms: vec![],
            points: vec![
                CriticalPoint { id: "q".into(), index: 1 },
                CriticalPoint { id: "p".into(), index: 0 },
            ],
            flows: vec![FlowLine::new("q", "p", -1, vec![]).with_deck("e")],
            deck_group: Some(DeckGroup::trivial()),
        };
        let l = lift_cover(&d).unwrap();
        assert_eq!(l.points.len(), 2);
        assert_eq!(l.flows, vec![FlowLine::new("q@e", "p@e", -1, vec![])]);

        let mut untagged = d.clone();
        untagged.flows[0].deck_tag = None;
        assert!(matches!(lift_cover(&untagged), Err(Error::MissingDeckTag(_))));
        let mut unknown = d.clone();
        unknown.flows[0].deck_tag = Some("x".into());
        assert!(matches!(lift_cover(&unknown), Err(Error::UnknownGroupElement(_))));
    }
}
