mod common;

use morsetwist_core::catalog::{circle_regular, rp2_triangulated, s2_triangulated};
use morsetwist_core::complex::HomologyOptions;
use morsetwist_core::cw::{cw_to_morse, from_simplicial, steenrod_boundary, validate_regular, FacetList, RegularCW};
use morsetwist_core::morse::{build_complex, LocalSystem};
use morsetwist_core::rings::int_rat;
use morsetwist_core::Error;

fn alternating_face_count(f: &FacetList) -> i64 {
    let cw = from_simplicial(f).unwrap();
    cw.counts().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
}

#[test]
fn cellular_and_morse_complexes_agree() {
    let o = HomologyOptions::default();
    let cw = circle_regular();
    let d = cw_to_morse(&cw).unwrap();
    for s in [
        LocalSystem::Trivial,
        LocalSystem::UnitRep,
        LocalSystem::Exp(vec![int_rat(2)]),
        LocalSystem::Nov(vec![int_rat(-1)]),
    ] {
        let a = steenrod_boundary(&cw, &s).unwrap();
        let b = build_complex(&d, &s).unwrap();
        assert_eq!(a, b, "{s}");
        assert_eq!(a.homology(&o).unwrap(), b.homology(&o).unwrap());
    }
}

#[test]
fn euler_number_is_the_alternating_simplex_count() {
    let o = HomologyOptions::default();
    for (f, chi) in [(rp2_triangulated(), 1), (s2_triangulated(), 2)] {
        assert_eq!(alternating_face_count(&f), chi);
        let c = steenrod_boundary(&from_simplicial(&f).unwrap(), &LocalSystem::Trivial).unwrap();
        assert_eq!(c.euler_cells(), chi);
        assert_eq!(c.homology(&o).unwrap().euler().unwrap(), chi);
    }
    // the full 3-simplex is contractible
    let ball = FacetList::parse("vertices 4\n0 1 2 3\n").unwrap();
    let h = steenrod_boundary(&from_simplicial(&ball).unwrap(), &LocalSystem::Trivial)
        .unwrap()
        .homology(&o)
        .unwrap();
    assert_eq!(h.betti, vec![1, 0, 0, 0]);
    assert_eq!(alternating_face_count(&ball), 1);
}

#[test]
fn regularity_failures() {
    let mut cw = circle_regular();
    cw.incidences.pop();
    assert!(validate_regular(&cw).is_err());
    assert!(matches!(steenrod_boundary(&cw, &LocalSystem::Trivial), Err(Error::NotRegular(_))));

    let mut cw = circle_regular();
    cw.incidences[1].incidence = 1;
    let v = validate_regular(&cw).unwrap_err();
    assert_eq!(v.cell, "q1");

    let mut cw = circle_regular();
    cw.incidences[0].unit_tag = None;
    assert!(validate_regular(&cw).is_ok());
    assert!(matches!(steenrod_boundary(&cw, &LocalSystem::UnitRep), Err(Error::MissingHolonomy(_))));
    assert!(steenrod_boundary(&cw, &LocalSystem::Trivial).is_ok());
}

#[test]
fn json_round_trip() {
    let cw = from_simplicial(&rp2_triangulated()).unwrap();
    let back = RegularCW::from_json(&cw.to_json()).unwrap();
    assert_eq!(back, cw);
    assert_eq!(cw.counts(), vec![6, 15, 10]);
    assert_eq!(cw.degree("0.1"), Some(1));
}

#[test]
fn facet_lists() {
    let f = FacetList::parse("# two triangles\nvertices 4\n\n0 1 2\n1 2 3 # shared edge\n").unwrap();
    assert_eq!(FacetList::parse(&f.to_text()).unwrap(), f);
    for bad in ["vertices 3\n0 1 3\n", "vertices 3\n0 1 2\n0 1\n", "vertices 3\n0 0 1\n", "0 1 2\n", "vertices 3\n0 1 2\n2 1 0\n"] {
        assert!(matches!(FacetList::parse(bad).and_then(|f| f.check()), Err(Error::MalformedFacets(_) | Error::Parse(_))), "{bad:?}");
    }
}
