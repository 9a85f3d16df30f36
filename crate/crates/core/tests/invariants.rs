mod common;

use morsetwist_core::catalog::{circle_std, genus2, klein, rp2, rpn, torus};
use morsetwist_core::complex::HomologyOptions;
use morsetwist_core::invariants::{
    check_inequalities, euler_numbers, hspace_obstruction, novikov_numbers, parallel_form_obstruction, rank_of_class,
    InvariantReport,
};
use morsetwist_core::morse::{LocalSystem, MorseDatum};
use morsetwist_core::rings::{int_rat, Rational};
use morsetwist_core::Error;

use common::*;

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int_rat(x)).collect()
}

#[test]
fn fabricated_zero_counts_fail() {
    let o = HomologyOptions::default();
    let n = novikov_numbers(&torus(), &ints(&[0, 0]), &o).unwrap();
    let c = check_inequalities(&[0, 2, 1], &n).unwrap();
    assert!(!c.pass);
    assert_eq!(c.failures(), vec![0]);
    assert!(matches!(check_inequalities(&[1, 1], &n), Err(Error::DimensionMismatch(_))));

    // the critical-point counts always satisfy the bounds
    let mut r = rng(21);
    for d in [circle_std(), torus(), klein(), genus2()] {
        for _ in 0..10 {
            let class = random_class(&mut r, d.basis_forms.len());
            let n = novikov_numbers(&d, &class, &o).unwrap();
            let c = check_inequalities(&d.counts(), &n).unwrap();
            assert!(c.pass, "{} {class:?}: slack {:?}", d.name, c.slack);
        }
    }
}

#[test]
fn klein_bottle_torsion() {
    let o = HomologyOptions::default();
    let n = novikov_numbers(&klein(), &ints(&[0]), &o).unwrap();
    assert_eq!((n.b.clone(), n.q.clone()), (vec![1, 1, 0], vec![0, 1, 0]));
    assert_eq!(n.euler().unwrap(), 0);
}

#[test]
fn class_rank() {
    assert_eq!(rank_of_class(&circle_std(), &ints(&[1])).unwrap(), 1);
    assert_eq!(rank_of_class(&circle_std(), &ints(&[0])).unwrap(), 0);
    assert_eq!(rank_of_class(&genus2(), &ints(&[1, 1, 0, 0])).unwrap(), 1);
    assert_eq!(rank_of_class(&genus2(), &ints(&[0, 0, 0, 0])).unwrap(), 0);
    assert!(rank_of_class(&genus2(), &ints(&[1])).is_err());
}

#[test]
fn parallel_forms() {
    assert!(matches!(parallel_form_obstruction(&torus(), &ints(&[0, 0])), Err(Error::ZeroClass)));
    let v = parallel_form_obstruction(&torus(), &ints(&[1, 2])).unwrap();
    assert!(!v.triggered);
    let v = parallel_form_obstruction(&genus2(), &ints(&[0, 0, 1, 0])).unwrap();
    assert!(v.triggered);
    assert!(v.witness.contains("Euler number -2"));
}

#[test]
fn untwisted_systems_never_obstruct() {
    let o = HomologyOptions::default();
    let data: Vec<MorseDatum> = vec![circle_std(), rp2(), torus(), klein(), genus2(), rpn(4)];
    for d in data {
        let v = hspace_obstruction(&d, &LocalSystem::Trivial, &o).unwrap();
        assert!(!v.triggered, "{}", d.name);
    }
    // sign system of the circle: non-simple, but its real homology is zero
    assert!(!hspace_obstruction(&circle_std(), &LocalSystem::UnitRep, &o).unwrap().triggered);
}

#[test]
fn euler_numbers_agree() {
    let o = HomologyOptions::default();
    let mut r = rng(22);
    for d in morse_catalog() {
        for s in systems(&d, &mut r) {
            let e = euler_numbers(&d, &s, &o).unwrap();
            assert_eq!(e.cells, e.homology, "{} under {s}", d.name);
        }
    }
}

#[test]
fn report_round_trips() {
    let o = HomologyOptions::default();
    let n = novikov_numbers(&genus2(), &ints(&[1, 0, 0, 0]), &o).unwrap();
    let c = check_inequalities(&[1, 4, 1], &n).unwrap();
    let r = InvariantReport::new(&n, Some(&c), vec![]);
    let s = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<InvariantReport>(&s).unwrap(), r);
    let text = r.to_string();
    assert!(text.contains("inequalities: pass"));
}
