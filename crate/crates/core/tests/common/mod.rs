//! Shared fixtures: seeded randomness and the catalog data as Morse data.
#![allow(dead_code)]

use std::collections::HashMap;

use morsetwist_core::catalog::{circle_regular, circle_std, genus2, klein, rp2, rpn, torus};
use morsetwist_core::complex::{HomologyOptions, HomologySummary};
use morsetwist_core::cw::cw_to_morse;
use morsetwist_core::morse::{build_cochain, build_complex, LocalSystem, MorseDatum};
use morsetwist_core::rings::{rat, Rational};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-6..=6), r.gen_range(1..=4))
}

pub fn random_class(r: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(r)).collect()
}

pub fn random_nonzero_class(r: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    loop {
        let c = random_class(r, n);
        if c.iter().any(|x| !x.is_zero()) {
            return c;
        }
    }
}

pub fn random_gauge(r: &mut ChaCha8Rng, d: &MorseDatum) -> HashMap<String, i64> {
    d.points.iter().map(|p| (p.id.clone(), if r.gen_bool(0.5) { 1 } else { -1 })).collect()
}

pub fn random_potential(r: &mut ChaCha8Rng, d: &MorseDatum) -> HashMap<String, Vec<Rational>> {
    d.points.iter().map(|p| (p.id.clone(), random_class(r, d.basis_forms.len()))).collect()
}

pub fn fully_tagged(d: &MorseDatum) -> bool {
    d.flows.iter().all(|f| f.unit_tag.is_some())
}

/// Every catalog datum that can be read as Morse data.
pub fn morse_catalog() -> Vec<MorseDatum> {
    let mut v = vec![circle_std(), rp2(), torus(), klein(), genus2()];
    v.extend((1..=5).map(rpn));
    v.push(cw_to_morse(&circle_regular()).unwrap());
    v
}

/// Systems a datum supports, with `seed` picking the classes.
pub fn systems(d: &MorseDatum, r: &mut ChaCha8Rng) -> Vec<LocalSystem> {
    let mut s = vec![LocalSystem::Trivial];
    if fully_tagged(d) {
        s.push(LocalSystem::UnitRep);
    }
    let n = d.basis_forms.len();
    if n > 0 {
        s.push(LocalSystem::Exp(random_class(r, n)));
        s.push(LocalSystem::Nov(random_class(r, n)));
    }
    s
}

pub fn homology(d: &MorseDatum, sys: &LocalSystem, opts: &HomologyOptions) -> HomologySummary {
    build_complex(d, sys).unwrap().homology(opts).unwrap()
}

pub fn cohomology(d: &MorseDatum, sys: &LocalSystem, opts: &HomologyOptions) -> HomologySummary {
    build_cochain(d, sys).unwrap().homology(opts).unwrap()
}

pub fn at_depth(depth: i64) -> HomologyOptions {
    HomologyOptions { depth: rat(depth, 1), ..HomologyOptions::default() }
}
