//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach stdout.

mod common;

use std::time::Instant;

use morsetwist_core::catalog::{circle_regular, circle_std, genus2, get_example, klein, rp2, rp2_triangulated, rpn, s2_triangulated, torus};
use morsetwist_core::complex::{AnyComplex, HomologyOptions, HomologySummary};
use morsetwist_core::cw::{cw_to_morse, from_simplicial, steenrod_boundary, validate_regular};
use morsetwist_core::invariants::{check_inequalities, hspace_obstruction, novikov_numbers};
use morsetwist_core::linalg::{agrees_above_floors, snf_int, Matrix};
use morsetwist_core::morse::{build_cochain, build_complex, lift_cover, LocalSystem, MorseDatum};
use morsetwist_core::rings::{int_rat, rat, NovElem, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use common::*;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn shape(h: &HomologySummary) -> (Vec<usize>, Vec<Vec<u64>>) {
    let t = h.torsion.iter().map(|v| v.iter().map(|x| u64::try_from(x).unwrap()).collect()).collect();
    (h.betti.clone(), t)
}

fn expect(h: &HomologySummary, betti: &[usize], torsion: &[&[u64]], what: &str) -> Outcome {
    let (b, t) = shape(h);
    let want: Vec<Vec<u64>> = torsion.iter().map(|x| x.to_vec()).collect();
    ensure!(h.is_complete() && b == betti && t == want, "{what}: got betti {b:?}, torsion {t:?}");
    Ok(())
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int_rat(x)).collect()
}

fn circle_suite() -> Outcome {
    let d = circle_std();
    let o = HomologyOptions::default();
    expect(&homology(&d, &LocalSystem::UnitRep, &o), &[0, 0], &[&[2], &[]], "sign system")?;
    expect(&homology(&d, &LocalSystem::Exp(ints(&[0])), &o), &[1, 1], &[&[], &[]], "exp class 0")?;
    expect(&homology(&d, &LocalSystem::Exp(ints(&[1])), &o), &[0, 0], &[&[], &[]], "exp class 1")
}

fn rp2_suite() -> Outcome {
    let d = rp2();
    let o = HomologyOptions::default();
    expect(&homology(&d, &LocalSystem::Trivial, &o), &[1, 0, 0], &[&[], &[2], &[]], "untwisted")?;
    expect(&homology(&d, &LocalSystem::UnitRep, &o), &[0, 0, 1], &[&[2], &[], &[]], "sign system")?;
    let mut r = rng(2);
    for _ in 0..20 {
        let c = random_class(&mut r, 1);
        expect(&homology(&d, &LocalSystem::Exp(c.clone()), &o), &[1, 0, 0], &[&[], &[], &[]], &format!("exp {c:?}"))?;
    }
    Ok(())
}

fn lift() -> Outcome {
    let d = get_example("rp2-lift").map_err(|e| e.to_string())?.datum.as_morse().map_err(|e| e.to_string())?;
    let up = lift_cover(&d).map_err(|e| e.to_string())?;
    ensure!(up.points.len() == 6, "cover has {} points", up.points.len());
    expect(&homology(&up, &LocalSystem::Trivial, &HomologyOptions::default()), &[1, 0, 1], &[&[], &[], &[]], "lift")
}

fn deformed_circle() -> Outcome {
    let o = HomologyOptions::default();
    let mut r = rng(4);
    let mut cw = circle_regular();
    for round in 0..21 {
        let sys = if round == 0 { LocalSystem::Trivial } else { LocalSystem::UnitRep };
        if round > 0 {
            for inc in cw.incidences.iter_mut() {
                inc.unit_tag = Some(if r.gen_bool(0.5) { 1 } else { -1 });
            }
        }
        let a = steenrod_boundary(&cw, &sys).map_err(|e| e.to_string())?;
        let b = build_complex(&cw_to_morse(&cw).map_err(|e| e.to_string())?, &sys).map_err(|e| e.to_string())?;
        ensure!(a == b, "round {round}: boundary matrices differ");
        let (ha, hb) = (a.homology(&o).unwrap(), b.homology(&o).unwrap());
        ensure!(ha == hb, "round {round}: homology differs");
        // the product of the tags decides the answer
        let holonomy: i64 = cw.incidences.iter().map(|i| i.unit_tag.unwrap() * i64::from(i.incidence)).product();
        if sys == LocalSystem::UnitRep && holonomy == -1 {
            expect(&ha, &[0, 0], &[&[2], &[]], "odd holonomy")?;
        } else {
            expect(&ha, &[1, 1], &[&[], &[]], "even holonomy")?;
        }
    }
    Ok(())
}

fn genus2_cochains() -> Outcome {
    let d = genus2();
    let o = HomologyOptions::default();
    let run = |c: Vec<Rational>, betti: &[usize]| -> Outcome {
        let cx = build_cochain(&d, &LocalSystem::Exp(c.clone())).map_err(|e| e.to_string())?;
        ensure!(cx.validate().is_ok(), "delta squared nonzero for {c:?}");
        let h = cx.homology(&o).map_err(|e| e.to_string())?;
        expect(&h, betti, &[&[], &[], &[]], &format!("class {c:?}"))?;
        ensure!(cx.euler_cells() == -2 && h.euler() == Ok(-2), "Euler number for {c:?}");
        Ok(())
    };
    run(ints(&[0, 0, 0, 0]), &[1, 4, 1])?;
    for i in 0..4 {
        let mut c = ints(&[0, 0, 0, 0]);
        c[i] = int_rat(1);
        run(c, &[0, 2, 0])?;
    }
    let mut r = rng(5);
    for _ in 0..50 {
        run(random_nonzero_class(&mut r, 4), &[0, 2, 0])?;
    }
    Ok(())
}

fn hspace() -> Outcome {
    let o = HomologyOptions::default();
    let verdict = |d: &MorseDatum, s: &LocalSystem| hspace_obstruction(d, s, &o).map(|v| v.triggered).map_err(|e| e.to_string());
    ensure!(verdict(&genus2(), &LocalSystem::Exp(ints(&[1, 0, 0, 0])))?, "genus2 exp(1,0,0,0) not obstructed");
    for n in 1..=6 {
        let got = verdict(&rpn(n), &LocalSystem::UnitRep)?;
        ensure!(got == (n % 2 == 0), "rpn({n}): triggered = {got}");
    }
    let mut r = rng(6);
    for _ in 0..10 {
        let c = random_nonzero_class(&mut r, 2);
        ensure!(!verdict(&torus(), &LocalSystem::Exp(c.clone()))?, "torus exp {c:?} obstructed");
    }
    Ok(())
}

fn novikov() -> Outcome {
    let mut r = rng(7);
    let cases: [(MorseDatum, Vec<usize>, Vec<usize>, Vec<usize>); 4] = [
        (circle_std(), vec![1, 1], vec![0, 0], vec![0, 0]),
        (torus(), vec![1, 2, 1], vec![0, 0, 0], vec![0, 0, 0]),
        (klein(), vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 0]),
        (genus2(), vec![1, 4, 1], vec![0, 0, 0], vec![0, 2, 0]),
    ];
    for depth in [16, 2] {
        let o = at_depth(depth);
        for (d, b0, q0, b1) in &cases {
            let n = d.basis_forms.len();
            let z = novikov_numbers(d, &vec![Rational::zero(); n], &o).map_err(|e| e.to_string())?;
            ensure!(z.is_complete() && z.b == *b0 && z.q == *q0, "{} class 0 at depth {depth}: b {:?} q {:?}", d.name, z.b, z.q);
            for _ in 0..5 {
                let c = random_nonzero_class(&mut r, n);
                let x = novikov_numbers(d, &c, &o).map_err(|e| e.to_string())?;
                let zero = vec![0; b1.len()];
                ensure!(x.is_complete() && x.b == *b1 && x.q == zero, "{} class {c:?} at depth {depth}: b {:?} q {:?}", d.name, x.b, x.q);
            }
        }
    }
    Ok(())
}

fn slack() -> Outcome {
    let o = HomologyOptions::default();
    let n = novikov_numbers(&genus2(), &ints(&[1, 0, 0, 0]), &o).map_err(|e| e.to_string())?;
    let c = check_inequalities(&[1, 4, 1], &n).map_err(|e| e.to_string())?;
    ensure!(c.pass && c.slack == vec![1, 2, 1], "slack {:?}", c.slack);
    // one index-1 zero short of the bound
    let c = check_inequalities(&[1, 1, 1], &n).map_err(|e| e.to_string())?;
    ensure!(!c.pass && c.failures() == vec![1], "one zero of index 1 accepted");
    let c = check_inequalities(&[0, 2, 0], &n).map_err(|e| e.to_string())?;
    ensure!(c.pass && c.slack == vec![0, 0, 0], "two zeros rejected");
    Ok(())
}

/// Determinantal-divisor oracle: `d_k` is the gcd of all `k × k` minors.
fn determinantal_divisors(a: &[Vec<i64>]) -> Vec<BigInt> {
    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::one();
        }
        let mut s = BigInt::zero();
        for j in 0..m.len() {
            let sub: Vec<Vec<BigInt>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
            let term = &m[0][j] * det(&sub);
            s = if j % 2 == 0 { s + term } else { s - term };
        }
        s
    }
    fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (k - 1..n).flat_map(|last| choose(last, k - 1).into_iter().map(move |mut s| { s.push(last); s })).collect()
    }
    let (rows, cols) = (a.len(), a[0].len());
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in choose(rows, k) {
            for cs in choose(cols, k) {
                let m: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(a[i][j])).collect()).collect();
                g = g.gcd(&det(&m));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

fn properties() -> Outcome {
    let o = HomologyOptions::default();
    let mut r = rng(9);
    let mut euler_runs = 0;
    let mut euler = |c: &AnyComplex, h: &HomologySummary| -> Outcome {
        if h.is_complete() {
            ensure!(h.euler() == Ok(c.euler_cells()), "Euler identity fails");
            euler_runs += 1;
        }
        Ok(())
    };
    let catalog = morse_catalog();

    // boundary squares on the catalog and on 500 variants
    let squares = |d: &MorseDatum, s: &LocalSystem| -> Outcome {
        let (c, k) = (build_complex(d, s).map_err(|e| e.to_string())?, build_cochain(d, s).map_err(|e| e.to_string())?);
        ensure!(c.validate().is_ok() && k.validate().is_ok(), "{} under {s}: nonzero square", d.name);
        Ok(())
    };
    for d in &catalog {
        for s in systems(d, &mut r) {
            squares(d, &s)?;
        }
    }
    for i in 0..500 {
        let d = &catalog[i % catalog.len()];
        let mut v = d.shift_potential(&random_potential(&mut r, d)).unwrap();
        if fully_tagged(d) {
            v = v.gauge_transform(&random_gauge(&mut r, d)).unwrap();
        }
        for s in systems(&v, &mut r) {
            squares(&v, &s)?;
        }
    }

    // gauge invariance
    for d in catalog.iter().filter(|d| fully_tagged(d)) {
        let c = build_complex(d, &LocalSystem::UnitRep).unwrap();
        let base = c.homology(&o).unwrap();
        euler(&c, &base)?;
        for _ in 0..100 {
            let g = d.gauge_transform(&random_gauge(&mut r, d)).unwrap();
            ensure!(homology(&g, &LocalSystem::UnitRep, &o) == base, "{}: gauge changes homology", d.name);
        }
    }

    // cohomologous classes and positive rescaling
    for d in catalog.iter().filter(|d| !d.basis_forms.is_empty()) {
        let n = d.basis_forms.len();
        for _ in 0..100 {
            let class = random_class(&mut r, n);
            let shifted = d.shift_potential(&random_potential(&mut r, d)).unwrap();
            for s in [LocalSystem::Exp(class.clone()), LocalSystem::Nov(class.clone())] {
                let c = build_complex(d, &s).unwrap();
                let h = c.homology(&o).unwrap();
                euler(&c, &h)?;
                ensure!(homology(&shifted, &s, &o) == h, "{} under {s}: potential shift changes homology", d.name);
            }
        }
        let class = random_nonzero_class(&mut r, n);
        for _ in 0..10 {
            let k = rat(r.gen_range(1..=9), r.gen_range(1..=4));
            let scaled: Vec<Rational> = class.iter().map(|x| x * &k).collect();
            for (a, b) in [
                (LocalSystem::Exp(class.clone()), LocalSystem::Exp(scaled.clone())),
                (LocalSystem::Nov(class.clone()), LocalSystem::Nov(scaled.clone())),
            ] {
                ensure!(homology(d, &a, &o) == homology(d, &b, &o), "{}: rescaling {a} by {k} changes homology", d.name);
            }
        }
    }

    // Smith normal form against determinantal divisors
    for _ in 0..200 {
        let (m, n) = (r.gen_range(1..=5), r.gen_range(1..=5));
        let a: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| r.gen_range(-4..=4)).collect()).collect();
        let mx = Matrix::from_rows(a.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap();
        let s = snf_int(&mx);
        ensure!(s.u.mul(&mx).unwrap().mul(&s.v).unwrap() == s.d, "U A V != D for {a:?}");
        let dd = determinantal_divisors(&a);
        ensure!(s.rank == dd.len(), "rank {} vs {} for {a:?}", s.rank, dd.len());
        let mut prev = BigInt::one();
        for (k, x) in s.diagonal().iter().enumerate() {
            ensure!(x.abs() == &dd[k] / &prev, "factor {k} of {a:?}");
            prev = dd[k].clone();
        }
    }

    // truncated inverses of random units
    for _ in 0..200 {
        let top = rat(r.gen_range(-4..=4), r.gen_range(1..=3));
        let lead = BigInt::from(if r.gen_bool(0.5) { 1 } else { -1 });
        let mut terms = vec![(lead, top.clone())];
        for _ in 0..r.gen_range(0..4) {
            terms.push((BigInt::from(r.gen_range(-3..=3)), &top - rat(r.gen_range(1..=8), r.gen_range(1..=3))));
        }
        let u = NovElem::exact(terms);
        let depth = int_rat(r.gen_range(1..=16));
        let v = u.invert(&depth).map_err(|e| e.to_string())?;
        ensure!(agrees_above_floors(&(&u * &v), &NovElem::constant(BigInt::one())), "{u} times its inverse {v}");
        let w = v.invert(&depth).map_err(|e| e.to_string())?;
        ensure!(agrees_above_floors(&w, &u), "{u}: double inverse {w}");
    }
    ensure!(euler_runs > 0, "no completed runs");
    Ok(())
}

fn triangulations() -> Outcome {
    let o = HomologyOptions::default();
    for (f, betti, torsion, chi) in [
        (rp2_triangulated(), [1, 0, 0], [vec![], vec![2u64], vec![]], 1),
        (s2_triangulated(), [1, 0, 1], [vec![], vec![], vec![]], 2),
    ] {
        let cw = from_simplicial(&f).map_err(|e| e.to_string())?;
        ensure!(validate_regular(&cw).is_ok(), "not regular");
        let c = steenrod_boundary(&cw, &LocalSystem::Trivial).map_err(|e| e.to_string())?;
        ensure!(matches!(c, AnyComplex::Int(_)), "not an integer complex");
        let h = c.homology(&o).map_err(|e| e.to_string())?;
        let t: Vec<&[u64]> = torsion.iter().map(Vec::as_slice).collect();
        expect(&h, &betti, &t, "triangulation")?;
        ensure!(c.euler_cells() == chi && h.euler() == Ok(chi), "Euler number {}", c.euler_cells());
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("circle: sign system, exp class 0 and 1", circle_suite),
        ("projective plane: untwisted, sign, exp", rp2_suite),
        ("lift of the projective plane to the sphere", lift),
        ("cellular and Morse complexes of the deformed circle", deformed_circle),
        ("genus-2 twisted cochains", genus2_cochains),
        ("H-space obstruction verdicts", hspace),
        ("Novikov numbers at depth 16 and 2", novikov),
        ("genus-2 zero-count slack (1,2,1)", slack),
        ("property suites", properties),
        ("triangulation pipeline", triangulations),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(()) => println!("PASS {:>2} {name} ({:.2}s)", i + 1, t.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
