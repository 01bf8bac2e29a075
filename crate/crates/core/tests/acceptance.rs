//! Acceptance criteria 1–9. Run with
//! `cargo test -p heightlab --test acceptance -- --nocapture`.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use common::*;
use heightlab::divisor::{certify_very_large, rr_basis, CertifyOutcome, HypersurfaceDivisor, SearchBudget};
use heightlab::exact::integer::factor_integer;
use heightlab::exact::{qpoly, CoefField};
use heightlab::fg_domain::{
    eg_inequality_check, elem_add, elem_mul, elem_normalize, northcott_enumerate_domain, DomainElem,
    DomainPresentation,
};
use heightlab::heights_ff::{
    ff_ord, h_proj_ff_by_places, support_places, FFPlace, LinearForm, PlaceSet, ProjPointFF, QRatFunc, RatFunc,
};
use heightlab::heights_nf::{contributing_places, northcott_enumerate_q, q_abs};
use heightlab::scalar::{rat, ratio};
use heightlab::specialization::{
    admissible_points, is_s_integral, rational_reconstruct, specialize, Reconstruction, SpecMap,
};
use heightlab::subspace::{f_p_eval, f_p_eval_expanded, wang_lhs, wang_lhs_coords, HypCollection};
use heightlab::unit_eq::{as_ratfunc, unit_equation_solve, UnitEqProblem};
use heightlab::{Error, Field, Int, MPoly, Rat, UPoly};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> std::result::Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {:.2?}, limit {:.0?}", t, limit))?;
    Ok(t)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut r = rng(1001);
    for _ in 0..500 {
        let x = rand_nonzero_rat(&mut r, 1_000_000);
        let places = contributing_places(&x).map_err(|e| e.to_string())?;
        // Σ log|x|_p = 0  ⇔  ∏ |x|_p = 1, compared exactly
        let prod = places.iter().fold(Rat::one(), |acc, p| acc * q_abs(&x, p));
        ensure(prod.is_one(), || format!("∏|x|_p = {prod} at x = {x}"))?;
    }
    for _ in 0..500 {
        let x = rand_nonzero_ratfunc(&mut r, 6, 20);
        let mut s = 0i64;
        for p in support_places(std::slice::from_ref(&x), &CoefField::Rationals).map_err(|e| e.to_string())? {
            s += p.degree() as i64 * ff_ord(&x, &p).map_err(|e| e.to_string())?;
        }
        ensure(s == 0, || format!("Σ deg·ord = {s} at {x}"))?;
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("500 + 500 exact, {t:.2?}"))
}

fn criterion_2() -> Check {
    let mut r = rng(1002);
    let q = CoefField::Rationals;
    let height = |x: &QRatFunc| h_proj_ff_by_places(&[x.clone(), QRatFunc::one()], &q).map_err(|e| e.to_string());
    let ex = QRatFunc::new(qpoly(&[1, 0, 0, 1]), qpoly(&[1, 0, 1])).unwrap();
    ensure(height(&ex)? == 3, || "(t³+1)/(1+t²) does not have height 3".into())?;
    for _ in 0..200 {
        let p = rand_upoly_upto(&mut r, 8, 30);
        let d = rand_upoly_upto(&mut r, 8, 30);
        let g = UPoly::gcd(&p, &d);
        let (p, d) = (p.div_exact(&g).unwrap(), d.div_exact(&g).unwrap());
        let expected = p.deg().max(d.deg()) as u64;
        let x = QRatFunc::new(p, d).unwrap();
        ensure(height(&x)? == expected, || format!("{x}: place sum differs from max degree {expected}"))?;
        ensure(x.height() == expected, || format!("{x}: height() differs from {expected}"))?;
    }
    Ok("200 reduced p/q and (t³+1)/(1+t²) → 3".into())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    for b in 0..=20u64 {
        let got: BTreeSet<Vec<Int>> = northcott_enumerate_q(1, b).iter().map(|p| p.coords().to_vec()).collect();
        ensure(got == brute_force_proj_q(1, b as i64), || format!("P^1, B = {b} differs from brute force"))?;
    }
    let n2 = northcott_enumerate_q(1, 2).len();
    ensure(n2 == 8, || format!("B = 2 gives {n2} points"))?;
    let pres = DomainPresentation::localization(MPoly::one(1), names(1)).unwrap();
    let mut counts = Vec::new();
    for deg_b in 0..=2u32 {
        for ht_b in 1..=3u64 {
            let got: BTreeSet<String> = northcott_enumerate_domain(&pres, deg_b, ht_b)
                .map_err(|e| e.to_string())?
                .iter()
                .map(ToString::to_string)
                .collect();
            let want = brute_force_domain(&pres, deg_b, ht_b as i64);
            ensure(got == want, || format!("degB = {deg_b}, htB = {ht_b}: {} vs {}", got.len(), want.len()))?;
            counts.push(got.len());
        }
    }
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("P^1 B ≤ 20 exact; domain counts {counts:?}; {t:.2?}"))
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let p1 = |pts: &[Option<i64>]| {
        HypersurfaceDivisor::p1(&pts.iter().map(|a| (a.map(rat), 1)).collect::<Vec<_>>()).unwrap()
    };
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (name, d) in [("[0]+[∞]", p1(&[Some(0), None])), ("[0]+[1]+[∞]", p1(&[Some(0), Some(1), None]))] {
        match certify_very_large(&d, SearchBudget::default()) {
            Ok(CertifyOutcome::Certified(c)) => match c.verify() {
                Ok(()) if c.entries.iter().all(|e| e.order_sums.iter().all(|(_, s)| *s > 0)) => {
                    notes.push(format!("{name} certified"))
                }
                Ok(()) => failures.push(format!("{name}: nonpositive order sum in certificate")),
                Err(e) => failures.push(format!("{name}: re-verification failed: {e}")),
            },
            Ok(CertifyOutcome::NotFound(nf)) => failures.push(format!(
                "{name} not certified (examined {}, obstruction {:?})",
                nf.examined, nf.obstruction
            )),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let d0 = p1(&[Some(0)]);
    let dim = rr_basis(&d0).dimension();
    match certify_very_large(&d0, SearchBudget::default()) {
        Ok(CertifyOutcome::NotFound(_)) if dim == 2 => notes.push("[0] NotFound over dim L(D) = 2".into()),
        other => failures.push(format!("[0]: expected NotFound with dim 2, got {other:?}, dim {dim}")),
    }
    if let Err(e) = within(start, Duration::from_secs(10)) {
        failures.push(e);
    }
    if failures.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(format!("{} (passed: {})", failures.join("; "), notes.join("; ")))
    }
}

fn rand_forms(r: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<LinearForm<Rat>> {
    (0..k)
        .map(|_| loop {
            let f = LinearForm::new((0..=n).map(|_| rat(r.gen_range(-2..=2))).collect());
            if !f.is_zero() {
                return f;
            }
        })
        .collect()
}

fn criterion_5() -> Check {
    let mut r = rng(1005);
    let fin = vec![qpoly(&[0, 1]), qpoly(&[-1, 1]), qpoly(&[1, 1]), qpoly(&[1, 0, 1])];
    let t = PlaceSet::new(fin.clone(), true);
    let mut done = 0;
    while done < 200 {
        let n = r.gen_range(1..=2);
        let xs: Vec<QRatFunc> = (0..=n).map(|_| rand_ratfunc(&mut r, 3, 4)).collect();
        let Ok(p) = ProjPointFF::new(&xs) else { continue };
        let k = r.gen_range(n + 1..=n + 3);
        let Ok(h) = HypCollection::new(n, rand_forms(&mut r, n, k)) else { continue };
        let base = match wang_lhs(&p, &h, &t) {
            Ok(v) => v,
            Err(Error::PointOnHyperplane) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let lambda = rand_nonzero_ratfunc(&mut r, 3, 4);
        let scaled: Vec<QRatFunc> = xs.iter().map(|x| x.clone() * lambda.clone()).collect();
        let other = wang_lhs_coords(&scaled, &h, &t).map_err(|e| e.to_string())?;
        ensure(other == base, || format!("{p}: lhs {base} vs {other} after scaling"))?;
        done += 1;
    }
    let d = HypersurfaceDivisor::p1(&[(Some(rat(0)), 1), (None, 1)]).unwrap();
    let b = rr_basis(&d);
    let mut done_fp = 0;
    while done_fp < 200 {
        let k = r.gen_range(3..=5);
        let Ok(h) = HypCollection::new(2, rand_forms(&mut r, 2, k)) else { continue };
        let q = vec![rand_nonzero_ratfunc(&mut r, 3, 4), rand_nonzero_ratfunc(&mut r, 3, 4)];
        let i = r.gen_range(0..=fin.len());
        let place = fin.get(i).cloned().map_or(FFPlace::Infinite, FFPlace::Finite);
        let eps = ratio(r.gen_range(1..=5), r.gen_range(1..=5));
        match (f_p_eval(&q, &place, &b, &h, &eps), f_p_eval_expanded(&q, &place, &b, &h, &eps)) {
            (Ok(a), Ok(e)) => {
                ensure(a == e, || format!("f_p {a} vs reassembled {e}"))?;
                done_fp += 1;
            }
            (Err(x), Err(y)) if x == y => {}
            (a, e) => return Err(format!("paths disagree: {a:?} vs {e:?}")),
        }
    }
    Ok("200 invariance + 200 dual-path, exact".into())
}

fn criterion_6() -> Check {
    let mut r = rng(1006);
    let mut violations = 0;
    for k in 0..1000 {
        let q = 1 + k % 3;
        let pres = DomainPresentation::localization(MPoly::one(q), names(q)).unwrap();
        let a = loop {
            let den = rand_nonzero_mpoly(&mut r, q, 3, 3, 5);
            let num = rand_mpoly(&mut r, q, 3, 4, 5);
            let e = elem_normalize(den, vec![num]).unwrap();
            if !e.is_zero() {
                break e;
            }
        };
        let chk = eg_inequality_check(&pres, &a, &rat(0)).map_err(|e| e.to_string())?;
        let oracle = per_variable_degrees(&a);
        ensure(chk.rhs == rat(oracle as i64), || format!("{a}: Σ h_F = {} but per-variable degrees give {oracle}", chk.rhs))?;
        if !chk.holds || chk.lhs > oracle {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("1000 elements, q ≤ 3, 0 violations".into())
}

fn primes_of(n: &Int) -> Vec<Int> {
    if n.is_zero() {
        return vec![];
    }
    factor_integer(n).unwrap().into_iter().map(|(p, _)| p).collect()
}

fn criterion_7() -> Check {
    let mut r = rng(1007);
    let g = MPoly::from_int_terms(2, &[(&[0, 2], 1), (&[1, 0], -1)]);
    let z = MPoly::var(1, 0);
    let pres = DomainPresentation::new(1, 2, g, z.clone(), names(1)).unwrap();
    let maps: Vec<SpecMap> = admissible_points(&pres, 6)
        .into_iter()
        .flat_map(|u| (0..2).filter_map(move |i| Some((u.clone(), i))))
        .filter_map(|(u, i)| SpecMap::new(&pres, &u, i).ok())
        .step_by(2)
        .take(10)
        .collect();
    ensure(maps.len() == 10, || format!("only {} maps", maps.len()))?;
    let draw = |r: &mut ChaCha8Rng| {
        let den = z.pow(r.gen_range(0..=2));
        let nums = vec![rand_mpoly(r, 1, 3, 3, 5), rand_mpoly(r, 1, 3, 3, 5)];
        elem_normalize(den, nums).unwrap()
    };
    for _ in 0..1000 {
        let (a, b) = (draw(&mut r), draw(&mut r));
        let sum = elem_add(&a, &b).unwrap();
        let prod = elem_mul(&pres, &a, &b).unwrap();
        for m in &maps {
            let sp = |x: &DomainElem| specialize(x, m).map_err(|e| e.to_string());
            let (pa, pb) = (sp(&a)?, sp(&b)?);
            ensure(sp(&sum)? == pa.clone() + pb.clone(), || format!("ψ(a+b) ≠ ψ(a)+ψ(b) at {:?}", m.target.u))?;
            ensure(sp(&prod)? == pa * pb, || format!("ψ(ab) ≠ ψ(a)ψ(b) at {:?}", m.target.u))?;
        }
    }
    for (k, m) in maps.iter().enumerate() {
        let fu = z.eval_int(&m.target.u);
        let fprimes = primes_of(fu.numer());
        let s = m.target.finite_primes();
        ensure(s.iter().all(|p| fprimes.contains(p)), || format!("S = {s:?} not within primes of f(u) = {fu}"))?;
        for _ in 0..20 {
            let v = specialize(&draw(&mut r), m).map_err(|e| e.to_string())?;
            let den = v.rep().coeffs().iter().fold(Int::one(), |l, c| l.lcm(c.denom()));
            ensure(primes_of(&den).iter().all(|p| s.contains(p)), || format!("map {k}: {v} has denominator {den}"))?;
            ensure(is_s_integral(&v, &m.target.s).unwrap(), || format!("map {k}: {v} not S-integral"))?;
        }
    }
    let f = &z - &z.pow(2);
    let loc = DomainPresentation::localization(f, vec!["t".into()]).unwrap();
    let u: Vec<i64> = admissible_points(&loc, 2).into_iter().map(|p| p[0]).collect();
    ensure(u == vec![-2, -1, 2], || format!("𝒰 = {u:?}"))?;
    Ok("1000 pairs × 10 maps exact; S support checked on 200 images; 𝒰 = {-2, -1, 2}".into())
}

fn criterion_8() -> Check {
    let mut r = rng(1008);
    let from_upoly = |p: &UPoly<Rat>| MPoly::from_upoly(p, 0, 1);
    for _ in 0..100 {
        let num = rand_upoly_upto(&mut r, 5, 9);
        let den = rand_upoly_upto(&mut r, 5, 9);
        let a = elem_normalize(from_upoly(&den), vec![from_upoly(&num)]).unwrap();
        let pres = DomainPresentation::localization(a.den().clone(), names(1)).unwrap();
        let pts: Vec<i64> = admissible_points(&pres, 10).into_iter().take(11).map(|u| u[0]).collect();
        let mut samples = Vec::new();
        for &u in &pts {
            let m = SpecMap::new(&pres, &[u], 0).map_err(|e| e.to_string())?;
            samples.push((u, specialize(&a, &m).map_err(|e| e.to_string())?.as_rat().unwrap()));
        }
        match rational_reconstruct(&samples, 5).map_err(|e| e.to_string())? {
            Reconstruction::Found(x) if x == as_ratfunc(&a).unwrap() => {}
            other => return Err(format!("{a} reconstructed as {other:?}")),
        }
    }
    // f = t(t−1)(t+1)(t−2)(t+2); admissible points ±3, …, ±8
    let lin: Vec<MPoly> = [0, 1, -1, 2, -2].iter().map(|&c| from_upoly(&qpoly(&[-c, 1]))).collect();
    let f = lin.iter().fold(MPoly::one(1), |acc, g| &acc * g);
    let pres = DomainPresentation::localization(f, names(1)).unwrap();
    let pts: Vec<i64> = admissible_points(&pres, 8).into_iter().take(11).map(|u| u[0]).collect();
    let maps: Vec<SpecMap> = pts.iter().map(|&u| SpecMap::new(&pres, &[u], 0).unwrap()).collect();
    let mut elems = HashSet::new();
    while elems.len() < 10_000 {
        let mut den = MPoly::one(1);
        for _ in 0..r.gen_range(0..=5) {
            den = &den * &lin[r.gen_range(0..lin.len())];
        }
        let num = rand_upoly_upto(&mut r, 5, 3);
        let e = elem_normalize(den, vec![from_upoly(&num)]).unwrap();
        if !e.is_zero() {
            elems.insert(e);
        }
    }
    let mut images = HashSet::new();
    for e in &elems {
        let tuple: Vec<Rat> = maps.iter().map(|m| specialize(e, m).unwrap().as_rat().unwrap()).collect();
        images.insert(tuple);
    }
    ensure(images.len() == elems.len(), || format!("{} elements, {} distinct images", elems.len(), images.len()))?;
    Ok(format!("100 round trips; {} elements → {} distinct 11-tuples", elems.len(), images.len()))
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let t = RatFunc::t();
    let one = QRatFunc::one();
    let inv = |x: QRatFunc| x.pow(-1);
    let listed: BTreeSet<String> = [
        t.clone(),
        one.clone() - t.clone(),
        inv(t.clone()),
        inv(one.clone() - t.clone()),
        t.clone() * inv(t.clone() - one.clone()),
        (t.clone() - one.clone()) * inv(t.clone()),
    ]
    .iter()
    .map(ToString::to_string)
    .collect();
    let mut notes = Vec::new();
    for (f, want) in [(qpoly(&[0, 1, -1]), listed), (qpoly(&[1, 0, 1]), BTreeSet::new())] {
        let prob = UnitEqProblem::new(&f).map_err(|e| e.to_string())?;
        let set = unit_equation_solve(&prob).map_err(|e| e.to_string())?;
        let got: BTreeSet<String> = set.solutions.iter().map(|s| as_ratfunc(&s.u).unwrap().to_string()).collect();
        ensure(got.len() == set.solutions.len(), || "duplicate solutions".into())?;
        ensure(got == want, || format!("f = {f}: got {got:?}"))?;
        let wide = prob.degree_bound() as i64 + 2;
        let brute = brute_force_units(&f, wide);
        ensure(brute == got, || format!("f = {f}: brute force over [−{wide}, {wide}] gives {brute:?}"))?;
        notes.push(format!("f = {f}: {} solutions", got.len()));
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("{}; {t:.2?}", notes.join(", ")))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("product formulas", criterion_1),
        ("function-field height example", criterion_2),
        ("Northcott enumeration", criterion_3),
        ("very-large certification", criterion_4),
        ("Wang evaluator", criterion_5),
        ("degree vs. function-field heights (C = 0)", criterion_6),
        ("specialization", criterion_7),
        ("reconstruction", criterion_8),
        ("end-to-end unit equation", criterion_9),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let n = k + 1;
        match run() {
            Ok(detail) => println!("criterion {n} ({name}): PASS  {detail}"),
            Err(detail) => {
                println!("criterion {n} ({name}): FAIL  {detail}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
