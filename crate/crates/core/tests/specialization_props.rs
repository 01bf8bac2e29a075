mod common;

use common::*;
use heightlab::exact::discriminant;
use heightlab::exact::integer::factor_integer;
use heightlab::fg_domain::{elem_add, elem_mul, elem_normalize, DomainElem, DomainPresentation};
use heightlab::heights_nf::QPlace;
use heightlab::specialization::{
    admissible_points, in_b, is_s_integral, rational_reconstruct, specialize, Reconstruction, SpecMap,
};
use heightlab::unit_eq::as_ratfunc;
use heightlab::{Field, Int, MPoly, NfElem, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

struct Setup {
    pres: DomainPresentation,
    factors: Vec<MPoly>,
    maps: Vec<SpecMap>,
}

fn z(q: usize, i: usize) -> MPoly {
    MPoly::var(q, i)
}

fn setups() -> Vec<Setup> {
    let one1 = MPoly::one(1);
    // B = Z[z, 1/(z(1-z))]
    let f1 = vec![z(1, 0), &one1 - &z(1, 0)];
    let p1 = DomainPresentation::localization(&f1[0] * &f1[1], names(1)).unwrap();
    // y² = z, f = z
    let g = MPoly::from_int_terms(2, &[(&[0, 2], 1), (&[1, 0], -1)]);
    let p2 = DomainPresentation::new(1, 2, g, z(1, 0), names(1)).unwrap();
    // two variables, f = z1 z2 (z1 + z2 + 1)
    let f3 = vec![z(2, 0), z(2, 1), &(&z(2, 0) + &z(2, 1)) + &MPoly::one(2)];
    let p3 = DomainPresentation::localization(&(&f3[0] * &f3[1]) * &f3[2], names(2)).unwrap();
    let mut out = Vec::new();
    for (pres, factors) in [(p1, f1), (p2, vec![z(1, 0)]), (p3, f3)] {
        let mut maps = Vec::new();
        for u in admissible_points(&pres, if pres.q() == 1 { 6 } else { 3 }) {
            for i in 0..pres.d() {
                if let Ok(m) = SpecMap::new(&pres, &u, i) {
                    maps.push(m);
                }
            }
        }
        // spread the ten maps over the box
        let step = maps.len() / 10;
        let maps: Vec<SpecMap> = maps.into_iter().step_by(step.max(1)).take(10).collect();
        assert_eq!(maps.len(), 10);
        out.push(Setup { pres, factors, maps });
    }
    out
}

fn rand_b_elem(r: &mut ChaCha8Rng, s: &Setup) -> DomainElem {
    let q = s.pres.q();
    let mut den = MPoly::one(q);
    for f in &s.factors {
        den = &den * &f.pow(r.gen_range(0..=2));
    }
    let nums = (0..s.pres.d()).map(|_| rand_mpoly(r, q, 2, 3, 5)).collect();
    let e = elem_normalize(den, nums).unwrap();
    assert!(in_b(&s.pres, &e));
    e
}

#[test]
fn specialization_is_a_ring_homomorphism() {
    let mut r = rng(61);
    for s in setups() {
        for _ in 0..1000 {
            let a = rand_b_elem(&mut r, &s);
            let b = rand_b_elem(&mut r, &s);
            let sum = elem_add(&a, &b).unwrap();
            let prod = elem_mul(&s.pres, &a, &b).unwrap();
            for m in &s.maps {
                let (pa, pb) = (specialize(&a, m).unwrap(), specialize(&b, m).unwrap());
                assert_eq!(specialize(&sum, m).unwrap(), pa.clone() + pb.clone());
                assert_eq!(specialize(&prod, m).unwrap(), pa * pb);
            }
        }
    }
}

#[test]
fn gate_guarantees_distinct_roots_and_nonvanishing_f() {
    for s in setups() {
        for u in admissible_points(&s.pres, 6) {
            let ur: Vec<Rat> = u.iter().map(|&x| Rat::from_integer(x.into())).collect();
            assert!(!s.pres.f().eval(&ur).is_zero());
            if s.pres.d() > 1 {
                assert!(!discriminant(&s.pres.g_at(&ur)).unwrap().is_zero());
            }
        }
    }
}

fn primes_of(n: &Int) -> Vec<Int> {
    if n.is_zero() {
        return vec![];
    }
    factor_integer(n).unwrap().into_iter().map(|(p, _)| p).collect()
}

#[test]
fn images_are_s_integral() {
    let mut r = rng(62);
    let mut count = 0;
    for s in setups() {
        for m in &s.maps {
            let ur: Vec<Rat> = m.target.u.iter().map(|&x| Rat::from_integer(x.into())).collect();
            let fu = s.pres.f().eval(&ur);
            let s_primes = m.target.finite_primes();
            // every finite place of S divides f(u)
            let f_primes: Vec<Int> = primes_of(fu.numer()).into_iter().chain(primes_of(fu.denom())).collect();
            assert!(s_primes.iter().all(|p| f_primes.contains(p)));
            assert!(m.target.y_clause_primes.is_empty());
            for _ in 0..7 {
                let a = rand_b_elem(&mut r, &s);
                let v: NfElem = specialize(&a, m).unwrap();
                let den = v.rep().coeffs().iter().fold(Int::one(), |l, c| l.lcm(c.denom()));
                assert!(primes_of(&den).iter().all(|p| s_primes.contains(p)), "{v} with S = {s_primes:?}");
                assert!(is_s_integral(&v, &m.target.s).unwrap());
                count += 1;
            }
        }
    }
    assert!(count >= 200);
    assert!(matches!(setups()[0].maps[0].target.s[0], QPlace::Infinite));
}

#[test]
fn specialize_then_reconstruct_round_trip() {
    let mut r = rng(63);
    for _ in 0..100 {
        let num = rand_upoly_upto(&mut r, 5, 9);
        let den = rand_upoly_upto(&mut r, 5, 9);
        let a = elem_normalize(MPoly::from_upoly(&den, 0, 1), vec![MPoly::from_upoly(&num, 0, 1)]).unwrap();
        let pres = DomainPresentation::localization(a.den().clone(), names(1)).unwrap();
        let points: Vec<i64> = admissible_points(&pres, 10).into_iter().take(11).map(|u| u[0]).collect();
        assert_eq!(points.len(), 11);
        let samples: Vec<(i64, Rat)> = points
            .iter()
            .map(|&u| {
                let m = SpecMap::new(&pres, &[u], 0).unwrap();
                (u, specialize(&a, &m).unwrap().as_rat().unwrap())
            })
            .collect();
        match rational_reconstruct(&samples, 5).unwrap() {
            Reconstruction::Found(f) => assert_eq!(f, as_ratfunc(&a).unwrap()),
            Reconstruction::Inconsistent => panic!("{a} not recovered"),
        }
    }
}
