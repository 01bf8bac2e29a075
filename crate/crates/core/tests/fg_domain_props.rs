mod common;

use std::collections::BTreeSet;

use common::*;
use heightlab::fg_domain::{
    deg_bar, eg_inequality_check, elem_add, elem_arith, elem_inv, elem_mul, elem_normalize, ArithOp, DomainElem,
    DomainPresentation,
};
use heightlab::scalar::rat;
use heightlab::MPoly;
use num_traits::Signed;
use rand_chacha::ChaCha8Rng;

fn loc(q: usize) -> DomainPresentation {
    DomainPresentation::localization(MPoly::one(q), names(q)).unwrap()
}

/// `y² = z` over `ℚ(z)`.
fn sqrt_z() -> DomainPresentation {
    let g = MPoly::from_int_terms(2, &[(&[0, 2], 1), (&[1, 0], -1)]);
    DomainPresentation::new(1, 2, g, MPoly::one(1), names(1)).unwrap()
}

fn rand_elem(r: &mut ChaCha8Rng, pres: &DomainPresentation, deg: u32) -> DomainElem {
    let q = pres.q();
    let den = rand_nonzero_mpoly(r, q, deg, 3, 4);
    let nums = (0..pres.d()).map(|_| rand_mpoly(r, q, deg, 3, 4)).collect();
    elem_normalize(den, nums).unwrap()
}

fn rand_nonzero_elem(r: &mut ChaCha8Rng, pres: &DomainPresentation, deg: u32) -> DomainElem {
    loop {
        let e = rand_elem(r, pres, deg);
        if !e.is_zero() {
            return e;
        }
    }
}

fn assert_canonical(e: &DomainElem) {
    assert_eq!(&elem_normalize(e.den().clone(), e.nums().to_vec()).unwrap(), e);
    assert!(e.den().lc().is_positive());
    assert!(e.den().has_integer_coeffs() && e.nums().iter().all(MPoly::has_integer_coeffs));
    let g = e.nums().iter().fold(e.den().clone(), |g, p| MPoly::gcd(&g, p));
    assert!(g.is_one(), "{e}: common factor {g}");
}

#[test]
fn normalize_idempotent_and_results_canonical() {
    let mut r = rng(51);
    for pres in [loc(2), sqrt_z()] {
        for _ in 0..250 {
            let a = rand_elem(&mut r, &pres, 2);
            let b = rand_elem(&mut r, &pres, 2);
            assert_canonical(&a);
            for op in [ArithOp::Add, ArithOp::Sub, ArithOp::Mul] {
                assert_canonical(&elem_arith(&pres, &a, &b, op).unwrap());
            }
            if !a.is_zero() {
                assert_canonical(&elem_arith(&pres, &a, &b, ArithOp::Inv).unwrap());
            }
        }
    }
}

#[test]
fn field_axioms() {
    let mut r = rng(52);
    for pres in [loc(2), sqrt_z()] {
        let one = DomainElem::one(&pres);
        for _ in 0..100 {
            let a = rand_nonzero_elem(&mut r, &pres, 2);
            let b = rand_elem(&mut r, &pres, 2);
            let c = rand_elem(&mut r, &pres, 2);
            assert_eq!(elem_mul(&pres, &a, &elem_inv(&pres, &a).unwrap()).unwrap(), one);
            let l = elem_add(&elem_add(&a, &b).unwrap(), &c).unwrap();
            let rr = elem_add(&a, &elem_add(&b, &c).unwrap()).unwrap();
            assert_eq!(l, rr);
            let d1 = elem_mul(&pres, &a, &elem_add(&b, &c).unwrap()).unwrap();
            let d2 = elem_add(&elem_mul(&pres, &a, &b).unwrap(), &elem_mul(&pres, &a, &c).unwrap()).unwrap();
            assert_eq!(d1, d2);
        }
    }
}

#[test]
fn degree_subadditive() {
    let mut r = rng(53);
    let pres = loc(2);
    for _ in 0..300 {
        let a = rand_nonzero_elem(&mut r, &pres, 3);
        let b = rand_nonzero_elem(&mut r, &pres, 3);
        let ab = elem_mul(&pres, &a, &b).unwrap();
        assert!(deg_bar(&ab).unwrap() <= deg_bar(&a).unwrap() + deg_bar(&b).unwrap());
    }
}


#[test]
fn eg_inequality_holds_with_zero_constant() {
    let mut r = rng(54);
    for k in 0..1000 {
        let q = 1 + k % 3;
        let pres = loc(q);
        let a = rand_nonzero_elem(&mut r, &pres, 3);
        let chk = eg_inequality_check(&pres, &a, &rat(0)).unwrap();
        assert!(chk.holds, "{a}");
        assert_eq!(chk.rhs, rat(per_variable_degrees(&a) as i64));
        assert!(chk.lhs <= per_variable_degrees(&a));
    }
}

#[test]
fn enumeration_matches_nested_brute_force() {
    use heightlab::fg_domain::northcott_enumerate_domain;
    for (q, cases) in [(1usize, vec![(0u32, 1u64), (1, 2), (2, 2), (2, 3)]), (2, vec![(1, 1), (1, 2)])] {
        let pres = loc(q);
        for (deg_b, ht_b) in cases {
            let got: BTreeSet<String> = northcott_enumerate_domain(&pres, deg_b, ht_b)
                .unwrap()
                .iter()
                .map(ToString::to_string)
                .collect();
            assert_eq!(got, brute_force_domain(&pres, deg_b, ht_b as i64), "q={q} degB={deg_b} htB={ht_b}");
        }
    }
}

