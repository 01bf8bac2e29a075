mod common;

use std::collections::BTreeSet;

use common::*;
use heightlab::exact::{qpoly, CoefField};
use heightlab::heights_ff::{
    ff_ord, h_proj_ff, h_proj_ff_by_places, is_t_integral, support_places, weil_lambda, FFPlace, LinearForm, PlaceSet,
    ProjPointFF, QRatFunc, RatFunc,
};
use heightlab::heights_nf::{
    alg_height, contributing_places, h_proj_q, h_proj_q_by_places, height_machine_veronese, northcott_enumerate_q,
    q_abs, AlgebraicNumber, ProjPointQ, QPlace,
};
use heightlab::scalar::rat;
use heightlab::{Int, Rat, UPoly};
use num_traits::{One, Signed};
use rand::Rng;

#[test]
fn q_product_formula() {
    let mut r = rng(21);
    for _ in 0..500 {
        let x = rand_nonzero_rat(&mut r, 100_000);
        let places = contributing_places(&x).unwrap();
        let prod = places.iter().fold(Rat::one(), |acc, p| acc * q_abs(&x, p));
        assert!(prod.is_one(), "{x}");
        for p in [2, 3, 5, 7, 11, 13] {
            let place = QPlace::finite(Int::from(p)).unwrap();
            if !places.contains(&place) {
                assert!(q_abs(&x, &place).is_one());
            }
        }
    }
}

#[test]
fn q_height_scaling_invariance() {
    let mut r = rng(22);
    for _ in 0..200 {
        let n = r.gen_range(1..=3);
        let coords: Vec<Rat> = (0..=n).map(|_| rand_rat(&mut r, 50)).collect();
        let Ok(p) = ProjPointQ::new(&coords) else { continue };
        let lambda = rand_nonzero_rat(&mut r, 1000);
        let scaled: Vec<Rat> = coords.iter().map(|c| c * &lambda).collect();
        let ps = ProjPointQ::new(&scaled).unwrap();
        assert_eq!(h_proj_q(&p), h_proj_q(&ps));
        assert_eq!(h_proj_q_by_places(&scaled).unwrap(), h_proj_q(&p));
        // max |a_i| over the primitive integer representative
        let m = p.coords().iter().map(|c| c.abs()).max().unwrap();
        assert_eq!(h_proj_q(&p).arg(), &Rat::from_integer(m));
    }
}


#[test]
fn northcott_matches_brute_force() {
    for n in 1..=2 {
        let mut prev = 0;
        for b in 0..=20 {
            let got: BTreeSet<Vec<Int>> = northcott_enumerate_q(n, b).iter().map(|p| p.coords().to_vec()).collect();
            assert_eq!(got, brute_force_proj_q(n, b as i64), "n={n} B={b}");
            assert!(got.len() >= prev);
            prev = got.len();
        }
    }
    assert_eq!(northcott_enumerate_q(1, 2).len(), 8);
}

#[test]
fn alg_height_of_rationals() {
    let mut r = rng(23);
    for _ in 0..50 {
        let x = rand_rat(&mut r, 1000);
        let a = AlgebraicNumber::new(&UPoly::new(vec![-x.clone(), Rat::one()]), 0).unwrap();
        let iv = alg_height(&a, 1e-9).unwrap();
        let exact = h_proj_q(&ProjPointQ::new(&[Rat::one(), x]).unwrap()).value();
        assert!(iv.lo - 1e-9 <= exact && exact <= iv.hi + 1e-9);
        assert!(iv.width() <= 1e-9);
    }
}

#[test]
fn veronese_scales_height() {
    let mut r = rng(24);
    for _ in 0..100 {
        let n = r.gen_range(1..=2);
        let coords: Vec<i64> = (0..=n).map(|_| r.gen_range(-30..=30)).collect();
        if coords.iter().all(|c| *c == 0) {
            continue;
        }
        let p = ProjPointQ::from_i64(&coords);
        for m in 1..=5 {
            assert_eq!(height_machine_veronese(m, &p).unwrap(), h_proj_q(&p).times(m));
        }
    }
}

fn sum_deg_ord(x: &QRatFunc) -> i64 {
    support_places(std::slice::from_ref(x), &CoefField::Rationals)
        .unwrap()
        .iter()
        .map(|p| p.degree() as i64 * ff_ord(x, p).unwrap())
        .sum()
}

#[test]
fn ff_product_formula() {
    let mut r = rng(25);
    for _ in 0..500 {
        let x = rand_nonzero_ratfunc(&mut r, 5, 9);
        assert_eq!(sum_deg_ord(&x), 0, "{x}");
    }
}


#[test]
fn ff_height_three_ways_and_scaling() {
    let mut r = rng(26);
    let q = CoefField::Rationals;
    for _ in 0..200 {
        let n = r.gen_range(1..=3);
        let xs: Vec<QRatFunc> = (0..=n).map(|_| rand_ratfunc(&mut r, 4, 6)).collect();
        let Ok(p) = ProjPointFF::new(&xs) else { continue };
        let h = h_proj_ff(&p);
        assert_eq!(h, h_proj_ff_by_places(&xs, &q).unwrap());
        assert_eq!(h, max_degree_height(&xs));
        let lambda = rand_nonzero_ratfunc(&mut r, 3, 6);
        let scaled: Vec<QRatFunc> = xs.iter().map(|x| x.clone() * lambda.clone()).collect();
        assert_eq!(h_proj_ff(&ProjPointFF::new(&scaled).unwrap()), h);
    }
}

#[test]
fn weil_lambda_nonnegative_at_finite_places() {
    let mut r = rng(27);
    let places = [qpoly(&[0, 1]), qpoly(&[-1, 1]), qpoly(&[1, 1]), qpoly(&[1, 0, 1]), qpoly(&[-2, 0, 1])];
    let mut checked = 0;
    while checked < 500 {
        let n = r.gen_range(1..=2);
        let polys: Vec<UPoly<Rat>> = (0..=n).map(|_| rand_upoly_upto(&mut r, 3, 4)).collect();
        let pt = ProjPointFF::from_polys(polys);
        let form = LinearForm::new((0..=n).map(|_| QRatFunc::constant(rat(r.gen_range(-3..=3)))).collect());
        if form.is_zero() {
            continue;
        }
        let p = FFPlace::Finite(places[r.gen_range(0..places.len())].clone());
        match weil_lambda(&form, &p, &pt) {
            Ok(l) => {
                assert!(l >= 0, "{pt} {form}");
                checked += 1;
            }
            Err(heightlab::Error::PointOnHyperplane) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn t_integers_form_a_ring() {
    let mut r = rng(28);
    let t = PlaceSet::new(vec![qpoly(&[0, 1]), qpoly(&[-1, 1])], true);
    let den_choices = [qpoly(&[1]), qpoly(&[0, 1]), qpoly(&[0, -1, 1]), qpoly(&[1, 1]), qpoly(&[0, 0, 1])];
    let mut integral_pairs = 0;
    for _ in 0..300 {
        let draw = |r: &mut rand_chacha::ChaCha8Rng| {
            let num = rand_upoly_upto(r, 4, 5);
            let den = den_choices[r.gen_range(0..den_choices.len())].clone();
            RatFunc::new(num, den).unwrap()
        };
        let (x, y) = (draw(&mut r), draw(&mut r));
        if is_t_integral(&x, &t) && is_t_integral(&y, &t) {
            integral_pairs += 1;
            assert!(is_t_integral(&(x.clone() + y.clone()), &t));
            assert!(is_t_integral(&(x * y), &t));
        }
    }
    assert!(integral_pairs > 100);
}
