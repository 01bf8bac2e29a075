#![allow(dead_code)]

use std::collections::BTreeSet;

use heightlab::exact::factor::primitive_integer_part;
use heightlab::exact::{factor_q, qpoly};
use heightlab::fg_domain::{deg_bar, elem_normalize, DomainElem, DomainPresentation};
use heightlab::heights_ff::QRatFunc;
use heightlab::scalar::{rat, ratio};
use heightlab::{Int, MPoly, Rat, UPoly};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    loop {
        let v = r.gen_range(lo..=hi);
        if v != 0 {
            return v;
        }
    }
}

pub fn rand_rat(r: &mut ChaCha8Rng, bound: i64) -> Rat {
    ratio(r.gen_range(-bound..=bound), nonzero(r, 1, bound))
}

pub fn rand_nonzero_rat(r: &mut ChaCha8Rng, bound: i64) -> Rat {
    ratio(nonzero(r, -bound, bound), nonzero(r, 1, bound))
}

/// Integer polynomial of exact degree `deg` with coefficients in [-c, c].
pub fn rand_upoly(r: &mut ChaCha8Rng, deg: usize, c: i64) -> UPoly<Rat> {
    let mut cs: Vec<i64> = (0..=deg).map(|_| r.gen_range(-c..=c)).collect();
    cs[deg] = nonzero(r, -c, c);
    qpoly(&cs)
}

pub fn rand_upoly_upto(r: &mut ChaCha8Rng, max_deg: usize, c: i64) -> UPoly<Rat> {
    let d = r.gen_range(0..=max_deg);
    rand_upoly(r, d, c)
}

pub fn rand_ratfunc(r: &mut ChaCha8Rng, max_deg: usize, c: i64) -> QRatFunc {
    let n = rand_upoly_upto(r, max_deg, c);
    let d = rand_upoly_upto(r, max_deg, c);
    QRatFunc::new(n, d).expect("nonzero denominator")
}

pub fn rand_nonzero_ratfunc(r: &mut ChaCha8Rng, max_deg: usize, c: i64) -> QRatFunc {
    loop {
        let x = rand_ratfunc(r, max_deg, c);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Integer polynomial in `nvars` variables, total degree at most `deg`, up to `terms` terms.
pub fn rand_mpoly(r: &mut ChaCha8Rng, nvars: usize, deg: u32, terms: usize, c: i64) -> MPoly {
    let ts: Vec<(Vec<u32>, Rat)> = (0..terms)
        .map(|_| {
            let mut e = vec![0u32; nvars];
            let mut left = r.gen_range(0..=deg);
            for slot in e.iter_mut() {
                let k = r.gen_range(0..=left);
                *slot = k;
                left -= k;
            }
            (e, rat(r.gen_range(-c..=c)))
        })
        .collect();
    MPoly::from_terms(nvars, ts)
}

pub fn rand_nonzero_mpoly(r: &mut ChaCha8Rng, nvars: usize, deg: u32, terms: usize, c: i64) -> MPoly {
    loop {
        let p = rand_mpoly(r, nvars, deg, terms, c);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn names(q: usize) -> Vec<String> {
    (1..=q).map(|i| format!("z{i}")).collect()
}

/// Primitive integer tuples in `[-B, B]^{n+1}` with first nonzero entry positive.
pub fn brute_force_proj_q(n: usize, b: i64) -> BTreeSet<Vec<Int>> {
    let mut out = BTreeSet::new();
    let total = (2 * b + 1).pow(n as u32 + 1);
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..=n)
            .map(|_| {
                let d = c % (2 * b + 1) - b;
                c /= 2 * b + 1;
                d
            })
            .collect();
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        let first = v.iter().find(|x| **x != 0);
        if g == 1 && first.is_some_and(|f| *f > 0) {
            out.insert(v.into_iter().map(Int::from).collect());
        }
    }
    out
}

/// Max degree over the coprime polynomial representative, computed directly.
pub fn max_degree_height(xs: &[QRatFunc]) -> u64 {
    let mut l = UPoly::<Rat>::one();
    for x in xs {
        let g = UPoly::gcd(&l, x.den());
        l = (&l * x.den()).div_exact(&g).unwrap();
    }
    let polys: Vec<UPoly<Rat>> = xs
        .iter()
        .map(|x| (&(x.num() * &l)).div_exact(x.den()).unwrap())
        .collect();
    let g = polys.iter().fold(UPoly::zero(), |g, p| UPoly::gcd(&g, p));
    polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.div_exact(&g).unwrap().deg() as u64)
        .max()
        .unwrap()
}

/// `Σ_i max(deg_{z_i} P, deg_{z_i} Q)` read off the canonical representative.
pub fn per_variable_degrees(e: &DomainElem) -> u32 {
    (0..e.nvars())
        .map(|i| e.den().degree_in(i).max(e.nums()[0].degree_in(i)))
        .sum()
}

/// All `P/Q` with coefficients in `[-B, B]` on monomials of degree ≤ `deg`,
/// canonicalized, filtered on the canonical form's degree and max coefficient.
pub fn brute_force_domain(pres: &DomainPresentation, deg: u32, b: i64) -> BTreeSet<String> {
    let q = pres.q();
    let mut monos = Vec::new();
    for code in 0..(deg as usize + 1).pow(q as u32) {
        let mut c = code;
        let e: Vec<u32> = (0..q)
            .map(|_| {
                let x = (c % (deg as usize + 1)) as u32;
                c /= deg as usize + 1;
                x
            })
            .collect();
        if e.iter().sum::<u32>() <= deg {
            monos.push(e);
        }
    }
    let w = (2 * b + 1) as usize;
    let polys: Vec<MPoly> = (0..w.pow(monos.len() as u32))
        .map(|mut code| {
            let ts = monos.iter().map(|m| {
                let c = (code % w) as i64 - b;
                code /= w;
                (m.clone(), rat(c))
            });
            MPoly::from_terms(q, ts.collect::<Vec<_>>())
        })
        .collect();
    let small = |p: &MPoly| p.terms().all(|(_, c)| c.abs() <= rat(b));
    let mut out = BTreeSet::new();
    out.insert(DomainElem::zero(pres).to_string());
    for den in polys.iter().filter(|p| !p.is_zero()) {
        for num in polys.iter().filter(|p| !p.is_zero()) {
            let e = elem_normalize(den.clone(), vec![num.clone()]).unwrap();
            if deg_bar(&e).unwrap() <= deg && small(e.den()) && small(&e.nums()[0]) {
                out.insert(e.to_string());
            }
        }
    }
    out
}

/// `x = ±∏ g^{a}` over the primitive factors `gens`, by direct division.
pub fn unit_exponents(x: &QRatFunc, gens: &[UPoly<Rat>]) -> Option<Vec<i64>> {
    if x.is_zero() {
        return None;
    }
    let (cn, n) = primitive_integer_part(x.num());
    let (cd, d) = primitive_integer_part(x.den());
    if (cn / cd).abs() != Rat::one() {
        return None;
    }
    let to_poly = |v: Vec<heightlab::Int>| UPoly::new(v.into_iter().map(Rat::from_integer).collect());
    let (mut n, mut d) = (to_poly(n), to_poly(d));
    let mut exps = Vec::new();
    for g in gens {
        let mut a = 0i64;
        while let Some(q) = n.div_exact(g) {
            n = q;
            a += 1;
        }
        while let Some(q) = d.div_exact(g) {
            d = q;
            a -= 1;
        }
        exps.push(a);
    }
    (n.is_constant() && d.is_constant()).then_some(exps)
}

pub fn primitive_factors(f: &UPoly<Rat>) -> Vec<UPoly<Rat>> {
    factor_q(f)
        .unwrap()
        .factors
        .into_iter()
        .map(|(g, _)| {
            let (_, p) = primitive_integer_part(&g);
            UPoly::new(p.into_iter().map(Rat::from_integer).collect())
        })
        .collect()
}

pub fn power(gens: &[UPoly<Rat>], sign: i64, exps: &[i64]) -> QRatFunc {
    let mut x = QRatFunc::constant(Rat::from_integer(sign.into()));
    for (g, &a) in gens.iter().zip(exps) {
        x = x * QRatFunc::from_poly(g.clone()).pow(a);
    }
    x
}

/// Every `u = ±∏ g^a` with `|a_i| ≤ r` and `1 − u` a unit.
pub fn brute_force_units(f: &UPoly<Rat>, r: i64) -> BTreeSet<String> {
    let gens = primitive_factors(f);
    let mut out = BTreeSet::new();
    let width = (2 * r + 1) as usize;
    for code in 0..width.pow(gens.len() as u32) {
        let mut c = code;
        let exps: Vec<i64> = (0..gens.len())
            .map(|_| {
                let a = (c % width) as i64 - r;
                c /= width;
                a
            })
            .collect();
        for sign in [1, -1] {
            let u = power(&gens, sign, &exps);
            if unit_exponents(&(QRatFunc::one() - u.clone()), &gens).is_some() {
                out.insert(u.to_string());
            }
        }
    }
    out
}
