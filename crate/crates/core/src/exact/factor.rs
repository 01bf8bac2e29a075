//! Factorization of univariate polynomials over the rationals.
//!
//! Square-free decomposition first, then each square-free primitive integer
//! part is factored modulo a small prime, Hensel-lifted along a binary
//! factor tree and recombined by trial division over the integers.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, PolyP};
use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::scalar::{Int, Rat};

#[derive(Clone, Copy, Debug)]
pub struct FactorConfig {
    pub degree_cap: usize,
    /// Maximum bit length of any integer coefficient of the primitive input.
    pub coeff_bit_cap: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            degree_cap: 32,
            coeff_bit_cap: 2048,
        }
    }
}

/// `content * prod(factor^mult)` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub content: Rat,
    pub factors: Vec<(UPoly<Rat>, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> UPoly<Rat> {
        let mut acc = UPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }
}

type ZPoly = Vec<Int>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    ztrim(v)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = Int::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn zadd_scaled(a: &ZPoly, b: &PolyP, scale: &Int) -> ZPoly {
    let n = a.len().max(b.len());
    let z = Int::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + scale * Int::from(*b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

fn zmod(a: &ZPoly, m: &Int) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn to_modp(a: &ZPoly, fp: &Fp) -> PolyP {
    let p = Int::from(fp.p);
    fp.trim(
        a.iter()
            .map(|c| c.mod_floor(&p).to_u64().expect("residue fits"))
            .collect(),
    )
}

fn from_modp(a: &PolyP) -> ZPoly {
    a.iter().map(|&c| Int::from(c)).collect()
}

fn symmetric(c: &Int, m: &Int) -> Int {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn mod_inverse(a: &Int, m: &Int) -> Int {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `f = g0 h0 (mod p)` with `g0` monic to `f = g h (mod p^k)`.
fn hensel_pair(f: &ZPoly, g0: &PolyP, h0: &PolyP, fp: &Fp, k: u32) -> (ZPoly, ZPoly) {
    let p = Int::from(fp.p);
    let (_, s, t) = fp.ext_gcd(g0, h0);
    let mut g = from_modp(g0);
    let mut h = from_modp(h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let diff = zsub(f, &zmul(&g, &h));
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let e = to_modp(&e, fp);
        let te = fp.mul_poly(&t, &e);
        let (q, r) = fp.div_rem(&te, g0);
        let dh = fp.add_poly(&fp.mul_poly(&s, &e), &fp.mul_poly(&q, h0));
        g = zadd_scaled(&g, &r, &pj);
        h = zadd_scaled(&h, &dh, &pj);
        pj *= &p;
    }
    (zmod(&g, &pj), zmod(&h, &pj))
}

/// Lifts the monic modular factors of `f` to monic factors modulo `p^k`.
fn hensel_tree(f: &ZPoly, factors: &[PolyP], fp: &Fp, k: u32) -> Vec<ZPoly> {
    let m = Int::from(fp.p).pow(k);
    if factors.len() == 1 {
        let inv = mod_inverse(f.last().unwrap(), &m);
        return vec![zmod(&f.iter().map(|c| c * &inv).collect(), &m)];
    }
    let (a, b) = factors.split_at(factors.len() / 2);
    let g0 = a.iter().fold(vec![1u64], |acc, x| fp.mul_poly(&acc, x));
    let lc = to_modp(&vec![f.last().unwrap().clone()], fp);
    let h0 = b.iter().fold(lc, |acc, x| fp.mul_poly(&acc, x));
    let (g, h) = hensel_pair(f, &g0, &h0, fp, k);
    let mut out = hensel_tree(&g, a, fp, k);
    out.extend(hensel_tree(&h, b, fp, k));
    out
}

fn zpoly_to_upoly(a: &ZPoly) -> UPoly<Rat> {
    UPoly::new(a.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn content_int(a: &ZPoly) -> Int {
    a.iter().fold(Int::zero(), |g, c| g.gcd(c))
}

fn primitive_int(a: &ZPoly) -> ZPoly {
    let c = content_int(a);
    let sign = if a.last().is_some_and(|l| l.is_negative()) {
        -Int::one()
    } else {
        Int::one()
    };
    a.iter().map(|x| x / &c * &sign).collect()
}

/// Primitive integer polynomial with positive leading coefficient that is a
/// rational multiple of `a`, together with that multiple: `a = c * prim`.
pub fn primitive_integer_part(a: &UPoly<Rat>) -> (Rat, Vec<Int>) {
    if a.is_zero() {
        return (Rat::zero(), Vec::new());
    }
    let den = a
        .coeffs()
        .iter()
        .fold(Int::one(), |l, c| l.lcm(c.denom()));
    let ints: ZPoly = a
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let prim = primitive_int(&ints);
    let c = a.lc() / Rat::from_integer(prim.last().unwrap().clone());
    (c, prim)
}

fn exact_zdiv(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let q = zpoly_to_upoly(a).div_exact(&zpoly_to_upoly(b))?;
    q.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn sqrt_ceil(n: &Int) -> Int {
    let r = n.sqrt();
    if &(&r * &r) < n {
        r + 1
    } else {
        r
    }
}

/// Factors a primitive square-free integer polynomial of degree >= 1 into
/// primitive irreducibles with positive leading coefficients.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![primitive_int(f)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let lc = f.last().unwrap().clone();
    // Pick, among the first few admissible primes, one with fewest factors.
    let mut best: Option<(Fp, Vec<PolyP>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter().chain([101u64, 103, 107, 109, 113, 127, 131, 137].iter()) {
        let fp = Fp::new(p);
        if (&lc % Int::from(p)).is_zero() {
            continue;
        }
        let fbar = to_modp(f, &fp);
        let g = fp.gcd(&fbar, &fp.derivative(&fbar));
        if Fp::deg(&g) > 0 {
            continue;
        }
        let fs = fp.factor_squarefree(&fp.monic(&fbar), &mut rng);
        if fs.len() == 1 {
            return vec![primitive_int(f)];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((fp, fs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (fp, modular) = best.expect("some prime keeps a square-free polynomial square-free");

    let norm2: Int = f.iter().map(|c| c * c).sum();
    let bound = (Int::one() << n) * sqrt_ceil(&norm2) * lc.abs() * 2;
    let p = Int::from(fp.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let mut lifted = hensel_tree(f, &modular, &fp, k);

    let mut found = Vec::new();
    let mut rest = f.clone();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut hit = None;
        for subset in subsets(lifted.len(), s) {
            let lc_rest = rest.last().unwrap().clone();
            let mut g = vec![lc_rest.clone()];
            for &i in &subset {
                g = zmod(&zmul(&g, &lifted[i]), &pk);
            }
            let g: ZPoly = ztrim(g.iter().map(|c| symmetric(c, &pk)).collect());
            let g = primitive_int(&g);
            if let Some(q) = exact_zdiv(&rest, &g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                found.push(g);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, x)| x)
                    .collect();
            }
            None => s += 1,
        }
    }
    if rest.len() > 1 {
        found.push(primitive_int(&rest));
    }
    found
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn factor_order(a: &UPoly<Rat>, b: &UPoly<Rat>) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| {
            a.coeffs()
                .iter()
                .rev()
                .cmp(b.coeffs().iter().rev())
        })
}

/// Factors `a` over the rationals into monic irreducibles.
pub fn factor_q(a: &UPoly<Rat>) -> Result<Factorization> {
    factor_q_with(a, FactorConfig::default())
}

pub fn factor_q_with(a: &UPoly<Rat>, cfg: FactorConfig) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.deg() > cfg.degree_cap {
        return Err(Error::DegreeCap {
            degree: a.deg(),
            cap: cfg.degree_cap,
        });
    }
    let (_, prim) = primitive_integer_part(a);
    if prim.iter().any(|c| c.bits() > cfg.coeff_bit_cap) {
        return Err(Error::InvalidInput(format!(
            "coefficient exceeds {} bits",
            cfg.coeff_bit_cap
        )));
    }
    let mut factors = Vec::new();
    for (part, mult) in a.squarefree_decomposition() {
        let (_, zp) = primitive_integer_part(&part);
        for g in zassenhaus(&zp) {
            factors.push((zpoly_to_upoly(&g).monic(), mult));
        }
    }
    factors.sort_by(|x, y| factor_order(&x.0, &y.0));
    Ok(Factorization {
        content: a.lc(),
        factors,
    })
}

/// Distinct irreducible factors as primitive integer polynomials with
/// positive leading coefficient, with multiplicities.
pub fn factor_primitive_integer(a: &UPoly<Rat>) -> Result<Vec<(UPoly<Rat>, usize)>> {
    Ok(factor_q(a)?
        .factors
        .into_iter()
        .map(|(f, m)| (zpoly_to_upoly(&primitive_integer_part(&f).1), m))
        .collect())
}

pub fn is_irreducible_q(a: &UPoly<Rat>) -> Result<bool> {
    if a.is_constant() {
        return Ok(false);
    }
    let f = factor_q(a)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}
