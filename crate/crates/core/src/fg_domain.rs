//! Finitely generated domains `B = A₀[f⁻¹, y]` with `A₀ = ℤ[z₁, …, z_q]`,
//! elements in the normal form `α = Q⁻¹ Σ_j P_j yʲ`, the degree and height
//! functions on them, and their embeddings into one-variable function fields.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::integer::prime_support;
use crate::exact::mpoly::bareiss_det;
use crate::exact::{factor_q, Frac, MPoly, UPoly};
use crate::heights_ff::RatFunc;
use crate::heights_nf::{q_abs, LogHeight, QPlace};
use crate::scalar::{Int, Rat};

/// The data `(q, d, G, f)`. `G` lives in `q + 1` variables, the last one
/// being `x`; it is monic in `x` of degree `d` with integer coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainPresentation {
    q: usize,
    d: usize,
    g: MPoly,
    f: MPoly,
    names: Vec<String>,
}

impl DomainPresentation {
    pub fn new(q: usize, d: usize, g: MPoly, f: MPoly, names: Vec<String>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("d must be at least 1".into()));
        }
        if names.len() != q {
            return Err(Error::InvalidInput(format!(
                "expected {q} generator names, got {}",
                names.len()
            )));
        }
        if g.nvars() != q + 1 || f.nvars() != q {
            return Err(Error::InvalidInput("G needs q+1 variables and f needs q".into()));
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("f must be nonzero".into()));
        }
        if !f.has_integer_coeffs() || !g.has_integer_coeffs() {
            return Err(Error::InvalidInput("G and f must have integer coefficients".into()));
        }
        if g.degree_in(q) as usize != d || !g.lc_in(q).is_one() {
            return Err(Error::InvalidInput(format!("G must be monic of degree {d} in x")));
        }
        if d == 1 && g != &MPoly::var(q + 1, q) - &MPoly::one(q + 1) {
            return Err(Error::InvalidInput("for d = 1, G must be x - 1".into()));
        }
        Ok(DomainPresentation { q, d, g, f, names })
    }

    /// `ℤ[z₁, …, z_q][1/f]` with `d = 1`.
    pub fn localization(f: MPoly, names: Vec<String>) -> Result<Self> {
        let q = f.nvars();
        let g = &MPoly::var(q + 1, q) - &MPoly::one(q + 1);
        DomainPresentation::new(q, 1, g, f, names)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn g(&self) -> &MPoly {
        &self.g
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Coefficients `G_0, …, G_d` of `G` in `x`, as polynomials in `z`.
    pub fn g_coeffs(&self) -> Vec<MPoly> {
        // x has exponent zero in every coefficient; send it anywhere
        let map: Vec<usize> = (0..self.q).chain(std::iter::once(0)).collect();
        let mut out: Vec<MPoly> = self
            .g
            .coeffs_in(self.q)
            .iter()
            .map(|c| c.remap(self.q, &map))
            .collect();
        out.resize(self.d + 1, MPoly::zero(self.q));
        out
    }

    /// `G` specialized at `z = u`, as a polynomial in `x`.
    pub fn g_at(&self, u: &[Rat]) -> UPoly<Rat> {
        UPoly::new(self.g_coeffs().iter().map(|c| c.eval(u)).collect())
    }
}

/// Result of the optional irreducibility screen on `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    /// `G(u)` is irreducible over ℚ at the recorded point; since `G` is monic
    /// in `x`, any factorization over `L₀` would survive specialization.
    Proved { at: Vec<i64> },
    /// Every tried specialization factored.
    NotDisproved { tried: Vec<Vec<i64>> },
}

/// Specializes `z` at three random integer points and factors `G(u)`.
pub fn validate_irreducible(pres: &DomainPresentation, seed: u64) -> Result<IrreducibilityVerdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried = Vec::new();
    for _ in 0..3 {
        let u: Vec<i64> = (0..pres.q).map(|_| rng.gen_range(-20..=20)).collect();
        let ur: Vec<Rat> = u.iter().map(|&v| Rat::from_integer(v.into())).collect();
        let fac = factor_q(&pres.g_at(&ur))?;
        if fac.factors.len() == 1 && fac.factors[0].1 == 1 {
            return Ok(IrreducibilityVerdict::Proved { at: u });
        }
        tried.push(u);
    }
    Ok(IrreducibilityVerdict::NotDisproved { tried })
}

/// `α = Q⁻¹ Σ_j P_j yʲ` with `gcd(Q, P_0, …, P_{d−1}) = 1` over ℤ and the
/// graded-lex leading coefficient of `Q` positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomainElem {
    q: MPoly,
    p: Vec<MPoly>,
}

impl DomainElem {
    pub fn den(&self) -> &MPoly {
        &self.q
    }

    pub fn nums(&self) -> &[MPoly] {
        &self.p
    }

    pub fn nvars(&self) -> usize {
        self.q.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.p.iter().all(MPoly::is_zero)
    }

    pub fn zero(pres: &DomainPresentation) -> Self {
        DomainElem {
            q: MPoly::one(pres.q),
            p: vec![MPoly::zero(pres.q); pres.d],
        }
    }

    pub fn one(pres: &DomainPresentation) -> Self {
        DomainElem::from_poly(pres, MPoly::one(pres.q))
    }

    pub fn from_poly(pres: &DomainPresentation, p: MPoly) -> Self {
        let mut nums = vec![MPoly::zero(pres.q); pres.d];
        nums[0] = p;
        elem_normalize(MPoly::one(pres.q), nums).expect("nonzero denominator")
    }

    pub fn from_rat(pres: &DomainPresentation, c: &Rat) -> Self {
        DomainElem::from_poly(pres, MPoly::constant(pres.q, c.clone()))
    }

    /// `num / den` for `d = 1` presentations.
    pub fn fraction(pres: &DomainPresentation, num: MPoly, den: MPoly) -> Result<Self> {
        if pres.d != 1 {
            return Err(Error::UnsupportedDegree(pres.d));
        }
        elem_normalize(den, vec![num])
    }

    /// The generator `y` (requires `d ≥ 2`).
    pub fn y(pres: &DomainPresentation) -> Result<Self> {
        if pres.d < 2 {
            return Err(Error::UnsupportedDegree(pres.d));
        }
        let mut nums = vec![MPoly::zero(pres.q); pres.d];
        nums[1] = MPoly::one(pres.q);
        elem_normalize(MPoly::one(pres.q), nums)
    }

    /// `(Σ P_j(u) yʲ) / Q(u)` for a supplied value of `y`; `None` when
    /// `Q(u) = 0`.
    pub fn eval_with<K: crate::Field>(&self, u: &[K], y: &K) -> Option<K> {
        let den = self.q.eval_in(u);
        if den.is_zero() {
            return None;
        }
        let mut acc = K::zero();
        for pj in self.p.iter().rev() {
            acc = acc * y.clone() + pj.eval_in(u);
        }
        Some(acc / den)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let num = match self.p.len() {
            1 => self.p[0].display_with(names),
            _ => {
                let parts: Vec<String> = self
                    .p
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| match j {
                        0 => format!("({})", c.display_with(names)),
                        1 => format!("({})*y", c.display_with(names)),
                        _ => format!("({})*y^{j}", c.display_with(names)),
                    })
                    .collect();
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ")
                }
            }
        };
        if self.q.is_one() {
            num
        } else {
            format!("({num})/({})", self.q.display_with(names))
        }
    }
}

impl fmt::Display for DomainElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("z{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

/// Removes the common factor of `(Q, P_0, …)` including integer content and
/// fixes the sign.
pub fn elem_normalize(raw_q: MPoly, raw_p: Vec<MPoly>) -> Result<DomainElem> {
    if raw_q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let n = raw_q.nvars();
    if raw_p.iter().any(|p| p.nvars() != n) {
        return Err(Error::InvalidInput("numerators and denominator differ in arity".into()));
    }
    if raw_p.iter().all(MPoly::is_zero) {
        return Ok(DomainElem {
            q: MPoly::one(n),
            p: vec![MPoly::zero(n); raw_p.len()],
        });
    }
    let mut g = raw_q.primitive_part();
    for p in &raw_p {
        if g.is_one() {
            break;
        }
        g = MPoly::gcd(&g, p);
    }
    let mut q = raw_q.div_exact(&g).expect("gcd divides");
    let mut p: Vec<MPoly> = raw_p
        .iter()
        .map(|x| x.div_exact(&g).expect("gcd divides"))
        .collect();
    let mut num = Int::zero();
    let mut den = Int::one();
    for x in std::iter::once(&q).chain(p.iter()).filter(|x| !x.is_zero()) {
        let c = x.rational_content().abs();
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    let mut c = Rat::new(num, den);
    if q.lc().is_negative() {
        c = -c;
    }
    let inv = c.recip();
    q = q.scale(&inv);
    for x in &mut p {
        *x = x.scale(&inv);
    }
    Ok(DomainElem { q, p })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
}

/// Field arithmetic in `L` on the basis `1, y, …, y^{d−1}`. `b` is ignored for
/// [`ArithOp::Inv`].
pub fn elem_arith(pres: &DomainPresentation, a: &DomainElem, b: &DomainElem, op: ArithOp) -> Result<DomainElem> {
    match op {
        ArithOp::Add => elem_add(a, b),
        ArithOp::Sub => elem_add(a, &elem_neg(b)),
        ArithOp::Mul => elem_mul(pres, a, b),
        ArithOp::Inv => elem_inv(pres, a),
    }
}

pub fn elem_neg(a: &DomainElem) -> DomainElem {
    DomainElem {
        q: a.q.clone(),
        p: a.p.iter().map(|x| -x).collect(),
    }
}

pub fn elem_add(a: &DomainElem, b: &DomainElem) -> Result<DomainElem> {
    if a.q == b.q {
        let p = a.p.iter().zip(&b.p).map(|(x, y)| x + y).collect();
        return elem_normalize(a.q.clone(), p);
    }
    let p = a
        .p
        .iter()
        .zip(&b.p)
        .map(|(x, y)| &(x * &b.q) + &(y * &a.q))
        .collect();
    elem_normalize(&a.q * &b.q, p)
}

/// Product of two coefficient vectors in `A₀[y]`, reduced by the monic `G`.
fn mul_reduce(pres: &DomainPresentation, a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let d = pres.d;
    let mut prod = vec![MPoly::zero(pres.q); 2 * d - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            prod[i + j] = &prod[i + j] + &(x * y);
        }
    }
    if d > 1 {
        let gc = pres.g_coeffs();
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[k], MPoly::zero(pres.q));
            if c.is_zero() {
                continue;
            }
            for (i, gi) in gc.iter().enumerate().take(d) {
                prod[k - d + i] = &prod[k - d + i] - &(&c * gi);
            }
        }
    }
    prod.truncate(d);
    prod
}

pub fn elem_mul(pres: &DomainPresentation, a: &DomainElem, b: &DomainElem) -> Result<DomainElem> {
    elem_normalize(&a.q * &b.q, mul_reduce(pres, &a.p, &b.p))
}

/// Solves `P · β = Q` for `β` by Cramer's rule on the multiplication matrix.
pub fn elem_inv(pres: &DomainPresentation, a: &DomainElem) -> Result<DomainElem> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let d = pres.d;
    if d == 1 {
        return elem_normalize(a.p[0].clone(), vec![a.q.clone()]);
    }
    let cols: Vec<Vec<MPoly>> = (0..d)
        .map(|j| {
            let mut yj = vec![MPoly::zero(pres.q); d];
            yj[j] = MPoly::one(pres.q);
            mul_reduce(pres, &a.p, &yj)
        })
        .collect();
    let matrix = |replace: Option<usize>| -> Vec<Vec<MPoly>> {
        (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| match replace {
                        Some(j) if j == c => {
                            if r == 0 {
                                a.q.clone()
                            } else {
                                MPoly::zero(pres.q)
                            }
                        }
                        _ => cols[c][r].clone(),
                    })
                    .collect()
            })
            .collect()
    };
    let det = bareiss_det(matrix(None), pres.q);
    if det.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let nums = (0..d).map(|j| bareiss_det(matrix(Some(j)), pres.q)).collect();
    elem_normalize(det, nums)
}

fn nonzero_polys(a: &DomainElem) -> impl Iterator<Item = &MPoly> {
    std::iter::once(&a.q).chain(a.p.iter().filter(|x| !x.is_zero()))
}

/// `max{deg P_j, deg Q}` with total degrees.
pub fn deg_bar(a: &DomainElem) -> Result<u32> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(nonzero_polys(a).map(MPoly::total_degree).max().unwrap_or(0))
}

/// `h^{aff}(g) = Σ_p log max(1, max_μ |c_μ|_p)`, summed place by place.
pub fn h_aff(g: &MPoly) -> Result<LogHeight> {
    if g.is_zero() {
        return Ok(LogHeight::zero());
    }
    let coeffs: Vec<Rat> = g.terms().map(|(_, c)| c.clone()).collect();
    let den_lcm = coeffs.iter().fold(Int::one(), |l, c| l.lcm(c.denom()));
    let mut places = vec![QPlace::Infinite];
    if !den_lcm.is_one() {
        for p in prime_support(&den_lcm)? {
            places.push(QPlace::Finite(p));
        }
    }
    let mut prod = Rat::one();
    for v in &places {
        let m = coeffs
            .iter()
            .map(|c| q_abs(c, v))
            .fold(Rat::one(), |m, x| if x > m { x } else { m });
        prod *= m;
    }
    Ok(LogHeight::log_of(prod))
}

/// `max{h^{aff}(P_j), h^{aff}(Q)}` on the canonical representative.
pub fn h_bar(a: &DomainElem) -> Result<LogHeight> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut best = LogHeight::zero();
    for g in nonzero_polys(a) {
        best = best.max(h_aff(g)?);
    }
    Ok(best)
}

/// Every monomial exponent in `nvars` variables with total degree ≤ `deg`.
fn monomials_upto(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=deg - used {
                let mut e2 = e.clone();
                e2.push(k);
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

/// All integer polynomials on `monos` with coefficients in `[-ht, ht]`.
fn coefficient_box(nvars: usize, monos: &[Vec<u32>], ht: i64) -> Vec<MPoly> {
    let width = (2 * ht + 1) as usize;
    let total = width.pow(monos.len() as u32);
    (0..total)
        .map(|mut idx| {
            let terms: Vec<(Vec<u32>, Rat)> = monos
                .iter()
                .map(|m| {
                    let c = (idx % width) as i64 - ht;
                    idx /= width;
                    (m.clone(), Rat::from_integer(c.into()))
                })
                .collect();
            MPoly::from_terms(nvars, terms)
        })
        .collect()
}

/// The canonical elements with `deḡ ≤ deg_b` and `h̄ ≤ log ht_b`, zero included.
pub fn northcott_enumerate_domain(pres: &DomainPresentation, deg_b: u32, ht_b: u64) -> Result<Vec<DomainElem>> {
    if pres.d != 1 {
        return Err(Error::UnsupportedDegree(pres.d));
    }
    if ht_b == 0 {
        return Ok(Vec::new());
    }
    let ht = i64::try_from(ht_b).map_err(|_| Error::InvalidInput("height bound too large".into()))?;
    let monos = monomials_upto(pres.q, deg_b);
    let polys = coefficient_box(pres.q, &monos, ht);
    let mut out = vec![DomainElem::zero(pres)];
    for q in polys.iter().filter(|q| !q.is_zero() && q.lc().is_positive()) {
        for p in polys.iter().filter(|p| !p.is_zero()) {
            let joint = q.int_content().gcd(&p.int_content());
            if !joint.is_one() {
                continue;
            }
            let e = elem_normalize(q.clone(), vec![p.clone()])?;
            if &e.q == q && &e.p[0] == p {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// The function-field embedding `φ_{i,j}` (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingSpec {
    pub i: usize,
    pub j: usize,
}

/// `α` as a rational function in `z_i` over `ℚ(z₁, …, ẑ_i, …, z_q)`.
pub fn ff_embed(pres: &DomainPresentation, a: &DomainElem, e: EmbeddingSpec) -> Result<RatFunc<Frac>> {
    if pres.d != 1 {
        return Err(Error::UnsupportedExtension(format!(
            "degree {} extension without a rational parametrization",
            pres.d
        )));
    }
    if e.i >= pres.q || e.j >= pres.d {
        return Err(Error::InvalidInput(format!("embedding index ({}, {}) out of range", e.i, e.j)));
    }
    let lift = |p: &MPoly| UPoly::new(p.coeffs_in(e.i).into_iter().map(Frac::from_poly).collect());
    RatFunc::new(lift(&a.p[0]), lift(&a.q))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EgCheck {
    pub lhs: u32,
    pub rhs: Rat,
    pub holds: bool,
}

/// `deḡ(α) ≤ C + Σ_i h_{F_i}(α)` for `d = 1`.
pub fn eg_inequality_check(pres: &DomainPresentation, a: &DomainElem, c: &Rat) -> Result<EgCheck> {
    if pres.d != 1 {
        return Err(Error::UnsupportedDegree(pres.d));
    }
    let lhs = deg_bar(a)?;
    let mut rhs = c.clone();
    for i in 0..pres.q {
        let h = ff_embed(pres, a, EmbeddingSpec { i, j: 0 })?.height();
        rhs += Rat::from_integer(h.into());
    }
    let holds = Rat::from_integer(lhs.into()) <= rhs;
    Ok(EgCheck { lhs, rhs, holds })
}
