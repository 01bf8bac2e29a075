//! Both sides of the function-field Subspace Theorem inequality: sums of
//! Weil functions maximized over linearly independent subsets of a
//! hyperplane collection, the heights they are compared against, the local
//! functions `f_p` on a divisor map, and candidate exceptional subspaces.
//!
//! Nothing here computes the (ineffective) exceptional set or constants; the
//! caller supplies `epsilon`, `C` and `C'` and gets an evaluation.

use std::fmt;

use num_traits::Zero;

use crate::divisor::{ord_along, HypersurfaceDivisor, RRBasis};
use crate::error::{Error, Result};
use crate::exact::linalg::{nullspace, row_space, Echelon};
use crate::exact::UPoly;
use crate::heights_ff::{
    ff_ord, h_proj_ff, is_t_integral, weil_lambda_coords, FFPlace, LinearForm, PlaceSet, ProjPointFF, RatFunc,
};
use crate::scalar::{Field, Rat};

/// Hyperplanes of `P^n` given by linear forms with constant coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct HypCollection<K> {
    n: usize,
    forms: Vec<LinearForm<K>>,
}

impl<K: Field> HypCollection<K> {
    /// Zero forms are rejected; proportional forms are merged, keeping the
    /// first occurrence scaled to leading coefficient one.
    pub fn new(n: usize, forms: Vec<LinearForm<K>>) -> Result<Self> {
        let mut out: Vec<LinearForm<K>> = Vec::new();
        for f in forms {
            if f.coeffs.len() != n + 1 {
                return Err(Error::InvalidInput(format!("form must have {} coefficients", n + 1)));
            }
            if f.is_zero() {
                return Err(Error::InvalidInput("zero linear form".into()));
            }
            let lead = f.coeffs.iter().find(|c| !c.is_zero()).expect("nonzero").inv();
            let f = LinearForm::new(f.coeffs.iter().map(|c| c.clone() * lead.clone()).collect());
            if !out.contains(&f) {
                out.push(f);
            }
        }
        Ok(HypCollection { n, forms: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forms(&self) -> &[LinearForm<K>] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    fn lifted(&self) -> Vec<LinearForm<RatFunc<K>>> {
        self.forms.iter().map(|f| f.map(|c| RatFunc::constant(c.clone()))).collect()
    }
}

/// Maximum of `sum_{i in I} w_i` over subsets `I` whose forms are linearly
/// independent. The independent sets form a matroid and the weights are
/// nonnegative, so the greedy basis is optimal.
fn max_independent<K: Field>(forms: &[LinearForm<K>], weights: &[i64]) -> i64 {
    debug_assert!(weights.iter().all(|&w| w >= 0));
    let mut order: Vec<usize> = (0..forms.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(weights[i]));
    let mut ech = Echelon::new();
    let mut total = 0;
    for i in order {
        if ech.try_insert(&forms[i].coeffs) {
            total += weights[i];
        }
    }
    total
}

/// `sum_{p in T} max_I sum_{H in I} lambda_{H,p}(P)` over linearly
/// independent subsets `I` of the collection.
pub fn wang_lhs<K: Field>(p: &ProjPointFF<K>, h: &HypCollection<K>, t: &PlaceSet<K>) -> Result<i64> {
    wang_lhs_coords(&p.rat_coords(), h, t)
}

/// As [`wang_lhs`] for an arbitrary coordinate representative.
pub fn wang_lhs_coords<K: Field>(x: &[RatFunc<K>], h: &HypCollection<K>, t: &PlaceSet<K>) -> Result<i64> {
    let lifted = h.lifted();
    let mut total = 0;
    for place in t.places() {
        let ws: Vec<i64> = lifted
            .iter()
            .map(|f| weil_lambda_coords(f, &place, x))
            .collect::<Result<_>>()?;
        total += max_independent(h.forms(), &ws);
    }
    Ok(total)
}

#[derive(Clone, PartialEq, Debug)]
pub enum Classification {
    /// `h(P) <= C`.
    LowHeight(i64),
    /// `lhs <= (n + 1 + eps) h(P) + C'`.
    SatisfiesBound,
    /// The inequality fails; `P` must lie in the exceptional set if the
    /// supplied constants are valid.
    InYCandidate,
    OnHyperplane,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::LowHeight(c) => write!(f, "LowHeight({c})"),
            Classification::SatisfiesBound => write!(f, "SatisfiesBound"),
            Classification::InYCandidate => write!(f, "InYCandidate"),
            Classification::OnHyperplane => write!(f, "OnHyperplane"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct WangReportRow<K> {
    pub point: ProjPointFF<K>,
    /// `None` when the point lies on a hyperplane of the collection.
    pub lhs: Option<i64>,
    pub height: u64,
    /// `rhs(eps) = (n + 1) h + C' + eps h`, stored as intercept and slope.
    pub rhs_intercept: Rat,
    pub rhs_slope: Rat,
    pub epsilon: Rat,
    pub classification: Classification,
}

impl<K> WangReportRow<K> {
    pub fn rhs(&self) -> Rat {
        &self.rhs_intercept + &self.rhs_slope * &self.epsilon
    }
}

pub fn wang_classify<K: Field>(
    points: &[ProjPointFF<K>],
    h: &HypCollection<K>,
    t: &PlaceSet<K>,
    eps: &Rat,
    c: i64,
    c_prime: i64,
) -> Result<Vec<WangReportRow<K>>> {
    if *eps <= Rat::zero() {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        let height = h_proj_ff(p);
        let hr = Rat::from_integer(height.into());
        let rhs_intercept = Rat::from_integer(((h.n + 1) as i64).into()) * &hr + Rat::from_integer(c_prime.into());
        let lhs = match wang_lhs(p, h, t) {
            Ok(v) => Some(v),
            Err(Error::PointOnHyperplane) => None,
            Err(e) => return Err(e),
        };
        let rhs = &rhs_intercept + &hr * eps;
        let classification = match lhs {
            None => Classification::OnHyperplane,
            Some(_) if height as i64 <= c => Classification::LowHeight(c),
            Some(l) if Rat::from_integer(l.into()) <= rhs => Classification::SatisfiesBound,
            Some(_) => Classification::InYCandidate,
        };
        rows.push(WangReportRow {
            point: p.clone(),
            lhs,
            height,
            rhs_intercept,
            rhs_slope: hr,
            epsilon: eps.clone(),
            classification,
        });
    }
    Ok(rows)
}

/// `phi_i(Q)` for the basis of `L(D)`, with `Q` given by coordinates in `k(t)`.
pub fn phi_values<K: Field>(q: &[RatFunc<K>], basis: &RRBasis) -> Result<Vec<RatFunc<K>>> {
    let den = basis.denominator.eval_in(q);
    if den.is_zero() {
        return Err(Error::IndeterminatePoint);
    }
    Ok(basis.numerators.iter().map(|g| g.eval_in(q) / den.clone()).collect())
}

fn min_ord<K: Field>(xs: &[RatFunc<K>], p: &FFPlace<K>) -> Result<i64> {
    let mut m = i64::MAX;
    for x in xs.iter().filter(|x| !x.is_zero()) {
        m = m.min(ff_ord(x, p)?);
    }
    if m == i64::MAX {
        return Err(Error::IndeterminatePoint);
    }
    Ok(m)
}

/// `f_p(Q) = max_I sum_{H in I} lambda_{H,p}(phi(Q)) + (N + 1 + eps) min_i v_p(phi_i(Q))`
/// where the hyperplanes live in the target `P^N` of `phi`.
pub fn f_p_eval<K: Field>(
    q: &[RatFunc<K>],
    p: &FFPlace<K>,
    basis: &RRBasis,
    h: &HypCollection<K>,
    eps: &Rat,
) -> Result<Rat> {
    if h.n + 1 != basis.dimension() {
        return Err(Error::InvalidInput("hyperplanes must live in the target of the divisor map".into()));
    }
    let phi = phi_values(q, basis)?;
    let m = min_ord(&phi, p)?;
    let ws: Vec<i64> = h
        .lifted()
        .iter()
        .map(|f| weil_lambda_coords(f, p, &phi))
        .collect::<Result<_>>()?;
    let big_n1 = Rat::from_integer((basis.dimension() as i64).into());
    Ok(Rat::from_integer(max_independent(h.forms(), &ws).into()) + (big_n1 + eps) * Rat::from_integer(m.into()))
}

fn all_subsets_max<K: Field>(forms: &[LinearForm<K>], weights: &[i64], max_size: usize) -> i64 {
    let n = forms.len();
    let mut best = 0;
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize > max_size {
            continue;
        }
        let rows: Vec<Vec<K>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| forms[i].coeffs.clone()).collect();
        if crate::exact::linalg::rank(&rows) == rows.len() {
            best = best.max((0..n).filter(|i| mask >> i & 1 == 1).map(|i| weights[i]).sum());
        }
    }
    best
}

/// The same value assembled differently: canonical coordinates `y` of
/// `phi(Q)` and the scale `c` with `phi(Q) = c y`, orders of `H(y)` read off
/// polynomials directly, and an exhaustive search over independent subsets.
pub fn f_p_eval_expanded<K: Field>(
    q: &[RatFunc<K>],
    p: &FFPlace<K>,
    basis: &RRBasis,
    h: &HypCollection<K>,
    eps: &Rat,
) -> Result<Rat> {
    let phi = phi_values(q, basis)?;
    let y = ProjPointFF::new(&phi)?;
    let first = phi.iter().position(|x| !x.is_zero()).expect("nonzero");
    let scale = phi[first].clone() / RatFunc::from_poly(y.coords()[first].clone());
    let ord_poly = |u: &UPoly<K>| -> i64 {
        match p {
            FFPlace::Finite(g) => u.multiplicity(g) as i64,
            FFPlace::Infinite => -(u.deg() as i64),
        }
    };
    let min_y = y.coords().iter().filter(|c| !c.is_zero()).map(ord_poly).min().expect("nonzero");
    let mut ws = Vec::with_capacity(h.len());
    for f in h.forms() {
        let v = f
            .coeffs
            .iter()
            .zip(y.coords())
            .fold(UPoly::zero(), |acc, (c, yi)| &acc + &yi.scale(c));
        if v.is_zero() {
            return Err(Error::PointOnHyperplane);
        }
        ws.push(ord_poly(&v) - min_y);
    }
    let lam = all_subsets_max(h.forms(), &ws, h.n + 1);
    let vc = ff_ord(&scale, p)?;
    let big_n1 = Rat::from_integer((basis.dimension() as i64).into());
    Ok(Rat::from_integer(lam.into()) + (big_n1 + eps) * Rat::from_integer((vc + min_y).into()))
}

/// `eps = 1/M` with `M = max{-ord_E(phi_j)}` over components `E` and basis
/// functions `phi_j`.
pub fn choose_epsilon(d: &HypersurfaceDivisor, basis: &RRBasis) -> Result<Rat> {
    let mut m = i64::MIN;
    for c in d.components() {
        for g in &basis.numerators {
            m = m.max(-ord_along(g, &basis.denominator, &c.form)?);
        }
    }
    if m <= 0 {
        return Err(Error::NoPoles);
    }
    Ok(Rat::new(1.into(), m.into()))
}

/// An element `a` of `O_{F,T}` with `a phi_i(Q)` in `O_{F,T}` for every
/// sample point `Q` and every basis function.
#[derive(Clone, PartialEq, Debug)]
pub struct IntegralScaler<K> {
    pub a: RatFunc<K>,
}

fn strip_t<K: Field>(den: &UPoly<K>, t: &PlaceSet<K>) -> UPoly<K> {
    let mut d = den.clone();
    for p in &t.finite {
        while let Some(q) = d.div_exact(p).filter(|_| !d.is_constant()) {
            d = q;
        }
    }
    d.monic()
}

pub fn integral_scaler<K: Field>(
    samples: &[Vec<RatFunc<K>>],
    basis: &RRBasis,
    t: &PlaceSet<K>,
) -> Result<IntegralScaler<K>> {
    let mut vals = Vec::new();
    for q in samples {
        vals.extend(phi_values(q, basis)?);
    }
    // Denominator parts outside T must be cleared by the numerator of `a`.
    let mut r = UPoly::one();
    for v in &vals {
        let s = strip_t(v.den(), t);
        let g = UPoly::gcd(&r, &s);
        r = (&r * &s).div_exact(&g).expect("lcm");
    }
    let mut a = RatFunc::from_poly(r);
    if !t.infinity {
        let s = t.finite.first().ok_or_else(|| {
            Error::InvalidInput("T has no places; O_{F,T} is the constant field".into())
        })?;
        // Divide by a power of a place in T until nothing has a pole at infinity.
        let sk = RatFunc::from_poly(s.clone());
        loop {
            let worst = std::iter::once(a.clone())
                .chain(vals.iter().map(|v| a.clone() * v.clone()))
                .filter(|x| !x.is_zero())
                .map(|x| x.num().deg() as i64 - x.den().deg() as i64)
                .max()
                .unwrap_or(0);
            if worst <= 0 {
                break;
            }
            a = a / sk.clone();
        }
    }
    let out = IntegralScaler { a };
    if !is_t_integral(&out.a, t) || vals.iter().any(|v| !is_t_integral(&(out.a.clone() * v.clone()), t)) {
        return Err(Error::VerificationFailed("integral scaler failed its membership check".into()));
    }
    Ok(out)
}

/// Both sides of `h(phi(Q)) <= -sum_{p in T} deg(p) (min_i v_p(phi_i(Q)) + v_p(a))`.
pub fn scaled_coordinate_bound<K: Field>(
    q: &[RatFunc<K>],
    basis: &RRBasis,
    t: &PlaceSet<K>,
    scaler: &IntegralScaler<K>,
) -> Result<(u64, i64)> {
    let phi = phi_values(q, basis)?;
    let lhs = h_proj_ff(&ProjPointFF::new(&phi)?);
    let mut rhs = 0i64;
    for p in t.places() {
        rhs -= p.degree() as i64 * (min_ord(&phi, &p)? + ff_ord(&scaler.a, &p)?);
    }
    Ok((lhs, rhs))
}

/// A linear subspace of `K^{n+1}` (a projective subspace of `P^n`) given by
/// the reduced row echelon form of the forms vanishing on it.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<K> {
    pub n: usize,
    pub annihilator: Vec<Vec<K>>,
}

impl<K: Field> Subspace<K> {
    fn from_rows(n: usize, rows: Vec<Vec<K>>) -> Self {
        Subspace { n, annihilator: row_space(&rows) }
    }

    /// Projective dimension.
    pub fn dim(&self) -> i64 {
        self.n as i64 - self.annihilator.len() as i64
    }

    pub fn is_proper_nonempty(&self) -> bool {
        !self.annihilator.is_empty() && self.annihilator.len() <= self.n
    }

    pub fn intersect(&self, o: &Self) -> Self {
        let mut rows = self.annihilator.clone();
        rows.extend(o.annihilator.iter().cloned());
        Self::from_rows(self.n, rows)
    }

    pub fn span(&self, o: &Self) -> Self {
        let cols = self.n + 1;
        // ann(V + W) = ann(V) ∩ ann(W) = (ann(V)^perp + ann(W)^perp)^perp
        let mut gens = nullspace(&self.annihilator, cols);
        gens.extend(nullspace(&o.annihilator, cols));
        Self::from_rows(self.n, nullspace(&gens, cols))
    }

    /// A spanning set of points of the subspace.
    pub fn points(&self) -> Vec<Vec<K>> {
        nullspace(&self.annihilator, self.n + 1)
    }
}

impl<K: Field> fmt::Display for Subspace<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let forms: Vec<String> = self.annihilator.iter().map(|r| LinearForm::new(r.clone()).to_string()).collect();
        write!(f, "{{{}}}", forms.join(", "))
    }
}

/// Closure of the hyperplanes of `h` under pairwise span and intersection,
/// `depth - 1` rounds, keeping proper nonempty subspaces.
pub fn exceptional_subspace_candidates<K: Field>(h: &HypCollection<K>, depth: usize) -> Result<Vec<Subspace<K>>> {
    if depth == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    let mut out: Vec<Subspace<K>> = Vec::new();
    for f in h.forms() {
        let s = Subspace::from_rows(h.n, vec![f.coeffs.clone()]);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    for _ in 1..depth {
        let mut fresh = Vec::new();
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                for s in [out[i].intersect(&out[j]), out[i].span(&out[j])] {
                    if s.is_proper_nonempty() && !out.contains(&s) && !fresh.contains(&s) {
                        fresh.push(s);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        out.extend(fresh);
    }
    Ok(out)
}

/// `h` as a collection in the target of the divisor map of `basis`.
pub fn collection_from_forms(forms: Vec<LinearForm<Rat>>, basis: &RRBasis) -> Result<HypCollection<Rat>> {
    HypCollection::new(basis.dimension() - 1, forms)
}
