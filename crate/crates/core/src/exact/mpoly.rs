//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a map ordered by graded-lexicographic order on exponent
//! vectors, so the leading term is the last entry. Zero coefficients are never
//! stored and the number of variables is fixed at construction.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;
use crate::scalar::{Field, Int, Rat};

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn sub(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn add(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rat::from_integer(c.into()))
    }

    /// The variable with index `i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn monomial(exp: Vec<u32>, c: Rat) -> Self {
        let mut p = Self::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(Mono(exp), c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent arity mismatch");
            p.add_term(Mono(e), c);
        }
        p
    }

    /// Integer coefficients, `(exponents, coefficient)`.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Rat::from_integer((*c).into()))),
        )
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        self.is_constant()
            .then(|| self.terms.values().next().unwrap().clone())
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading_term(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn lc(&self) -> Rat {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.add(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.eval_in::<Rat>(point)
    }

    pub fn eval_int(&self, point: &[i64]) -> Rat {
        let pt: Vec<Rat> = point.iter().map(|&x| Rat::from_integer(x.into())).collect();
        self.eval(&pt)
    }

    /// Evaluates at a point with coordinates in any field containing the
    /// rationals.
    pub fn eval_in<K: Field>(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars, "point arity mismatch");
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = K::from_rat(c);
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes polynomial `subs[i]` for variable `i`.
    pub fn substitute(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars);
        let n = subs.first().map(|s| s.nvars).unwrap_or(0);
        let mut acc = MPoly::zero(n);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(n, c.clone());
            for (s, &e) in subs.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &s.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes a field value for one variable, keeping the arity.
    pub fn partial_eval(&self, var: usize, value: &Rat) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] = 0;
            let mut v = c.clone();
            for _ in 0..k {
                v *= value;
            }
            out.add_term(Mono(e), v);
        }
        out
    }

    /// Coefficients as a polynomial in `var`: entry `k` is the coefficient of
    /// `var^k`, with `var` absent from it.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(self.nvars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[var] as usize;
            e[var] = 0;
            out[k].add_term(Mono(e), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(var: usize, nvars: usize, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.0.clone();
                e[var] += k as u32;
                out.add_term(Mono(e), a.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to `var`.
    pub fn lc_in(&self, var: usize) -> MPoly {
        self.coeffs_in(var).pop().unwrap_or_else(|| MPoly::zero(self.nvars))
    }

    /// Converts to a univariate polynomial when only `var` occurs.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly<Rat>> {
        let cs = self.coeffs_in(var);
        cs.iter()
            .map(|c| c.constant_value())
            .collect::<Option<Vec<_>>>()
            .map(UPoly::new)
    }

    pub fn from_upoly(p: &UPoly<Rat>, var: usize, nvars: usize) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Changes the number of variables, mapping old variable `i` to
    /// `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// `c` with `self = c * primitive_part()`: the primitive part has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn rational_content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let den = self.terms.values().fold(Int::one(), |l, c| l.lcm(c.denom()));
        let num = self
            .terms
            .values()
            .fold(Int::zero(), |g, c| g.gcd(&(c * Rat::from_integer(den.clone())).to_integer()));
        let c = Rat::new(num, den);
        if self.lc().is_negative() {
            -c
        } else {
            c
        }
    }

    pub fn primitive_part(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.rational_content().recip())
    }

    /// Integer content of an integer polynomial (nonnegative).
    pub fn int_content(&self) -> Int {
        debug_assert!(self.has_integer_coeffs());
        self.terms
            .values()
            .fold(Int::zero(), |g, c| g.gcd(&c.to_integer()))
    }

    /// Largest absolute value of a coefficient.
    pub fn max_abs_coeff(&self) -> Rat {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = MPoly::zero(self.nvars);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let m = rm.sub(&dm);
            let c = rc / &dc;
            r = &r - &d.mul_mono(&m, &c);
            q.add_term(m, c);
        }
        Some(q)
    }

    pub fn divides(&self, other: &MPoly) -> bool {
        !self.is_zero() && other.div_exact(self).is_some()
    }

    /// Multiplicity of `e` as a factor of `self` (nonzero, `e` nonconstant).
    pub fn multiplicity(&self, e: &MPoly) -> u32 {
        debug_assert!(!self.is_zero() && !e.is_constant());
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(e) {
            cur = q;
            k += 1;
        }
        k
    }

    /// Pseudo-remainder of `self` by `b` with respect to `var`.
    fn prem(&self, b: &MPoly, var: usize) -> MPoly {
        let db = b.degree_in(var);
        let lb = b.lc_in(var);
        let mut r = self.clone();
        while !r.is_zero() && r.involves(var) && r.degree_in(var) >= db {
            let dr = r.degree_in(var);
            let lr = r.lc_in(var);
            let mut e = vec![0; self.nvars];
            e[var] = dr - db;
            let shift = MPoly::monomial(e, Rat::one());
            r = &(&lb * &r) - &(&(&lr * b) * &shift);
        }
        r
    }

    /// Content with respect to `var`: the gcd of the coefficients in `var`.
    fn content_in(&self, var: usize) -> MPoly {
        self.coeffs_in(var)
            .iter()
            .fold(MPoly::zero(self.nvars), |g, c| MPoly::gcd(&g, c))
    }

    fn highest_var(a: &MPoly, b: &MPoly) -> Option<usize> {
        (0..a.nvars).rev().find(|&v| a.involves(v) || b.involves(v))
    }

    /// Greatest common divisor, normalized to a primitive integer polynomial
    /// with positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        assert_eq!(a.nvars, b.nvars, "gcd arity mismatch");
        if a.is_zero() {
            return b.primitive_part();
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        let Some(v) = Self::highest_var(a, b) else {
            return MPoly::one(a.nvars);
        };
        let (a, b) = (a.primitive_part(), b.primitive_part());
        if !a.involves(v) {
            return MPoly::gcd(&a, &b.content_in(v));
        }
        if !b.involves(v) {
            return MPoly::gcd(&b, &a.content_in(v));
        }
        let (ca, cb) = (a.content_in(v), b.content_in(v));
        let c = MPoly::gcd(&ca, &cb);
        let mut p = a.div_exact(&ca).expect("content divides");
        let mut q = b.div_exact(&cb).expect("content divides");
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        let g = loop {
            let r = p.prem(&q, v);
            if r.is_zero() {
                break q;
            }
            if !r.involves(v) {
                break MPoly::one(a.nvars);
            }
            p = q;
            let cr = r.content_in(v);
            q = r.div_exact(&cr).expect("content divides").primitive_part();
        };
        let g = g.div_exact(&g.content_in(v)).expect("content divides");
        (&c * &g).primitive_part()
    }

    /// Multivariate resultant with respect to `var`, via fraction-free
    /// elimination on the Sylvester matrix.
    pub fn resultant(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
        let n = a.nvars;
        if a.is_zero() || b.is_zero() {
            return MPoly::zero(n);
        }
        let ac = a.coeffs_in(var);
        let bc = b.coeffs_in(var);
        let (m, k) = (ac.len() - 1, bc.len() - 1);
        if m == 0 {
            return ac[0].pow(k as u32);
        }
        if k == 0 {
            return bc[0].pow(m as u32);
        }
        let size = m + k;
        let mut mat = vec![vec![MPoly::zero(n); size]; size];
        for i in 0..k {
            for (j, c) in ac.iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in bc.iter().rev().enumerate() {
                mat[k + i][i + j] = c.clone();
            }
        }
        bareiss_det(mat, n)
    }

    /// Discriminant in `var` of a polynomial of degree `d >= 1` in `var`:
    /// `(-1)^(d(d-1)/2) Res(g, g') / lc(g)`.
    pub fn discriminant(g: &MPoly, var: usize) -> MPoly {
        let d = g.degree_in(var);
        let cs = g.coeffs_in(var);
        let dcs: Vec<MPoly> = cs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Rat::from_integer((i as i64).into())))
            .collect();
        let dg = MPoly::from_coeffs_in(var, g.nvars, &dcs);
        let res = MPoly::resultant(g, &dg, var);
        let q = res
            .div_exact(&g.lc_in(var))
            .expect("leading coefficient divides the resultant");
        if (d as u64 * (d as u64).saturating_sub(1) / 2) % 2 == 1 {
            -q
        } else {
            q
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut vars = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("z{}", i + 1));
                match e {
                    0 => {}
                    1 => vars.push(name),
                    _ => vars.push(format!("{name}^{e}")),
                }
            }
            let mono = vars.join("*");
            let s = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Fraction-free determinant over the polynomial ring.
pub(crate) fn bareiss_det(mut m: Vec<Vec<MPoly>>, nvars: usize) -> MPoly {
    let n = m.len();
    let mut sign = false;
    let mut prev = MPoly::one(nvars);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return MPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.add(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize) -> MPoly {
        MPoly::var(2, i)
    }

    #[test]
    fn gcd_examples() {
        let (z1, z2) = (z(0), z(1));
        assert_eq!(MPoly::gcd(&(&z1 * &z2), &(&z1 * &z1)), z1.clone());
        assert!(MPoly::gcd(&(&z1 - &z2), &(&z1 + &z2)).is_one());
        let a = &(&z1 * &z1) - &(&z2 * &z2);
        let b = (&z1 - &z2).pow(2);
        assert_eq!(MPoly::gcd(&a, &b), &z1 - &z2);
    }

    #[test]
    fn gcd_normalizes_sign_and_content() {
        let (z1, z2) = (z(0), z(1));
        let a = (&z2 - &z1).scale(&Rat::from_integer(6.into()));
        let b = (&(&z2 - &z1) * &(&z1 + &MPoly::one(2))).scale(&Rat::from_integer((-4).into()));
        // z1 > z2 in graded lex, so the positive-leading normalization is z1 - z2.
        assert_eq!(MPoly::gcd(&a, &b), &z1 - &z2);
    }

    #[test]
    fn exact_division() {
        let (z1, z2) = (z(0), z(1));
        let a = &(&z1 + &z2) * &(&z1 - &z2);
        assert_eq!(a.div_exact(&(&z1 + &z2)), Some(&z1 - &z2));
        assert_eq!(a.div_exact(&(&z1 + &MPoly::one(2))), None);
    }

    #[test]
    fn resultant_and_discriminant() {
        // G = x^2 - z in variables (z, x): disc_x = 4z.
        let zz = MPoly::var(2, 0);
        let x = MPoly::var(2, 1);
        let g = &(&x * &x) - &zz;
        assert_eq!(MPoly::discriminant(&g, 1), zz.scale(&Rat::from_integer(4.into())));
        // Res_x(x - z, x + z) = (x + z) at x = z
        let r = MPoly::resultant(&(&x - &zz), &(&x + &zz), 1);
        assert_eq!(r, zz.scale(&Rat::from_integer(2.into())));
    }
}
