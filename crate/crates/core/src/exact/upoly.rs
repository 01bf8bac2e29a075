//! Dense univariate polynomials over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};



use crate::scalar::{Field, Rat};

/// Dense univariate polynomial, coefficients indexed by degree.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and `lc()` of a nonzero polynomial is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> UPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut v = vec![K::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `t`
    pub fn x() -> Self {
        Self::monomial(K::one(), 1)
    }

    /// `t - a`
    pub fn linear_root(a: K) -> Self {
        Self::new(vec![-a, K::one()])
    }

    pub fn from_rats(cs: &[Rat]) -> Self {
        Self::new(cs.iter().map(K::from_rat).collect())
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * K::from_rat(&Rat::from_integer(i.into())))
            .collect();
        Self::new(v)
    }

    /// Substitutes `t -> t + a`.
    pub fn shift(&self, a: &K) -> Self {
        let lin = Self::new(vec![a.clone(), K::one()]);
        self.compose(&lin)
    }

    /// Computes `self(g(t))` by Horner's rule.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (Self::zero(), self.clone());
        }
        let inv_lc = d.lc().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![K::zero(); self.deg() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * inv_lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Yun's square-free decomposition: monic pairwise coprime square-free
    /// `(factor, multiplicity)` pairs whose product, times `lc`, is `self`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Self::gcd(&f, &df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = df.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = Self::gcd(&b, &d);
            let b_next = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            if !a.is_constant() {
                out.push((a, i));
            }
            b = b_next;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let f = self.monic();
        f.div_exact(&Self::gcd(&f, &f.derivative())).expect("gcd divides")
    }

    /// Multiplicity of `p` as a factor of `self`; `self` must be nonzero and
    /// `p` nonconstant.
    pub fn multiplicity(&self, p: &Self) -> usize {
        debug_assert!(!self.is_zero() && !p.is_constant());
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(p) {
            cur = q;
            k += 1;
        }
        k
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> UPoly<L> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<K: Field> Add for &UPoly<K> {
    type Output = UPoly<K>;
    fn add(self, rhs: &UPoly<K>) -> UPoly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<K: Field> Sub for &UPoly<K> {
    type Output = UPoly<K>;
    fn sub(self, rhs: &UPoly<K>) -> UPoly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<K: Field> Mul for &UPoly<K> {
    type Output = UPoly<K>;
    fn mul(self, rhs: &UPoly<K>) -> UPoly<K> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(v)
    }
}

impl<K: Field> Neg for &UPoly<K> {
    type Output = UPoly<K>;
    fn neg(self) -> UPoly<K> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<K: Field> Add for UPoly<K> {
    type Output = UPoly<K>;
    fn add(self, rhs: UPoly<K>) -> UPoly<K> {
        &self + &rhs
    }
}

impl<K: Field> Sub for UPoly<K> {
    type Output = UPoly<K>;
    fn sub(self, rhs: UPoly<K>) -> UPoly<K> {
        &self - &rhs
    }
}

impl<K: Field> Mul for UPoly<K> {
    type Output = UPoly<K>;
    fn mul(self, rhs: UPoly<K>) -> UPoly<K> {
        &self * &rhs
    }
}

impl<K: Field> Neg for UPoly<K> {
    type Output = UPoly<K>;
    fn neg(self) -> UPoly<K> {
        -&self
    }
}

impl<K: Field> fmt::Display for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = format!("{c}");
            let needs_paren = cs.contains(['+', ' ']) || (cs.starts_with('-') && i > 0);
            match i {
                0 => write!(f, "{cs}")?,
                _ => {
                    if c.is_one() {
                    } else if needs_paren {
                        write!(f, "({cs})*")?;
                    } else {
                        write!(f, "{cs}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Shorthand for a rational polynomial from integer coefficients, lowest
/// degree first.
pub fn qpoly(cs: &[i64]) -> UPoly<Rat> {
    UPoly::new(cs.iter().map(|&c| crate::scalar::rat(c)).collect())
}
