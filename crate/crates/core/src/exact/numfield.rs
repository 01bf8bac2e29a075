//! Algebraic number fields `Q[a]/(m(a))` and factorization over them.
//!
//! Elements carry an optional shared reference to their field; rational
//! constants need none, so `zero()` and `one()` stay context free and mix
//! with elements of any field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::factor::{factor_q, is_irreducible_q};
use super::mpoly::MPoly;
use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::scalar::{Field, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NumberField {
    minpoly: UPoly<Rat>,
}

impl NumberField {
    /// `minpoly` is made monic and must be irreducible over the rationals.
    pub fn new(minpoly: UPoly<Rat>) -> Result<Arc<Self>> {
        if minpoly.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !is_irreducible_q(&minpoly)? {
            return Err(Error::InvalidInput(format!(
                "defining polynomial {minpoly} is reducible over Q"
            )));
        }
        Ok(Arc::new(NumberField {
            minpoly: minpoly.monic(),
        }))
    }

    pub fn minpoly(&self) -> &UPoly<Rat> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn generator(self: &Arc<Self>) -> NfElem {
        NfElem::from_poly(UPoly::x(), self)
    }
}

#[derive(Clone, Debug)]
pub struct NfElem {
    rep: UPoly<Rat>,
    field: Option<Arc<NumberField>>,
}

impl NfElem {
    pub fn from_poly(rep: UPoly<Rat>, field: &Arc<NumberField>) -> Self {
        let field = if field.degree() == 1 {
            // Degree-one fields are the rationals; keep elements context free.
            return NfElem {
                rep: UPoly::constant(rep.eval(&-field.minpoly.coeff(0))),
                field: None,
            };
        } else {
            field.clone()
        };
        NfElem {
            rep: rep.rem(&field.minpoly),
            field: Some(field),
        }
    }

    pub fn rational(r: Rat) -> Self {
        NfElem {
            rep: UPoly::constant(r),
            field: None,
        }
    }

    pub fn rep(&self) -> &UPoly<Rat> {
        &self.rep
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    fn join(a: &Self, b: &Self) -> Option<Arc<NumberField>> {
        match (&a.field, &b.field) {
            (Some(f), Some(g)) => {
                debug_assert_eq!(f.minpoly, g.minpoly, "mixing number fields");
                Some(f.clone())
            }
            (Some(f), None) | (None, Some(f)) => Some(f.clone()),
            (None, None) => None,
        }
    }

    fn build(rep: UPoly<Rat>, field: Option<Arc<NumberField>>) -> Self {
        match field {
            Some(f) => NfElem {
                rep: rep.rem(&f.minpoly),
                field: Some(f),
            },
            None => NfElem { rep, field: None },
        }
    }

    /// Field norm down to the rationals.
    pub fn norm(&self) -> Rat {
        match &self.field {
            None => self.rep.coeff(0),
            Some(f) => {
                let m = MPoly::from_upoly(&f.minpoly, 0, 1);
                let a = MPoly::from_upoly(&self.rep, 0, 1);
                MPoly::resultant(&m, &a, 0).constant_value().expect("constant resultant")
            }
        }
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl Zero for NfElem {
    fn zero() -> Self {
        NfElem::rational(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl One for NfElem {
    fn one() -> Self {
        NfElem::rational(Rat::one())
    }
}

impl Add for NfElem {
    type Output = NfElem;
    fn add(self, rhs: NfElem) -> NfElem {
        let f = NfElem::join(&self, &rhs);
        NfElem::build(&self.rep + &rhs.rep, f)
    }
}

impl Sub for NfElem {
    type Output = NfElem;
    fn sub(self, rhs: NfElem) -> NfElem {
        let f = NfElem::join(&self, &rhs);
        NfElem::build(&self.rep - &rhs.rep, f)
    }
}

impl Mul for NfElem {
    type Output = NfElem;
    fn mul(self, rhs: NfElem) -> NfElem {
        let f = NfElem::join(&self, &rhs);
        NfElem::build(&self.rep * &rhs.rep, f)
    }
}

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem {
            rep: -&self.rep,
            field: self.field,
        }
    }
}

impl Div for NfElem {
    type Output = NfElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: NfElem) -> NfElem {
        self * rhs.inv()
    }
}

impl Field for NfElem {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match &self.field {
            None => NfElem::rational(self.rep.coeff(0).recip()),
            Some(f) => {
                let (g, s, _) = UPoly::ext_gcd(&self.rep, &f.minpoly);
                debug_assert!(g == UPoly::one(), "defining polynomial must be irreducible");
                NfElem::build(s, Some(f.clone()))
            }
        }
    }

    fn from_rat(r: &Rat) -> Self {
        NfElem::rational(r.clone())
    }

    fn as_rat(&self) -> Option<Rat> {
        self.rep.is_constant().then(|| self.rep.coeff(0))
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            return write!(f, "{r}");
        }
        let s = self.rep.to_string().replace('t', "a");
        write!(f, "({s})")
    }
}

/// Coefficient field of a rational function field `k(t)`.
#[derive(Clone, PartialEq, Debug)]
pub enum CoefField {
    Rationals,
    NumberField(Arc<NumberField>),
}

impl CoefField {
    pub fn degree(&self) -> usize {
        match self {
            CoefField::Rationals => 1,
            CoefField::NumberField(k) => k.degree(),
        }
    }
}

/// Coefficient types whose univariate polynomials can be split into
/// irreducible factors over a given [`CoefField`].
pub trait PlaceField: Field {
    /// Monic irreducible factors with multiplicities, deterministic order.
    fn factor_irreducible(p: &UPoly<Self>, field: &CoefField) -> Result<Vec<(UPoly<Self>, usize)>>;
}

impl PlaceField for Rat {
    fn factor_irreducible(p: &UPoly<Rat>, field: &CoefField) -> Result<Vec<(UPoly<Rat>, usize)>> {
        match field {
            CoefField::Rationals => Ok(factor_q(p)?.factors),
            CoefField::NumberField(_) => Err(Error::InvalidInput(
                "rational coefficients carry no number field; use NfElem".into(),
            )),
        }
    }
}

impl PlaceField for NfElem {
    fn factor_irreducible(
        p: &UPoly<NfElem>,
        field: &CoefField,
    ) -> Result<Vec<(UPoly<NfElem>, usize)>> {
        match field {
            CoefField::Rationals => {
                let q: UPoly<Rat> = p
                    .coeffs()
                    .iter()
                    .map(|c| c.as_rat())
                    .collect::<Option<Vec<_>>>()
                    .map(UPoly::new)
                    .ok_or_else(|| {
                        Error::InvalidInput("irrational coefficient over Q".into())
                    })?;
                Ok(factor_q(&q)?
                    .factors
                    .into_iter()
                    .map(|(f, m)| (f.map(|c| NfElem::rational(c.clone())), m))
                    .collect())
            }
            CoefField::NumberField(k) => factor_over_number_field(p, k),
        }
    }
}

/// Norm of `g(t) in K[t]` down to `Q[t]`: `Res_y(m(y), g(t, y))`.
pub fn poly_norm(g: &UPoly<NfElem>, k: &Arc<NumberField>) -> UPoly<Rat> {
    // variables: 0 = t, 1 = y
    let mut big = MPoly::zero(2);
    for (i, c) in g.coeffs().iter().enumerate() {
        for (j, a) in c.rep().coeffs().iter().enumerate() {
            big = &big + &MPoly::monomial(vec![i as u32, j as u32], a.clone());
        }
    }
    let m = MPoly::from_upoly(k.minpoly(), 1, 2);
    let r = MPoly::resultant(&m, &big, 1);
    r.to_upoly(0).expect("resultant eliminates y")
}

/// Trager's algorithm: factor over `K = Q(a)` by factoring a norm over Q.
pub fn factor_over_number_field(
    p: &UPoly<NfElem>,
    k: &Arc<NumberField>,
) -> Result<Vec<(UPoly<NfElem>, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lift = |g: &UPoly<NfElem>| g.map(|c| NfElem::build(c.rep.clone(), Some(k.clone())));
    let p = lift(p);
    let alpha = k.generator();
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        if part.deg() == 1 {
            out.push((part, mult));
            continue;
        }
        let mut shift = 0i64;
        loop {
            let s = NfElem::rational(Rat::from_integer(shift.into()));
            // g_s(t) = part(t - s a)
            let gs = part.shift(&-(s.clone() * alpha.clone()));
            let n = poly_norm(&gs, k);
            if UPoly::gcd(&n, &n.derivative()).is_constant() {
                for (ni, _) in factor_q(&n)?.factors {
                    let ni_k = ni.map(|c| NfElem::rational(c.clone()));
                    let h = UPoly::gcd(&gs, &ni_k);
                    if !h.is_constant() {
                        out.push((h.shift(&(s.clone() * alpha.clone())).monic(), mult));
                    }
                }
                break;
            }
            shift = if shift <= 0 { 1 - shift } else { -shift };
        }
    }
    out.sort_by(|a, b| {
        a.0.deg().cmp(&b.0.deg()).then_with(|| {
            let ka: Vec<String> = a.0.coeffs().iter().map(|c| c.to_string()).collect();
            let kb: Vec<String> = b.0.coeffs().iter().map(|c| c.to_string()).collect();
            ka.cmp(&kb)
        })
    });
    Ok(out)
}
