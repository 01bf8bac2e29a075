//! Scalar abstraction shared by the polynomial, function-field and linear
//! algebra code.
//!
//! Everything in this crate is exact. The [`Field`] trait is the only thing
//! the generic code asks of a coefficient type; it is implemented for
//! [`Rat`] (the rationals), for number-field elements
//! ([`crate::exact::numfield::NfElem`]) and for multivariate rational
//! functions ([`crate::exact::frac::Frac`]).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision integer.
pub type Int = BigInt;
/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

/// A commutative field of characteristic zero with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Multiplicative inverse. Panics on zero, like integer division does.
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Embeds a rational constant.
    fn from_rat(r: &Rat) -> Self;

    /// Returns the value as a rational if it is one.
    fn as_rat(&self) -> Option<Rat>;
}

impl Field for Rat {
    fn inv(&self) -> Self {
        self.recip()
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int_to_rat(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Parses `"a"` or `"a/b"` into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}

pub fn abs_rat(r: &Rat) -> Rat {
    r.abs()
}

/// Natural logarithm of `|n|` for `n != 0`, accurate to f64 precision for
/// integers of any size.
pub fn ln_int(n: &Int) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return num_traits::ToPrimitive::to_f64(&n.abs()).expect("finite").ln();
    }
    let shift = bits - 64;
    let top: Int = n.abs() >> shift;
    num_traits::ToPrimitive::to_f64(&top).expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of `|r|` for `r != 0`.
pub fn ln_rat(r: &Rat) -> f64 {
    ln_int(r.numer()) - ln_int(r.denom())
}
