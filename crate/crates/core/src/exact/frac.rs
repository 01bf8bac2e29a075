//! Multivariate rational functions over the rationals, kept in lowest terms
//! with a denominator whose leading coefficient is one.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use crate::scalar::{Field, Rat};

#[derive(Clone, Debug)]
pub struct Frac {
    num: MPoly,
    den: MPoly,
}

impl Frac {
    /// Panics if `den` is zero.
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = align(num, den);
        if num.is_zero() {
            let n = num.nvars();
            return Frac {
                num: MPoly::zero(n),
                den: MPoly::one(n),
            };
        }
        let g = MPoly::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        let lc = den.lc();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Frac { num, den }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        Frac {
            num: p,
            den: MPoly::one(n),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Frac {
            num: MPoly::constant(0, c),
            den: MPoly::one(0),
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.den.eval(point);
        (!d.is_zero()).then(|| self.num.eval(point) / d)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.den.is_one() {
            self.num.display_with(names)
        } else {
            format!(
                "({})/({})",
                self.num.display_with(names),
                self.den.display_with(names)
            )
        }
    }
}

fn lift(p: MPoly, n: usize) -> MPoly {
    if p.nvars() == n {
        return p;
    }
    let c = p
        .constant_value()
        .expect("mixing rational functions of different arity");
    MPoly::constant(n, c)
}

fn align(a: MPoly, b: MPoly) -> (MPoly, MPoly) {
    let n = a.nvars().max(b.nvars());
    (lift(a, n), lift(b, n))
}

fn align_frac(a: &Frac, b: &Frac) -> (Frac, Frac) {
    let n = a.nvars().max(b.nvars());
    let up = |f: &Frac| Frac {
        num: lift(f.num.clone(), n),
        den: lift(f.den.clone(), n),
    };
    (up(a), up(b))
}

impl PartialEq for Frac {
    fn eq(&self, other: &Frac) -> bool {
        if self.nvars() == other.nvars() {
            return self.num == other.num && self.den == other.den;
        }
        match (self.as_rat(), other.as_rat()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl PartialEq<Rat> for Frac {
    fn eq(&self, other: &Rat) -> bool {
        self.num.constant_value().as_ref() == Some(other) && self.den.is_one()
    }
}

impl Zero for Frac {
    fn zero() -> Self {
        Frac::constant(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Frac {
    fn one() -> Self {
        Frac::constant(Rat::one())
    }
}

impl Add for Frac {
    type Output = Frac;
    fn add(self, rhs: Frac) -> Frac {
        let (a, b) = align_frac(&self, &rhs);
        if a.den == b.den {
            return Frac::new(&a.num + &b.num, a.den);
        }
        Frac::new(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
    }
}

impl Sub for Frac {
    type Output = Frac;
    fn sub(self, rhs: Frac) -> Frac {
        self + (-rhs)
    }
}

impl Mul for Frac {
    type Output = Frac;
    fn mul(self, rhs: Frac) -> Frac {
        let (a, b) = align_frac(&self, &rhs);
        Frac::new(&a.num * &b.num, &a.den * &b.den)
    }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Div for Frac {
    type Output = Frac;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Frac) -> Frac {
        self * rhs.inv()
    }
}

impl Field for Frac {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Frac::new(self.den.clone(), self.num.clone())
    }

    fn from_rat(r: &Rat) -> Self {
        Frac::constant(r.clone())
    }

    fn as_rat(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
