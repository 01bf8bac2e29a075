//! Rational function fields `k(t)`: elements, places, heights, integrality
//! with respect to a set of places, and Weil functions of hyperplanes.
//!
//! Places are Galois orbits over the coefficient field, i.e. monic
//! irreducible polynomials, weighted by their degree; the infinite place is
//! the place of `1/t` and has degree one.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{CoefField, PlaceField, UPoly};
use crate::scalar::{Field, Rat};

/// An element `num/den` of `k(t)` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<K> {
    num: UPoly<K>,
    den: UPoly<K>,
}

pub type QRatFunc = RatFunc<Rat>;

impl<K: Field> RatFunc<K> {
    pub fn new(num: UPoly<K>, den: UPoly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = UPoly::gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lc = den.lc().inv();
        Ok(RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: UPoly<K>) -> Self {
        RatFunc { num: p, den: UPoly::one() }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(UPoly::x())
    }

    pub fn num(&self) -> &UPoly<K> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<K> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn eval(&self, x: &K) -> Option<K> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Affine height `h((1 : x)) = max(deg num, deg den)`.
    pub fn height(&self) -> u64 {
        if self.num.is_zero() {
            return 0;
        }
        self.num.deg().max(self.den.deg()) as u64
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        RatFunc {
            num: base.num.pow(e.unsigned_abs() as u32),
            den: base.den.pow(e.unsigned_abs() as u32),
        }
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> RatFunc<L> {
        RatFunc::new(self.num.map(&f), self.den.map(&f)).expect("nonzero denominator")
    }
}

impl<K: Field> Zero for RatFunc<K> {
    fn zero() -> Self {
        RatFunc { num: UPoly::zero(), den: UPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<K: Field> One for RatFunc<K> {
    fn one() -> Self {
        Self::constant(K::one())
    }
}

impl<K: Field> Add for RatFunc<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den).expect("nonzero");
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("nonzero")
    }
}

impl<K: Field> Sub for RatFunc<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Field> Mul for RatFunc<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl<K: Field> Neg for RatFunc<K> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -&self.num, den: self.den }
    }
}

impl<K: Field> Div for RatFunc<K> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone()).expect("nonzero")
    }

    fn from_rat(r: &Rat) -> Self {
        Self::constant(K::from_rat(r))
    }

    fn as_rat(&self) -> Option<Rat> {
        if self.num.is_constant() && self.den.is_constant() {
            self.num.coeff(0).as_rat()
        } else {
            None
        }
    }
}

impl<K: Field> fmt::Display for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// A place of `k(t)`: a monic irreducible polynomial or infinity.
#[derive(Clone, PartialEq, Debug)]
pub enum FFPlace<K> {
    Finite(UPoly<K>),
    Infinite,
}

impl<K: PlaceField> FFPlace<K> {
    /// Validates irreducibility of `poly` over `field`.
    pub fn finite(poly: UPoly<K>, field: &CoefField) -> Result<Self> {
        if poly.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let fs = K::factor_irreducible(&poly, field)?;
        if fs.len() != 1 || fs[0].1 != 1 {
            return Err(Error::InvalidInput(format!("{poly} is not irreducible")));
        }
        Ok(FFPlace::Finite(poly.monic()))
    }
}

impl<K: Field> FFPlace<K> {
    pub fn degree(&self) -> u64 {
        match self {
            FFPlace::Finite(p) => p.deg() as u64,
            FFPlace::Infinite => 1,
        }
    }
}

impl<K: Field> fmt::Display for FFPlace<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FFPlace::Finite(p) => write!(f, "({p})"),
            FFPlace::Infinite => write!(f, "inf"),
        }
    }
}

/// Order of vanishing of a nonzero element at a place.
pub fn ff_ord<K: Field>(x: &RatFunc<K>, p: &FFPlace<K>) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(match p {
        FFPlace::Finite(q) => x.num.multiplicity(q) as i64 - x.den.multiplicity(q) as i64,
        FFPlace::Infinite => x.den.deg() as i64 - x.num.deg() as i64,
    })
}

/// Places where some nonzero element of `xs` has a zero or pole, plus
/// infinity, in a deterministic order.
pub fn support_places<K: PlaceField>(xs: &[RatFunc<K>], field: &CoefField) -> Result<Vec<FFPlace<K>>> {
    let mut polys: Vec<UPoly<K>> = Vec::new();
    for x in xs.iter().filter(|x| !x.is_zero()) {
        for part in [&x.num, &x.den] {
            if part.is_constant() {
                continue;
            }
            for (f, _) in K::factor_irreducible(part, field)? {
                if !polys.contains(&f) {
                    polys.push(f);
                }
            }
        }
    }
    let mut out: Vec<FFPlace<K>> = polys.into_iter().map(FFPlace::Finite).collect();
    out.push(FFPlace::Infinite);
    Ok(out)
}

/// A finite set of places of `k(t)`.
#[derive(Clone, PartialEq, Debug)]
pub struct PlaceSet<K> {
    pub finite: Vec<UPoly<K>>,
    pub infinity: bool,
}

impl<K: Field> PlaceSet<K> {
    pub fn empty() -> Self {
        PlaceSet { finite: Vec::new(), infinity: false }
    }

    pub fn new(finite: Vec<UPoly<K>>, infinity: bool) -> Self {
        let mut fs: Vec<UPoly<K>> = Vec::new();
        for p in finite.into_iter().map(|p| p.monic()) {
            if !fs.contains(&p) {
                fs.push(p);
            }
        }
        PlaceSet { finite: fs, infinity }
    }

    pub fn places(&self) -> Vec<FFPlace<K>> {
        let mut out: Vec<FFPlace<K>> = self.finite.iter().cloned().map(FFPlace::Finite).collect();
        if self.infinity {
            out.push(FFPlace::Infinite);
        }
        out
    }

    pub fn contains(&self, p: &FFPlace<K>) -> bool {
        match p {
            FFPlace::Infinite => self.infinity,
            FFPlace::Finite(q) => self.finite.contains(q),
        }
    }

    pub fn len(&self) -> usize {
        self.finite.len() + usize::from(self.infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Membership in the ring of elements with poles only inside `T`.
pub fn is_t_integral<K: Field>(x: &RatFunc<K>, t: &PlaceSet<K>) -> bool {
    if x.is_zero() {
        return true;
    }
    if x.num.deg() > x.den.deg() && !t.infinity {
        return false;
    }
    let mut den = x.den.clone();
    for p in &t.finite {
        while !den.is_constant() {
            match den.div_exact(p) {
                Some(q) => den = q,
                None => break,
            }
        }
    }
    den.is_constant()
}

/// A point of `P^n(k(t))` with polynomial coordinates of overall gcd one,
/// the first nonzero coordinate monic.
#[derive(Clone, PartialEq, Debug)]
pub struct ProjPointFF<K> {
    coords: Vec<UPoly<K>>,
}

impl<K: Field> ProjPointFF<K> {
    pub fn new(coords: &[RatFunc<K>]) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("projective point with all coordinates zero".into()));
        }
        let mut l = UPoly::one();
        for c in coords {
            let g = UPoly::gcd(&l, &c.den);
            l = (&l * &c.den).div_exact(&g).expect("gcd divides");
        }
        let polys: Vec<UPoly<K>> = coords
            .iter()
            .map(|c| &c.num * &l.div_exact(&c.den).expect("lcm"))
            .collect();
        Ok(Self::from_polys(polys))
    }

    pub fn from_polys(polys: Vec<UPoly<K>>) -> Self {
        let g = polys.iter().fold(UPoly::zero(), |acc, p| UPoly::gcd(&acc, p));
        assert!(!g.is_zero(), "projective point with all coordinates zero");
        let first = polys.iter().find(|p| !p.is_zero()).expect("nonzero").div_exact(&g).expect("gcd");
        let s = first.lc().inv();
        ProjPointFF {
            coords: polys
                .iter()
                .map(|p| p.div_exact(&g).expect("gcd divides").scale(&s))
                .collect(),
        }
    }

    pub fn coords(&self) -> &[UPoly<K>] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn rat_coords(&self) -> Vec<RatFunc<K>> {
        self.coords.iter().cloned().map(RatFunc::from_poly).collect()
    }
}

impl<K: Field> fmt::Display for ProjPointFF<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

/// Height from canonical coordinates: the largest coordinate degree.
pub fn h_proj_ff<K: Field>(p: &ProjPointFF<K>) -> u64 {
    p.coords.iter().filter(|c| !c.is_zero()).map(|c| c.deg() as u64).max().unwrap_or(0)
}

/// Height of arbitrary coordinates as `sum_p deg(p) max_i(-ord_p x_i)`.
pub fn h_proj_ff_by_places<K: PlaceField>(coords: &[RatFunc<K>], field: &CoefField) -> Result<u64> {
    let nonzero: Vec<&RatFunc<K>> = coords.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::InvalidInput("projective point with all coordinates zero".into()));
    }
    let mut total = 0i64;
    for p in support_places(coords, field)? {
        let mut m = i64::MIN;
        for c in &nonzero {
            m = m.max(-ff_ord(c, &p)?);
        }
        total += p.degree() as i64 * m;
    }
    debug_assert!(total >= 0);
    Ok(total as u64)
}

/// A linear form `sum c_i x_i`.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearForm<F> {
    pub coeffs: Vec<F>,
}

impl<F: Field> LinearForm<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        LinearForm { coeffs }
    }

    pub fn coordinate(n: usize, i: usize) -> Self {
        LinearForm {
            coeffs: (0..=n).map(|j| if i == j { F::one() } else { F::zero() }).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &[F]) -> F {
        self.coeffs
            .iter()
            .zip(x)
            .fold(F::zero(), |acc, (c, xi)| acc + c.clone() * xi.clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> LinearForm<G> {
        LinearForm { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<F: Field> fmt::Display for LinearForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(format!("x{i}"));
            } else if (-c.clone()).is_one() {
                parts.push(format!("-x{i}"));
            } else {
                parts.push(format!("{c}*x{i}"));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// `lambda_{H,p}(x) = ord_p(H(x)) - min_i ord_p(x_i)` for any representative.
pub fn weil_lambda_coords<K: Field>(
    h: &LinearForm<RatFunc<K>>,
    p: &FFPlace<K>,
    x: &[RatFunc<K>],
) -> Result<i64> {
    let v = h.eval(x);
    if v.is_zero() {
        return Err(Error::PointOnHyperplane);
    }
    let mut m = i64::MAX;
    for xi in x.iter().filter(|c| !c.is_zero()) {
        m = m.min(ff_ord(xi, p)?);
    }
    Ok(ff_ord(&v, p)? - m)
}

pub fn weil_lambda<K: Field>(h: &LinearForm<RatFunc<K>>, p: &FFPlace<K>, pt: &ProjPointFF<K>) -> Result<i64> {
    weil_lambda_coords(h, p, &pt.rat_coords())
}
