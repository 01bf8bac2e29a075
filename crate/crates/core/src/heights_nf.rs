//! Places of the rationals, projective heights over Q, heights of algebraic
//! numbers and Northcott enumeration.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::factor::{is_irreducible_q, primitive_integer_part};
use crate::exact::integer::{int_valuation, is_prime, prime_support};
use crate::exact::UPoly;
use crate::scalar::{ln_int, ln_rat, Int, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum QPlace {
    Finite(Int),
    Infinite,
}

impl QPlace {
    pub fn finite(p: Int) -> Result<Self> {
        if p.is_positive() && is_prime(&p) {
            Ok(QPlace::Finite(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }
}

impl fmt::Display for QPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QPlace::Finite(p) => write!(f, "{p}"),
            QPlace::Infinite => write!(f, "inf"),
        }
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn q_ord(x: &Rat, p: &Int) -> i64 {
    int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64
}

/// Normalized absolute value `|x|_p`; `p^(-ord_p x)` at finite places.
pub fn q_abs(x: &Rat, p: &QPlace) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    match p {
        QPlace::Infinite => x.abs(),
        QPlace::Finite(p) => {
            let e = q_ord(x, p);
            let pe = Rat::from_integer(num_traits::pow(p.clone(), e.unsigned_abs() as usize));
            if e >= 0 {
                pe.recip()
            } else {
                pe
            }
        }
    }
}

/// Places at which `x != 0` has absolute value other than one, plus infinity.
pub fn contributing_places(x: &Rat) -> Result<Vec<QPlace>> {
    let mut ps = prime_support(x.numer())?;
    ps.extend(prime_support(x.denom())?);
    ps.sort();
    ps.dedup();
    let mut out: Vec<QPlace> = ps.into_iter().map(QPlace::Finite).collect();
    out.push(QPlace::Infinite);
    Ok(out)
}

/// A logarithm `log(a)` of a positive rational `a`, carried exactly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LogHeight {
    arg: Rat,
}

impl LogHeight {
    pub fn log_of(arg: Rat) -> Self {
        assert!(arg.is_positive(), "log of a nonpositive number");
        LogHeight { arg }
    }

    pub fn log_int(n: Int) -> Self {
        Self::log_of(Rat::from_integer(n))
    }

    pub fn zero() -> Self {
        LogHeight { arg: Rat::one() }
    }

    pub fn arg(&self) -> &Rat {
        &self.arg
    }

    pub fn is_zero(&self) -> bool {
        self.arg.is_one()
    }

    /// `log a + log b = log(ab)`.
    pub fn plus(&self, other: &LogHeight) -> LogHeight {
        LogHeight {
            arg: &self.arg * &other.arg,
        }
    }

    /// `m log a = log(a^m)`.
    pub fn times(&self, m: u32) -> LogHeight {
        LogHeight {
            arg: num_traits::pow(self.arg.clone(), m as usize),
        }
    }

    pub fn value(&self) -> f64 {
        ln_rat(&self.arg)
    }
}

impl PartialOrd for LogHeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogHeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arg.cmp(&other.arg)
    }
}

impl fmt::Display for LogHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log({})", self.arg)
    }
}

/// A closed real interval.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn display(&self, digits: usize) -> String {
        format!("[{:.*}, {:.*}]", digits, self.lo, digits, self.hi)
    }
}

/// A point of projective space over Q, stored as coprime integers whose
/// first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ProjPointQ {
    coords: Vec<Int>,
}

impl ProjPointQ {
    pub fn new(coords: &[Rat]) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("projective point with all coordinates zero".into()));
        }
        let l = coords.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Int> = coords.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        Ok(Self::from_ints(ints))
    }

    /// Canonicalizes integer coordinates (not all zero).
    pub fn from_ints(mut ints: Vec<Int>) -> Self {
        let g = ints.iter().fold(Int::zero(), |acc, c| acc.gcd(c));
        assert!(!g.is_zero(), "projective point with all coordinates zero");
        let first_neg = ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        for c in ints.iter_mut() {
            *c = &*c / &g;
            if first_neg {
                *c = -&*c;
            }
        }
        ProjPointQ { coords: ints }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::from_ints(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn rat_coords(&self) -> Vec<Rat> {
        self.coords.iter().map(|c| Rat::from_integer(c.clone())).collect()
    }
}

impl fmt::Display for ProjPointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// Logarithmic height: `log max |x_i|` over the canonical coordinates.
pub fn h_proj_q(p: &ProjPointQ) -> LogHeight {
    let m = p.coords.iter().map(|c| c.abs()).max().expect("nonempty");
    LogHeight::log_int(m)
}

/// Height of arbitrary rational coordinates (not all zero), computed as the
/// product over contributing places of `max_i |x_i|_v`.
pub fn h_proj_q_by_places(coords: &[Rat]) -> Result<LogHeight> {
    let nonzero: Vec<&Rat> = coords.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::InvalidInput("projective point with all coordinates zero".into()));
    }
    let mut places = Vec::new();
    for c in &nonzero {
        places.extend(contributing_places(c)?);
    }
    places.sort();
    places.dedup();
    let mut prod = Rat::one();
    for v in &places {
        let m = nonzero.iter().map(|c| q_abs(c, v)).max().expect("nonempty");
        prod *= m;
    }
    Ok(LogHeight::log_of(prod))
}

/// All points of `P^n(Q)` of multiplicative height at most `bound`.
pub fn northcott_enumerate_q(n: usize, bound: u64) -> Vec<ProjPointQ> {
    let b = bound as i64;
    let mut out = Vec::new();
    let mut cur = vec![0i64; n + 1];
    // The first nonzero coordinate sits at index `lead` and ranges over 1..=b.
    for lead in 0..=n {
        fill(&mut cur, lead, lead, b, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<i64>, lead: usize, pos: usize, b: i64, out: &mut Vec<ProjPointQ>) {
    if pos == cur.len() {
        let g = cur.iter().fold(0i64, |acc, &c| acc.gcd(&c));
        if g == 1 {
            out.push(ProjPointQ {
                coords: cur.iter().map(|&c| Int::from(c)).collect(),
            });
        }
        return;
    }
    if pos < lead {
        cur[pos] = 0;
        fill(cur, lead, pos + 1, b, out);
        return;
    }
    let range = if pos == lead { 1..=b } else { -b..=b };
    for v in range {
        cur[pos] = v;
        fill(cur, lead, pos + 1, b, out);
    }
    cur[pos] = 0;
}

/// An algebraic number given by its minimal polynomial and the index of a
/// complex root under the ordering by real part, then imaginary part.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgebraicNumber {
    minpoly: Vec<Int>,
    root_index: usize,
}

impl AlgebraicNumber {
    pub fn new(minpoly: &UPoly<Rat>, root_index: usize) -> Result<Self> {
        if minpoly.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !is_irreducible_q(minpoly)? {
            return Err(Error::InvalidInput(format!("{minpoly} is not irreducible over Q")));
        }
        if root_index >= minpoly.deg() {
            return Err(Error::InvalidInput(format!(
                "root index {root_index} out of range for degree {}",
                minpoly.deg()
            )));
        }
        let (_, mut ints) = primitive_integer_part(minpoly);
        if ints.last().is_some_and(|c| c.is_negative()) {
            ints.iter_mut().for_each(|c| *c = -&*c);
        }
        Ok(AlgebraicNumber { minpoly: ints, root_index })
    }

    pub fn rational(x: &Rat) -> Self {
        AlgebraicNumber {
            minpoly: vec![-x.numer().clone(), x.denom().clone()],
            root_index: 0,
        }
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Integer coefficients, constant term first, positive leading coefficient.
    pub fn minpoly(&self) -> &[Int] {
        &self.minpoly
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    /// Floating approximation of the selected root.
    pub fn approx(&self) -> Result<Complex64> {
        Ok(sorted_roots(&self.minpoly)?[self.root_index])
    }
}

fn to_f64(n: &Int) -> Result<f64> {
    n.to_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::InvalidInput("coefficient too large for root finding".into()))
}

fn eval_c(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth-Ehrlich simultaneous iteration.
fn aberth(ints: &[Int]) -> Result<Vec<Complex64>> {
    let d = ints.len() - 1;
    let lc = to_f64(&ints[d])?;
    let coeffs: Vec<f64> = ints.iter().map(to_f64).collect::<Result<Vec<_>>>()?.iter().map(|c| c / lc).collect();
    // Cauchy bound for the starting circle.
    let r = 1.0 + coeffs[..d].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let r0 = r.min(coeffs[0].abs().powf(1.0 / d as f64).max(0.5));
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval_c(&coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    Ok(z)
}

fn sorted_roots(ints: &[Int]) -> Result<Vec<Complex64>> {
    let mut z = aberth(ints)?;
    z.sort_by(|a, b| {
        let ka = ((a.re * 1e9).round(), (a.im * 1e9).round());
        let kb = ((b.re * 1e9).round(), (b.im * 1e9).round());
        ka.partial_cmp(&kb).unwrap_or(Ordering::Equal)
    });
    Ok(z)
}

#[derive(Clone)]
struct CRat {
    re: Rat,
    im: Rat,
}

impl CRat {
    fn from_c(z: Complex64) -> Self {
        CRat {
            re: Rat::from_float(z.re).unwrap_or_else(Rat::zero),
            im: Rat::from_float(z.im).unwrap_or_else(Rat::zero),
        }
    }

    fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

/// Slack applied to every float produced from an exact quantity.
const ULP_PAD: f64 = 1e-13;

fn sqrt_up(r: &Rat) -> f64 {
    r.to_f64().expect("finite").sqrt() * (1.0 + ULP_PAD) + f64::MIN_POSITIVE
}

fn sqrt_down(r: &Rat) -> f64 {
    (r.to_f64().expect("finite").sqrt() * (1.0 - ULP_PAD)).max(0.0)
}

/// Certified enclosures `(|z_i|, r_i)`: every root lies in exactly one disk
/// of radius `r_i` around the approximation `z_i`.
fn certified_disks(ints: &[Int], approx: &[Complex64]) -> Result<Vec<(f64, f64, f64)>> {
    let d = approx.len();
    let zs: Vec<CRat> = approx.iter().map(|&z| CRat::from_c(z)).collect();
    let lc2 = Rat::from_integer(&ints[d] * &ints[d]);
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let mut p = CRat { re: Rat::zero(), im: Rat::zero() };
        for c in ints.iter().rev() {
            p = p.mul(&zs[i]);
            p.re += Rat::from_integer(c.clone());
        }
        let mut prod = Rat::one();
        for j in 0..d {
            if j != i {
                prod *= zs[i].sub(&zs[j]).norm_sqr();
            }
        }
        if prod.is_zero() {
            return Err(Error::VerificationFailed("coincident root approximations".into()));
        }
        let r2 = Rat::from_integer(Int::from((d * d) as u64)) * p.norm_sqr() / (&lc2 * prod);
        let absz = zs[i].norm_sqr();
        out.push((sqrt_down(&absz), sqrt_up(&absz), sqrt_up(&r2)));
    }
    for i in 0..d {
        for j in i + 1..d {
            let dist = sqrt_down(&zs[i].sub(&zs[j]).norm_sqr());
            if dist <= out[i].2 + out[j].2 {
                return Err(Error::VerificationFailed("root inclusion disks overlap".into()));
            }
        }
    }
    Ok(out)
}

/// Interval certainly containing the absolute logarithmic height
/// `(1/d)(log|a_d| + sum log max(1, |alpha_i|))`, of width at most `precision`.
pub fn alg_height(a: &AlgebraicNumber, precision: f64) -> Result<Interval> {
    if !(precision > 0.0) {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    if a.degree() == 1 {
        let m = a.minpoly.iter().map(|c| c.abs()).max().expect("nonempty");
        let v = ln_int(&m);
        let pad = (v.abs() * ULP_PAD + f64::MIN_POSITIVE).min(precision / 2.0);
        return Ok(Interval { lo: v - pad, hi: v + pad });
    }
    let d = a.degree() as f64;
    let disks = certified_disks(&a.minpoly, &aberth(&a.minpoly)?)?;
    let lead = ln_int(&a.minpoly[a.degree()]);
    let (mut lo, mut hi) = (lead * (1.0 - ULP_PAD), lead * (1.0 + ULP_PAD));
    for (zlo, zhi, r) in disks {
        lo += (zlo - r).max(1.0).ln() * (1.0 - ULP_PAD);
        hi += (zhi + r).max(1.0).ln() * (1.0 + ULP_PAD);
    }
    let out = Interval { lo: (lo / d).max(0.0), hi: hi / d };
    if out.width() > precision {
        return Err(Error::VerificationFailed(format!(
            "certified width {:.3e} exceeds requested precision {precision:.3e}",
            out.width()
        )));
    }
    Ok(out)
}

/// `h(nu_m(P))` for the degree-`m` Veronese embedding.
pub fn height_machine_veronese(m: u32, p: &ProjPointQ) -> Result<LogHeight> {
    if m == 0 {
        return Err(Error::InvalidInput("Veronese degree must be at least 1".into()));
    }
    let image = veronese(m, p.coords());
    Ok(h_proj_q(&ProjPointQ::from_ints(image)))
}

/// All degree-`m` monomials in the coordinates, in lexicographic exponent order.
pub fn veronese(m: u32, coords: &[Int]) -> Vec<Int> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; coords.len()];
    monomials(m, 0, &mut exps, &mut |e| {
        let v = e
            .iter()
            .zip(coords)
            .fold(Int::one(), |acc, (&k, c)| acc * num_traits::pow(c.clone(), k as usize));
        out.push(v);
    });
    out
}

pub(crate) fn monomials(left: u32, pos: usize, exps: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if pos + 1 == exps.len() {
        exps[pos] = left;
        f(exps);
        exps[pos] = 0;
        return;
    }
    for k in (0..=left).rev() {
        exps[pos] = k;
        monomials(left - k, pos + 1, exps, f);
    }
    exps[pos] = 0;
}
