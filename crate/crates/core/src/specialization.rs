//! Specialization maps `ψ_{u,i}: B → O_{K,S}` sending `z ↦ u` and `y` to a
//! root of `G(u)`, the gate polynomial that makes them well defined, and
//! rational reconstruction from specialized values.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::integer::prime_support;
use crate::exact::linalg::{charpoly, nullspace};
use crate::exact::{factor_q, CoefField, Frac, MPoly, NfElem, NumberField, UPoly};
use crate::fg_domain::{elem_mul, DomainElem, DomainPresentation};
use crate::heights_ff::QRatFunc;
use crate::heights_nf::QPlace;
use crate::scalar::{Field, Int, Rat};

/// `H = G_0 · disc_x(G) · f`, made primitive with positive leading
/// coefficient. `G_0` is the constant coefficient of `G` in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GatePoly {
    pub h: MPoly,
}

impl GatePoly {
    pub fn vanishes_at(&self, u: &[i64]) -> bool {
        self.h.eval_int(u).is_zero()
    }
}

pub fn gate_poly(pres: &DomainPresentation) -> GatePoly {
    if pres.d() == 1 {
        return GatePoly {
            h: pres.f().primitive_part(),
        };
    }
    let q = pres.q();
    let g0 = pres.g_coeffs().swap_remove(0);
    let map: Vec<usize> = (0..q).chain(std::iter::once(0)).collect();
    let disc = MPoly::discriminant(pres.g(), q).remap(q, &map);
    GatePoly {
        h: (&(&g0 * &disc) * pres.f()).primitive_part(),
    }
}

/// Integer points in `[−N, N]^q` where the gate does not vanish, in
/// lexicographic order.
pub fn admissible_points(pres: &DomainPresentation, n: u64) -> Vec<Vec<i64>> {
    let gate = gate_poly(pres);
    let n = n as i64;
    let mut out = Vec::new();
    let mut u = vec![-n; pres.q()];
    loop {
        if !gate.vanishes_at(&u) {
            out.push(u.clone());
        }
        let mut k = pres.q();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if u[k] < n {
                u[k] += 1;
                break;
            }
            u[k] = -n;
        }
    }
}

/// Target of `ψ_{u,i}`: the field `K_{u,i}`, the image `y_{u,i}` of `y` and
/// the place set `S_{u,i}`.
#[derive(Clone, Debug)]
pub struct SpecTarget {
    pub field: CoefField,
    pub y: NfElem,
    /// `∞` first, then primes in increasing order.
    pub s: Vec<QPlace>,
    pub u: Vec<i64>,
    pub i: usize,
    /// Primes put into `S` only because `y_{u,i}` failed to be integral.
    /// Always empty for a valid presentation.
    pub y_clause_primes: Vec<Int>,
}

impl SpecTarget {
    pub fn finite_primes(&self) -> Vec<Int> {
        self.s
            .iter()
            .filter_map(|p| match p {
                QPlace::Finite(p) => Some(p.clone()),
                QPlace::Infinite => None,
            })
            .collect()
    }

    pub fn minpoly(&self) -> UPoly<Rat> {
        match &self.field {
            CoefField::Rationals => UPoly::linear_root(self.y.as_rat().unwrap_or_else(Rat::one)),
            CoefField::NumberField(k) => k.minpoly().clone(),
        }
    }
}

impl fmt::Display for SpecTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(ToString::to_string).collect();
        match &self.field {
            CoefField::Rationals => write!(f, "Q, S = {{{}}}", s.join(", ")),
            CoefField::NumberField(k) => write!(f, "Q[a]/({}), S = {{{}}}", k.minpoly(), s.join(", ")),
        }
    }
}

fn rats(u: &[i64]) -> Vec<Rat> {
    u.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

/// Roots of `G(u)` are indexed as: rational roots ascending, then the roots
/// of each nonlinear irreducible factor in factor order. Conjugate roots of
/// one factor share the abstract generator of `ℚ[x]/(factor)`.
pub fn spec_target(pres: &DomainPresentation, u: &[i64], i: usize) -> Result<SpecTarget> {
    if u.len() != pres.q() {
        return Err(Error::InvalidInput(format!("expected {} coordinates, got {}", pres.q(), u.len())));
    }
    if i >= pres.d() {
        return Err(Error::InvalidInput(format!("root index {i} out of range for degree {}", pres.d())));
    }
    if gate_poly(pres).vanishes_at(u) {
        return Err(Error::GateViolated);
    }
    let ur = rats(u);
    let (field, y, factor) = if pres.d() == 1 {
        (CoefField::Rationals, NfElem::rational(Rat::one()), UPoly::linear_root(Rat::one()))
    } else {
        let fac = factor_q(&pres.g_at(&ur))?;
        let mut linear: Vec<Rat> = Vec::new();
        let mut nonlinear: Vec<UPoly<Rat>> = Vec::new();
        for (g, _) in fac.factors {
            if g.deg() == 1 {
                linear.push(-g.coeff(0) / g.coeff(1));
            } else {
                nonlinear.push(g);
            }
        }
        linear.sort();
        if i < linear.len() {
            let r = linear[i].clone();
            (CoefField::Rationals, NfElem::rational(r.clone()), UPoly::linear_root(r))
        } else {
            let mut k = i - linear.len();
            let g = nonlinear
                .into_iter()
                .find(|g| {
                    if k < g.deg() {
                        true
                    } else {
                        k -= g.deg();
                        false
                    }
                })
                .ok_or_else(|| Error::InvalidInput(format!("root index {i} out of range")))?;
            let nf = NumberField::new(g.clone())?;
            (CoefField::NumberField(nf.clone()), nf.generator(), g)
        }
    };
    let fu = pres.f().eval(&ur).to_integer();
    let mut primes = prime_support(&fu)?;
    // y is a root of the monic integer G(u), so its factor is integral too.
    let mut y_clause_primes = Vec::new();
    let den = factor
        .coeffs()
        .iter()
        .fold(Int::one(), |l, c| l.lcm(c.denom()));
    if !den.is_one() {
        for p in prime_support(&den)? {
            if !primes.contains(&p) {
                y_clause_primes.push(p.clone());
                primes.push(p);
            }
        }
    }
    primes.sort();
    let s = std::iter::once(QPlace::Infinite)
        .chain(primes.into_iter().map(QPlace::Finite))
        .collect();
    Ok(SpecTarget {
        field,
        y,
        s,
        u: u.to_vec(),
        i,
        y_clause_primes,
    })
}

#[derive(Clone, Debug)]
pub struct SpecMap {
    pub presentation: DomainPresentation,
    pub target: SpecTarget,
}

impl SpecMap {
    pub fn new(pres: &DomainPresentation, u: &[i64], i: usize) -> Result<Self> {
        Ok(SpecMap {
            presentation: pres.clone(),
            target: spec_target(pres, u, i)?,
        })
    }
}

/// Whether every irreducible factor of `q` (integer primes included)
/// divides `f`.
pub fn radical_divides(q: &MPoly, f: &MPoly) -> bool {
    let mut c = q.int_content();
    let cf = f.int_content();
    loop {
        let g = c.gcd(&cf);
        if g.is_one() {
            break;
        }
        while (&c % &g).is_zero() {
            c /= &g;
        }
    }
    if !c.is_one() {
        return false;
    }
    let mut r = q.primitive_part();
    let fp = f.primitive_part();
    loop {
        let g = MPoly::gcd(&r, &fp);
        if g.is_constant() {
            break;
        }
        while let Some(x) = r.div_exact(&g) {
            r = x;
        }
    }
    r.is_constant()
}

pub fn in_b(pres: &DomainPresentation, a: &DomainElem) -> bool {
    radical_divides(a.den(), pres.f())
}

/// `ψ_{u,i}(α) = (Σ P_j(u) y_{u,i}ʲ) / Q(u)`.
pub fn specialize(a: &DomainElem, m: &SpecMap) -> Result<NfElem> {
    let pres = &m.presentation;
    if gate_poly(pres).vanishes_at(&m.target.u) {
        return Err(Error::GateViolated);
    }
    if !in_b(pres, a) {
        return Err(Error::NotInB);
    }
    let u: Vec<NfElem> = rats(&m.target.u).into_iter().map(NfElem::rational).collect();
    a.eval_with(&u, &m.target.y).ok_or(Error::GateViolated)
}

/// Whether `x` lies in `ℤ_S[y]`: its coordinates on the power basis have
/// denominators supported on `S`. This implies `S`-integrality.
pub fn is_s_integral(x: &NfElem, s: &[QPlace]) -> Result<bool> {
    let den = x
        .rep()
        .coeffs()
        .iter()
        .fold(Int::one(), |l, c| l.lcm(c.denom()));
    if den.is_one() {
        return Ok(true);
    }
    Ok(prime_support(&den)?
        .into_iter()
        .all(|p| s.contains(&QPlace::Finite(p))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

/// Checks that each listed constant `β ∈ B` is algebraic over ℚ and that its
/// minimal polynomial annihilates `ψ(β)`.
pub fn injectivity_check(m: &SpecMap, embedded: &[DomainElem]) -> Result<InjectivityReport> {
    let pres = &m.presentation;
    let d = pres.d();
    let mut diagnostics = Vec::new();
    for (idx, b) in embedded.iter().enumerate() {
        if !b.den().is_constant() || b.nums().iter().any(|p| !p.is_constant()) {
            diagnostics.push(format!("element {idx} ({b}) depends on the transcendental generators"));
            continue;
        }
        // multiplication by β on the basis 1, y, …, y^{d−1} of L over ℚ(z)
        let mut mat: Vec<Vec<Frac>> = vec![vec![Frac::zero(); d]; d];
        for j in 0..d {
            let mut nums = vec![MPoly::zero(pres.q()); d];
            nums[j] = MPoly::one(pres.q());
            let yj = crate::fg_domain::elem_normalize(MPoly::one(pres.q()), nums)?;
            let col = elem_mul(pres, b, &yj)?;
            for (r, p) in col.nums().iter().enumerate() {
                mat[r][j] = Frac::new(p.clone(), col.den().clone());
            }
        }
        let chi = charpoly(&mat);
        let Some(chi_q): Option<Vec<Rat>> = chi.iter().map(Field::as_rat).collect() else {
            diagnostics.push(format!("element {idx} ({b}) is not algebraic over Q"));
            continue;
        };
        let mu = UPoly::new(chi_q).squarefree_part();
        let img = specialize(b, m)?;
        let val = mu
            .coeffs()
            .iter()
            .rev()
            .fold(NfElem::zero(), |acc, c| acc * img.clone() + NfElem::rational(c.clone()));
        if !val.is_zero() {
            diagnostics.push(format!("element {idx}: image {img} is not a root of {mu}"));
        }
    }
    Ok(InjectivityReport {
        ok: diagnostics.is_empty(),
        diagnostics,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Reconstruction {
    Found(QRatFunc),
    Inconsistent,
}

/// Cauchy interpolation: the unique `p/q` with `deg p, deg q ≤ deg_b` through
/// all samples, found from the kernel of `q(u)·v − p(u) = 0` and re-checked.
pub fn rational_reconstruct(samples: &[(i64, Rat)], deg_b: usize) -> Result<Reconstruction> {
    let needed = 2 * deg_b + 1;
    if samples.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            got: samples.len(),
        });
    }
    let mut us: Vec<i64> = samples.iter().map(|s| s.0).collect();
    us.sort_unstable();
    us.dedup();
    if us.len() != samples.len() {
        return Err(Error::InvalidInput("sample points must be distinct".into()));
    }
    let k = deg_b + 1;
    let rows: Vec<Vec<Rat>> = samples
        .iter()
        .map(|(u, v)| {
            let u = Rat::from_integer((*u).into());
            let mut row = Vec::with_capacity(2 * k);
            let mut pw = Rat::one();
            let mut powers = Vec::with_capacity(k);
            for _ in 0..k {
                powers.push(pw.clone());
                pw *= &u;
            }
            row.extend(powers.iter().map(|x| -x.clone()));
            row.extend(powers.iter().map(|x| x * v));
            row
        })
        .collect();
    let Some(sol) = nullspace(&rows, 2 * k).into_iter().next() else {
        return Ok(Reconstruction::Inconsistent);
    };
    let p = UPoly::new(sol[..k].to_vec());
    let q = UPoly::new(sol[k..].to_vec());
    if q.is_zero() {
        return Ok(Reconstruction::Inconsistent);
    }
    let r = QRatFunc::new(p, q)?;
    let fits = samples
        .iter()
        .all(|(u, v)| r.eval(&Rat::from_integer((*u).into())).as_ref() == Some(v));
    Ok(if fits {
        Reconstruction::Found(r)
    } else {
        Reconstruction::Inconsistent
    })
}

/// Shorthand for `k` as an `Arc<NumberField>` when the target is one.
pub fn target_number_field(t: &SpecTarget) -> Option<&Arc<NumberField>> {
    match &t.field {
        CoefField::NumberField(k) => Some(k),
        CoefField::Rationals => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn t() -> MPoly {
        MPoly::var(1, 0)
    }

    fn loc(f: MPoly) -> DomainPresentation {
        DomainPresentation::localization(f, vec!["t".into()]).unwrap()
    }

    fn sqrt_z(f: MPoly) -> DomainPresentation {
        let g = MPoly::from_int_terms(2, &[(&[0, 2], 1), (&[1, 0], -1)]);
        DomainPresentation::new(1, 2, g, f, vec!["z".into()]).unwrap()
    }

    fn one_plus_t2() -> MPoly {
        &t().pow(2) + &MPoly::one(1)
    }

    fn t_one_minus_t() -> MPoly {
        &t() - &t().pow(2)
    }

    #[test]
    fn gate_examples() {
        assert_eq!(gate_poly(&loc(one_plus_t2())).h, one_plus_t2());
        assert_eq!(gate_poly(&sqrt_z(MPoly::one(1))).h, t().pow(2));
        let g = MPoly::from_int_terms(2, &[(&[0, 2], 1), (&[0, 0], -1)]);
        let pres = DomainPresentation::new(1, 2, g, t(), vec!["z".into()]).unwrap();
        assert_eq!(gate_poly(&pres).h, t());
    }

    #[test]
    fn admissible_examples() {
        assert_eq!(admissible_points(&loc(one_plus_t2()), 2).len(), 5);
        assert_eq!(admissible_points(&loc(t()), 1), vec![vec![-1], vec![1]]);
        assert_eq!(
            admissible_points(&loc(t_one_minus_t()), 2),
            vec![vec![-2], vec![-1], vec![2]]
        );
    }

    #[test]
    fn targets() {
        let s = spec_target(&loc(one_plus_t2()), &[3], 0).unwrap();
        assert_eq!(s.finite_primes(), vec![Int::from(2), Int::from(5)]);
        let s = spec_target(&loc(t_one_minus_t()), &[2], 0).unwrap();
        assert_eq!(s.finite_primes(), vec![Int::from(2)]);
        let s = spec_target(&sqrt_z(MPoly::one(1)), &[2], 0).unwrap();
        assert_eq!(s.minpoly(), UPoly::from_rats(&[rat(-2), rat(0), rat(1)]));
        assert!(s.y_clause_primes.is_empty());
        assert!(matches!(spec_target(&loc(t()), &[0], 0), Err(Error::GateViolated)));
    }

    #[test]
    fn specialize_examples() {
        let pres = loc(one_plus_t2());
        let a = DomainElem::fraction(&pres, MPoly::one(1), one_plus_t2()).unwrap();
        let m = SpecMap::new(&pres, &[1], 0).unwrap();
        assert_eq!(specialize(&a, &m).unwrap(), NfElem::rational(ratio(1, 2)));
        assert_eq!(m.target.finite_primes(), vec![Int::from(2)]);
        let cube = DomainElem::from_poly(&pres, t().pow(3));
        let m2 = SpecMap::new(&pres, &[2], 0).unwrap();
        assert_eq!(specialize(&cube, &m2).unwrap(), NfElem::rational(rat(8)));
        let bad = DomainElem::fraction(&pres, MPoly::one(1), t()).unwrap();
        assert!(matches!(specialize(&bad, &m), Err(Error::NotInB)));
        let half = DomainElem::from_rat(&pres, &ratio(1, 2));
        assert!(matches!(specialize(&half, &m), Err(Error::NotInB)));

        let pres = sqrt_z(MPoly::one(1));
        let y = DomainElem::y(&pres).unwrap();
        let m = SpecMap::new(&pres, &[4], 1).unwrap();
        assert_eq!(specialize(&y, &m).unwrap(), NfElem::rational(rat(2)));
        let m = SpecMap::new(&pres, &[4], 0).unwrap();
        assert_eq!(specialize(&y, &m).unwrap(), NfElem::rational(rat(-2)));
    }

    #[test]
    fn injectivity() {
        let pres = loc(&t() * &MPoly::from_int(1, 2));
        let m = SpecMap::new(&pres, &[3], 0).unwrap();
        let half = DomainElem::fraction(&pres, MPoly::one(1), MPoly::from_int(1, 2)).unwrap();
        assert!(injectivity_check(&m, &[half]).unwrap().ok);
        let report = injectivity_check(&m, &[DomainElem::from_poly(&pres, t())]).unwrap();
        assert!(!report.ok && report.diagnostics.len() == 1);

        let g = MPoly::from_int_terms(2, &[(&[0, 2], 1), (&[0, 0], -2)]);
        let pres = DomainPresentation::new(1, 2, g, MPoly::one(1), vec!["z".into()]).unwrap();
        let m = SpecMap::new(&pres, &[5], 0).unwrap();
        assert!(injectivity_check(&m, &[DomainElem::y(&pres).unwrap()]).unwrap().ok);
        let sz = sqrt_z(MPoly::one(1));
        let m = SpecMap::new(&sz, &[2], 0).unwrap();
        assert!(!injectivity_check(&m, &[DomainElem::y(&sz).unwrap()]).unwrap().ok);
    }

    #[test]
    fn reconstruction_examples() {
        let target = QRatFunc::new(
            UPoly::from_rats(&[rat(0), rat(1)]),
            UPoly::from_rats(&[rat(1), rat(0), rat(1)]),
        )
        .unwrap();
        let samples: Vec<(i64, Rat)> = (-2..=2)
            .map(|u| (u, target.eval(&rat(u)).unwrap()))
            .collect();
        assert_eq!(rational_reconstruct(&samples, 2).unwrap(), Reconstruction::Found(target));
        let fives: Vec<(i64, Rat)> = (0..3).map(|u| (u, rat(5))).collect();
        assert_eq!(
            rational_reconstruct(&fives, 1).unwrap(),
            Reconstruction::Found(QRatFunc::constant(rat(5)))
        );
        // three points always admit a degree-one interpolant: −2t/(t − 3)
        let sq: Vec<(i64, Rat)> = (0..3).map(|u| (u, rat(u * u))).collect();
        let expect = QRatFunc::new(
            UPoly::from_rats(&[rat(0), rat(-2)]),
            UPoly::from_rats(&[rat(-3), rat(1)]),
        )
        .unwrap();
        assert_eq!(rational_reconstruct(&sq, 1).unwrap(), Reconstruction::Found(expect));
        let sq5: Vec<(i64, Rat)> = (0..5).map(|u| (u, rat(u * u))).collect();
        assert_eq!(rational_reconstruct(&sq5, 1).unwrap(), Reconstruction::Inconsistent);
        assert!(matches!(
            rational_reconstruct(&sq, 2),
            Err(Error::InsufficientSamples { needed: 5, got: 3 })
        ));
    }
}
