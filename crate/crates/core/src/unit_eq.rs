//! The unit equation `u + v = 1` in `B = ℤ[t][1/f]`: an exhaustive solver
//! driven by the Mason–Stothers degree bound, and the specialization report
//! that pushes its solutions down to `S`-unit equations over ℚ.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::integer::prime_support;
use crate::exact::{factor_q, MPoly, UPoly};
use crate::fg_domain::{deg_bar, elem_add, DomainElem, DomainPresentation};
use crate::heights_ff::QRatFunc;
use crate::specialization::{admissible_points, rational_reconstruct, specialize, Reconstruction, SpecMap};
use crate::scalar::{Int, Rat};

/// `u + v = 1` over `ℤ[t][1/f]` with `f` primitive.
#[derive(Clone, Debug)]
pub struct UnitEqProblem {
    pres: DomainPresentation,
    /// Distinct irreducible factors of `f`, primitive with positive leading
    /// coefficient, in factorization order.
    factors: Vec<MPoly>,
}

fn check_primitive(f: &UPoly<Rat>) -> Result<MPoly> {
    if f.is_zero() {
        return Err(Error::InvalidInput("f must be nonzero".into()));
    }
    let m = MPoly::from_upoly(f, 0, 1);
    if !m.has_integer_coeffs() || !m.int_content().is_one() {
        return Err(Error::NonPrimitive(f.to_string()));
    }
    Ok(m)
}

impl UnitEqProblem {
    pub fn new(f: &UPoly<Rat>) -> Result<Self> {
        let fm = check_primitive(f)?;
        let factors = factor_q(f)?
            .factors
            .into_iter()
            .map(|(g, _)| MPoly::from_upoly(&g, 0, 1).primitive_part())
            .collect();
        let pres = DomainPresentation::localization(fm, vec!["t".into()])?;
        Ok(UnitEqProblem { pres, factors })
    }

    pub fn presentation(&self) -> &DomainPresentation {
        &self.pres
    }

    pub fn factors(&self) -> &[MPoly] {
        &self.factors
    }

    /// `s′`: distinct roots of `f` over `ℚ̄` plus the place at infinity.
    pub fn support_size(&self) -> u64 {
        self.factors.iter().map(|g| g.total_degree() as u64).sum::<u64>() + 1
    }

    /// `max(0, 2s′ − 2)`.
    pub fn degree_bound(&self) -> u64 {
        (2 * self.support_size()).saturating_sub(2)
    }

    /// `sign · ∏ g_i^{a_i}`.
    pub fn unit(&self, sign: i8, exps: &[i64]) -> DomainElem {
        let (num, den) = self.unit_parts(sign, exps);
        DomainElem::fraction(&self.pres, num, den).expect("nonzero denominator")
    }

    fn unit_parts(&self, sign: i8, exps: &[i64]) -> (MPoly, MPoly) {
        let mut num = MPoly::from_int(1, sign as i64);
        let mut den = MPoly::one(1);
        for (g, &a) in self.factors.iter().zip(exps) {
            if a > 0 {
                num = &num * &g.pow(a as u32);
            } else if a < 0 {
                den = &den * &g.pow((-a) as u32);
            }
        }
        (num, den)
    }

    /// Writes `w` as `sign · ∏ g_i^{b_i}` with `b_i ≥ 0`, if possible.
    fn factor_unit_poly(&self, w: &MPoly) -> Option<(i8, Vec<i64>)> {
        if w.is_zero() {
            return None;
        }
        let mut rest = w.clone();
        let mut exps = Vec::with_capacity(self.factors.len());
        for g in &self.factors {
            let k = rest.multiplicity(g);
            rest = rest.div_exact(&g.pow(k)).expect("multiplicity divides");
            exps.push(k as i64);
        }
        let c = rest.constant_value()?;
        if c.is_one() {
            Some((1, exps))
        } else if c == -Rat::one() {
            Some((-1, exps))
        } else {
            None
        }
    }
}

/// `{−1} ∪ {g_1, …, g_s}` for primitive `f`.
pub fn unit_group_generators(f: &UPoly<Rat>) -> Result<Vec<DomainElem>> {
    let prob = UnitEqProblem::new(f)?;
    let mut out = vec![DomainElem::from_rat(&prob.pres, &-Rat::one())];
    out.extend(prob.factors.iter().map(|g| DomainElem::from_poly(&prob.pres, g.clone())));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitSolution {
    pub u: DomainElem,
    pub v: DomainElem,
    pub u_sign: i8,
    pub u_exponents: Vec<i64>,
    pub v_sign: i8,
    pub v_exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCertificate {
    /// Every exponent vector with `h_F(u)` at most this was tried.
    pub height_bound: u64,
    pub exponent_box: i64,
    pub candidates_examined: u64,
}

#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub solutions: Vec<UnitSolution>,
    pub degree_bound_used: u64,
    pub search: SearchCertificate,
}

/// All exponent vectors in `[−r, r]^s`, lexicographic.
fn exponent_box(s: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|e| {
                (-r..=r).map(move |a| {
                    let mut e2 = e.clone();
                    e2.push(a);
                    e2
                })
            })
            .collect();
    }
    out
}

/// Complete list of solutions, sorted by exponent vector of `u` and then by
/// sign (`+` first).
pub fn unit_equation_solve(prob: &UnitEqProblem) -> Result<SolutionSet> {
    let bound = prob.degree_bound();
    let degs: Vec<i64> = prob.factors.iter().map(|g| g.total_degree() as i64).collect();
    // each factor has degree ≥ 1, so |a_i| ≤ bound
    let r = bound as i64;
    let mut examined = 0u64;
    let mut solutions = Vec::new();
    for exps in exponent_box(prob.factors.len(), r) {
        let pos: i64 = exps.iter().zip(&degs).filter(|(a, _)| **a > 0).map(|(a, d)| a * d).sum();
        let neg: i64 = exps.iter().zip(&degs).filter(|(a, _)| **a < 0).map(|(a, d)| -a * d).sum();
        if pos.max(neg) as u64 > bound {
            continue;
        }
        for sign in [1i8, -1] {
            examined += 1;
            let (num, den) = prob.unit_parts(sign, &exps);
            let w = &den - &num;
            let Some((v_sign, mut v_exps)) = prob.factor_unit_poly(&w) else {
                continue;
            };
            for (b, a) in v_exps.iter_mut().zip(&exps) {
                *b -= (-a).max(0);
            }
            let u = prob.unit(sign, &exps);
            let v = prob.unit(v_sign, &v_exps);
            let sum = elem_add(&u, &v)?;
            if sum != DomainElem::one(&prob.pres) {
                return Err(Error::VerificationFailed(format!("{u} + {v} != 1")));
            }
            solutions.push(UnitSolution {
                u,
                v,
                u_sign: sign,
                u_exponents: exps.clone(),
                v_sign,
                v_exponents: v_exps,
            });
        }
    }
    Ok(SolutionSet {
        solutions,
        degree_bound_used: bound,
        search: SearchCertificate {
            height_bound: bound,
            exponent_box: r,
            candidates_examined: examined,
        },
    })
}

/// `P_0 / Q` of a `d = 1` element as a rational function in `t`.
pub fn as_ratfunc(a: &DomainElem) -> Result<QRatFunc> {
    let conv = |p: &MPoly| {
        p.to_upoly(0)
            .ok_or_else(|| Error::InvalidInput("expected a polynomial in one variable".into()))
    };
    QRatFunc::new(conv(&a.nums()[0])?, conv(a.den())?)
}

fn supported_on(x: &Int, s: &[Int]) -> Result<bool> {
    if x.abs().is_one() {
        return Ok(true);
    }
    Ok(prime_support(x)?.iter().all(|p| s.contains(p)))
}

/// Whether numerator and denominator of `x` are `S`-units.
pub fn is_s_unit(x: &Rat, s_primes: &[Int]) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    Ok(supported_on(x.numer(), s_primes)? && supported_on(x.denom(), s_primes)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineRow {
    pub solution: usize,
    pub point: i64,
    pub u_value: Rat,
    pub v_value: Rat,
    pub s_primes: Vec<Int>,
    pub sums_to_one: bool,
    pub s_units: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionCheck {
    pub solution: usize,
    pub points: Vec<i64>,
    pub recovered_u: bool,
    pub recovered_v: bool,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct PipelineReport {
    pub rows: Vec<PipelineRow>,
    pub reconstructions: Vec<ReconstructionCheck>,
}

impl PipelineReport {
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.sums_to_one && r.s_units)
            && self.reconstructions.iter().all(|c| c.recovered_u && c.recovered_v)
    }
}

fn recovers(a: &DomainElem, points: &[i64], pres: &DomainPresentation, deg_b: usize) -> Result<bool> {
    let mut samples = Vec::with_capacity(points.len());
    for &p in points {
        let m = SpecMap::new(pres, &[p], 0)?;
        let val = specialize(a, &m)?.as_rat_value()?;
        samples.push((p, val));
    }
    Ok(match rational_reconstruct(&samples, deg_b)? {
        Reconstruction::Found(r) => r == as_ratfunc(a)?,
        Reconstruction::Inconsistent => false,
    })
}

/// Specializes every solution at every admissible integer in `[−n, n]` and
/// re-verifies the `S`-unit equation there; then recovers each solution by
/// interpolation from `2·deḡ + 1` admissible points.
pub fn pipeline_report(prob: &UnitEqProblem, set: &SolutionSet, n: u64) -> Result<PipelineReport> {
    let pres = &prob.pres;
    let points = admissible_points(pres, n);
    let mut report = PipelineReport::default();
    for (k, sol) in set.solutions.iter().enumerate() {
        for u in &points {
            let m = SpecMap::new(pres, u, 0)?;
            let uv = specialize(&sol.u, &m)?.as_rat_value()?;
            let vv = specialize(&sol.v, &m)?.as_rat_value()?;
            let s_primes = m.target.finite_primes();
            report.rows.push(PipelineRow {
                solution: k,
                point: u[0],
                sums_to_one: (&uv + &vv).is_one(),
                s_units: is_s_unit(&uv, &s_primes)? && is_s_unit(&vv, &s_primes)?,
                u_value: uv,
                v_value: vv,
                s_primes,
            });
        }
    }
    for (k, sol) in set.solutions.iter().enumerate() {
        let deg_b = deg_bar(&sol.u)?.max(deg_bar(&sol.v)?) as usize;
        let needed = 2 * deg_b + 1;
        let mut radius = n.max(1);
        let mut pts = admissible_points(pres, radius);
        while pts.len() < needed {
            radius += 1;
            pts = admissible_points(pres, radius);
        }
        let chosen: Vec<i64> = pts.iter().take(needed).map(|u| u[0]).collect();
        report.reconstructions.push(ReconstructionCheck {
            solution: k,
            recovered_u: recovers(&sol.u, &chosen, pres, deg_b)?,
            recovered_v: recovers(&sol.v, &chosen, pres, deg_b)?,
            points: chosen,
        });
    }
    Ok(report)
}

trait RatValue {
    fn as_rat_value(&self) -> Result<Rat>;
}

impl RatValue for crate::exact::NfElem {
    fn as_rat_value(&self) -> Result<Rat> {
        crate::Field::as_rat(self)
            .ok_or_else(|| Error::VerificationFailed("expected a rational specialization".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn qp(cs: &[i64]) -> UPoly<Rat> {
        UPoly::from_rats(&cs.iter().map(|&c| rat(c)).collect::<Vec<_>>())
    }

    #[test]
    fn generators() {
        let g = unit_group_generators(&qp(&[1, 0, 1])).unwrap();
        assert_eq!(g.len(), 2);
        let g = unit_group_generators(&qp(&[0, 1, -1])).unwrap();
        let mut shown: Vec<String> = g.iter().map(ToString::to_string).collect();
        shown.sort();
        assert_eq!(shown, vec!["-1", "z1", "z1 - 1"]);
        assert!(matches!(unit_group_generators(&qp(&[0, 2])), Err(Error::NonPrimitive(_))));
    }

    #[test]
    fn solutions_for_t_one_minus_t() {
        let prob = UnitEqProblem::new(&qp(&[0, 1, -1])).unwrap();
        assert_eq!(prob.degree_bound(), 4);
        let set = unit_equation_solve(&prob).unwrap();
        assert_eq!(set.solutions.len(), 6);
        let t = MPoly::var(1, 0);
        let one = MPoly::one(1);
        let pres = prob.presentation();
        let expected = [
            DomainElem::from_poly(pres, t.clone()),
            DomainElem::from_poly(pres, &one - &t),
            DomainElem::fraction(pres, one.clone(), t.clone()).unwrap(),
            DomainElem::fraction(pres, one.clone(), &one - &t).unwrap(),
            DomainElem::fraction(pres, t.clone(), &t - &one).unwrap(),
            DomainElem::fraction(pres, &t - &one, t.clone()).unwrap(),
        ];
        for e in &expected {
            assert!(set.solutions.iter().any(|s| &s.u == e), "missing {e}");
        }
        let report = pipeline_report(&prob, &set, 3).unwrap();
        assert_eq!(report.rows.len(), 30);
        assert!(report.all_verified());
        let row = report
            .rows
            .iter()
            .find(|r| set.solutions[r.solution].u == expected[0] && r.point == 2)
            .unwrap();
        assert_eq!((row.u_value.clone(), row.v_value.clone()), (rat(2), rat(-1)));
        assert_eq!(row.s_primes, vec![Int::from(2)]);
    }

    #[test]
    fn no_solutions() {
        for f in [qp(&[1, 0, 1]), qp(&[0, 1])] {
            let prob = UnitEqProblem::new(&f).unwrap();
            let set = unit_equation_solve(&prob).unwrap();
            assert!(set.solutions.is_empty());
            assert!(pipeline_report(&prob, &set, 2).unwrap().rows.is_empty());
        }
    }
}
