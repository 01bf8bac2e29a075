//! Divisors on `P^n` supported on hypersurfaces: Riemann-Roch spaces,
//! strata of the component arrangement, and certificates that a divisor is
//! very large (for every stratum a basis of `L(D)` whose product vanishes
//! along each component through that stratum).
//!
//! On `P^1` the affine coordinate is `t = x0/x1`; the point `[a]` is the
//! zero set of `x0 - a x1` and `[inf]` that of `x1`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::linalg::{rank, Echelon};
use crate::exact::{factor_q, CoefField, MPoly, NfElem, NumberField, UPoly};
use crate::heights_ff::LinearForm;
use crate::heights_nf::monomials;
use crate::scalar::{Field, Rat};

#[derive(Clone, PartialEq, Debug)]
pub struct Component {
    pub form: MPoly,
    pub mult: u32,
}

/// `sum a_i E_i` on `P^n` with irreducible homogeneous forms `E_i` in
/// `n + 1` variables.
#[derive(Clone, PartialEq, Debug)]
pub struct HypersurfaceDivisor {
    n: usize,
    components: Vec<Component>,
}

impl HypersurfaceDivisor {
    /// Forms are replaced by their primitive parts. Irreducibility is checked
    /// for linear forms (trivially) and for binary forms; other forms are
    /// taken on trust.
    pub fn new(n: usize, comps: Vec<(MPoly, u32)>) -> Result<Self> {
        let mut components: Vec<Component> = Vec::new();
        for (form, mult) in comps {
            if form.nvars() != n + 1 {
                return Err(Error::InvalidInput(format!(
                    "form {form} must have {} variables",
                    n + 1
                )));
            }
            if form.is_constant() || !form.is_homogeneous() {
                return Err(Error::InvalidInput(format!("{form} is not a nonconstant form")));
            }
            if mult == 0 {
                return Err(Error::InvalidInput("multiplicities must be positive".into()));
            }
            let form = form.primitive_part();
            if n == 1 && form.total_degree() > 1 {
                let u = dehomogenize_binary(&form);
                let fs = factor_q(&u)?.factors;
                if u.deg() as u32 != form.total_degree() || fs.len() != 1 || fs[0].1 != 1 {
                    return Err(Error::InvalidInput(format!("{form} is not irreducible")));
                }
            }
            if components.iter().any(|c| c.form == form) {
                return Err(Error::InvalidInput(format!("component {form} listed twice")));
            }
            components.push(Component { form, mult });
        }
        Ok(HypersurfaceDivisor { n, components })
    }

    /// Divisor on `P^1` from points `[a]` (`Some(a)`) or `[inf]` (`None`).
    pub fn p1(points: &[(Option<Rat>, u32)]) -> Result<Self> {
        Self::new(1, points.iter().map(|(a, m)| (p1_form(a.as_ref()), *m)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(|c| c.mult * c.form.total_degree()).sum()
    }

    pub fn denominator(&self) -> MPoly {
        self.components
            .iter()
            .fold(MPoly::one(self.n + 1), |acc, c| &acc * &c.form.pow(c.mult))
    }

    pub fn support(&self) -> Vec<MPoly> {
        self.components.iter().map(|c| c.form.clone()).collect()
    }

    /// Same support with new multiplicities.
    pub fn with_multiplicities(&self, b: &[u32]) -> Result<Self> {
        if b.len() != self.components.len() {
            return Err(Error::InvalidInput("one multiplicity per component".into()));
        }
        Self::new(self.n, self.components.iter().zip(b).map(|(c, &m)| (c.form.clone(), m)).collect())
    }

    fn is_hyperplane_arrangement(&self) -> bool {
        self.components.iter().all(|c| c.form.total_degree() == 1)
    }
}

/// The form cutting out `[a]` or `[inf]` on `P^1`.
pub fn p1_form(a: Option<&Rat>) -> MPoly {
    let x0 = MPoly::var(2, 0);
    let x1 = MPoly::var(2, 1);
    match a {
        None => x1,
        Some(a) => (&x0 - &x1.scale(a)).primitive_part(),
    }
}

fn dehomogenize_binary(f: &MPoly) -> UPoly<Rat> {
    f.partial_eval(1, &Rat::one()).to_upoly(0).expect("binary form")
}

/// `L(D) = { g / prod E_i^a_i : g a form of degree deg D }` with the
/// monomial basis, `x0^m` first.
#[derive(Clone, PartialEq, Debug)]
pub struct RRBasis {
    pub numerators: Vec<MPoly>,
    pub denominator: MPoly,
    pub degree: u32,
}

impl RRBasis {
    pub fn dimension(&self) -> usize {
        self.numerators.len()
    }

    /// Coordinates of a degree-`deg D` form in the monomial basis.
    pub fn coordinates(&self, g: &MPoly) -> Result<Vec<Rat>> {
        if !g.is_zero() && (!g.is_homogeneous() || g.total_degree() != self.degree) {
            return Err(Error::InvalidInput(format!("{g} is not a form of degree {}", self.degree)));
        }
        let mut out = vec![Rat::zero(); self.numerators.len()];
        for (m, c) in g.terms() {
            let i = self
                .numerators
                .iter()
                .position(|b| b.leading_term().map(|(bm, _)| bm) == Some(m))
                .expect("monomial basis covers every degree-m monomial");
            out[i] = c.clone();
        }
        Ok(out)
    }
}

pub fn rr_basis(d: &HypersurfaceDivisor) -> RRBasis {
    let m = d.degree();
    let mut numerators = Vec::new();
    let mut exps = vec![0u32; d.n + 1];
    monomials(m, 0, &mut exps, &mut |e| numerators.push(MPoly::monomial(e.to_vec(), Rat::one())));
    RRBasis { numerators, denominator: d.denominator(), degree: m }
}

/// Order of `num/den` along the irreducible form `e`.
pub fn ord_along(num: &MPoly, den: &MPoly, e: &MPoly) -> Result<i64> {
    if num.is_zero() {
        return Err(Error::ZeroElement);
    }
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(num.multiplicity(e) as i64 - den.multiplicity(e) as i64)
}

/// A nonempty set of components together with a point lying on exactly
/// those components.
#[derive(Clone, PartialEq, Debug)]
pub struct Stratum {
    pub pattern: Vec<usize>,
    pub witness: Vec<NfElem>,
    /// Defining polynomial of the witness field; `None` for rational witnesses.
    pub field: Option<UPoly<Rat>>,
}

impl Stratum {
    /// Components vanishing at the witness, by exact evaluation.
    pub fn containment(&self, d: &HypersurfaceDivisor) -> Vec<usize> {
        d.components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.form.eval_in(&self.witness).is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

fn rational_point(v: &[Rat]) -> Vec<NfElem> {
    v.iter().map(|c| NfElem::rational(c.clone())).collect()
}

/// A point `(a : 1)` or `(1 : 0)` style witness from an irreducible factor.
fn field_root(g: &UPoly<Rat>) -> Result<(NfElem, Option<UPoly<Rat>>)> {
    if g.deg() == 1 {
        let g = g.monic();
        return Ok((NfElem::rational(-g.coeff(0)), None));
    }
    let k = NumberField::new(g.clone())?;
    Ok((k.generator(), Some(k.minpoly().clone())))
}

pub fn strata(d: &HypersurfaceDivisor) -> Result<Vec<Stratum>> {
    let mut out = if d.is_hyperplane_arrangement() {
        hyperplane_strata(d)
    } else if d.n == 1 {
        binary_strata(d)?
    } else if d.n == 2 {
        plane_curve_strata(d)?
    } else {
        return Err(Error::UnsupportedGeometry(format!(
            "non-linear components in P^{} (only hyperplanes, or n <= 2)",
            d.n
        )));
    };
    for s in &out {
        if s.containment(d) != s.pattern {
            return Err(Error::VerificationFailed(format!(
                "stratum witness lies on {:?}, expected {:?}",
                s.containment(d),
                s.pattern
            )));
        }
    }
    out.sort_by(|a, b| a.pattern.len().cmp(&b.pattern.len()).then(a.pattern.cmp(&b.pattern)));
    Ok(out)
}

fn linear_coeffs(f: &MPoly, nv: usize) -> Vec<Rat> {
    (0..nv)
        .map(|i| {
            let mut e = vec![0u32; nv];
            e[i] = 1;
            f.terms()
                .find(|(m, _)| m.0 == e)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero)
        })
        .collect()
}

fn hyperplane_strata(d: &HypersurfaceDivisor) -> Vec<Stratum> {
    let nv = d.n + 1;
    let rows: Vec<Vec<Rat>> = d.components.iter().map(|c| linear_coeffs(&c.form, nv)).collect();
    let r = rows.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << r) {
        let pattern: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<Rat>> = pattern.iter().map(|&i| rows[i].clone()).collect();
        let basis = crate::exact::linalg::nullspace(&sub, nv);
        if basis.is_empty() {
            continue;
        }
        let others: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 0).collect();
        let on = |v: &[Rat], i: usize| rows[i].iter().zip(v).fold(Rat::zero(), |a, (x, y)| a + x * y).is_zero();
        // The subspace is contained in another hyperplane iff every basis vector is.
        if others.iter().any(|&k| basis.iter().all(|b| on(b, k))) {
            continue;
        }
        let mut lambda = 1i64;
        let witness = loop {
            let mut v = vec![Rat::zero(); nv];
            let mut c = Rat::one();
            for b in &basis {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += &c * bi;
                }
                c *= Rat::from_integer(lambda.into());
            }
            if others.iter().all(|&k| !on(&v, k)) {
                break v;
            }
            lambda += 1;
        };
        out.push(Stratum { pattern, witness: rational_point(&witness), field: None });
    }
    out
}

fn binary_strata(d: &HypersurfaceDivisor) -> Result<Vec<Stratum>> {
    let mut out = Vec::new();
    for (i, c) in d.components.iter().enumerate() {
        let u = dehomogenize_binary(&c.form);
        let (witness, field) = if u.is_constant() {
            (rational_point(&[Rat::one(), Rat::zero()]), None)
        } else {
            let (a, f) = field_root(&u)?;
            (vec![a, NfElem::one()], f)
        };
        out.push(Stratum { pattern: vec![i], witness, field });
    }
    Ok(out)
}

fn uni_in_last<K: Field>(f: &MPoly, pt: &[K]) -> UPoly<K> {
    let var = f.nvars() - 1;
    UPoly::new(f.coeffs_in(var).iter().map(|c| c.eval_in(pt)).collect())
}

fn plane_curve_strata(d: &HypersurfaceDivisor) -> Result<Vec<Stratum>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let r = d.components.len();
    let mut out: Vec<Stratum> = Vec::new();
    let push = |s: Stratum, out: &mut Vec<Stratum>| {
        if !out.iter().any(|o| o.pattern == s.pattern) {
            out.push(s);
        }
    };
    // Singletons: intersect each curve with random lines until a point off
    // the other components appears.
    for i in 0..r {
        let mut found = None;
        'lines: for _ in 0..64 {
            let (c0, c1): (i64, i64) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            let x2 = &MPoly::var(3, 0).scale(&Rat::from_integer(c0.into()))
                + &MPoly::var(3, 1).scale(&Rat::from_integer(c1.into()));
            let restricted = d.components[i]
                .form
                .substitute(&[MPoly::var(3, 0), MPoly::var(3, 1), x2]);
            if restricted.is_zero() {
                continue;
            }
            let u = restricted.partial_eval(1, &Rat::one()).to_upoly(0).expect("binary");
            if u.is_constant() {
                continue;
            }
            for (g, _) in factor_q(&u)?.factors {
                let (a, field) = field_root(&g)?;
                let c0k = NfElem::rational(Rat::from_integer(c0.into()));
                let c1k = NfElem::rational(Rat::from_integer(c1.into()));
                let pt = vec![a.clone(), NfElem::one(), c0k * a + c1k];
                let s = Stratum { pattern: vec![i], witness: pt, field };
                if s.containment(d) == vec![i] {
                    found = Some(s);
                    break 'lines;
                }
            }
        }
        match found {
            Some(s) => push(s, &mut out),
            None => return Err(Error::VerificationFailed(format!("no witness found on component {i}"))),
        }
    }
    // Intersections: project along a generic direction and lift.
    'retry: for _ in 0..32 {
        let m: Vec<Vec<i64>> = loop {
            let m: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let mr: Vec<Vec<Rat>> = m.iter().map(|row| row.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect();
            if rank(&mr) == 3 {
                break m;
            }
        };
        let subs: Vec<MPoly> = m
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(MPoly::zero(3), |acc, (j, &c)| &acc + &MPoly::var(3, j).scale(&Rat::from_integer(c.into())))
            })
            .collect();
        let forms: Vec<MPoly> = d.components.iter().map(|c| c.form.substitute(&subs)).collect();
        if forms.iter().any(|f| f.degree_in(2) != f.total_degree()) {
            continue 'retry;
        }
        let mut found: Vec<Stratum> = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let res = MPoly::resultant(&forms[i], &forms[j], 2);
                if res.is_zero() {
                    return Err(Error::VerificationFailed("components share a factor".into()));
                }
                let u = res.partial_eval(1, &Rat::one()).to_upoly(0).expect("binary");
                let mut roots: Vec<(Vec<NfElem>, Option<UPoly<Rat>>)> = Vec::new();
                if !u.is_constant() {
                    for (g, _) in factor_q(&u)?.factors {
                        let (a, field) = field_root(&g)?;
                        roots.push((vec![a, NfElem::one()], field));
                    }
                }
                if (u.deg() as u32) < res.total_degree() {
                    roots.push((vec![NfElem::one(), NfElem::zero()], None));
                }
                for (base, field) in roots {
                    let pt0 = [base[0].clone(), base[1].clone(), NfElem::zero()];
                    let pi = uni_in_last(&forms[i], &pt0);
                    let pj = uni_in_last(&forms[j], &pt0);
                    let h = UPoly::gcd(&pi, &pj);
                    if h.deg() != 1 {
                        continue 'retry;
                    }
                    let y2 = -h.monic().coeff(0);
                    let y = [base[0].clone(), base[1].clone(), y2];
                    let x: Vec<NfElem> = m
                        .iter()
                        .map(|row| {
                            row.iter().zip(&y).fold(NfElem::zero(), |acc, (&c, yk)| {
                                acc + NfElem::rational(Rat::from_integer(c.into())) * yk.clone()
                            })
                        })
                        .collect();
                    let mut s = Stratum { pattern: vec![], witness: x, field: field.clone() };
                    s.pattern = s.containment(d);
                    if !s.pattern.contains(&i) || !s.pattern.contains(&j) {
                        return Err(Error::VerificationFailed("lifted intersection point is off the curves".into()));
                    }
                    found.push(s);
                }
            }
        }
        for s in found {
            push(s, &mut out);
        }
        return Ok(out);
    }
    Err(Error::VerificationFailed("no generic projection found".into()))
}

/// Bounds on the combinatorial search of [`certify_very_large`].
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Largest candidate pool generated.
    pub max_pool: usize,
    /// Largest number of subsets tried by the exhaustive fallback per stratum.
    pub max_subsets: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_pool: 5000, max_subsets: 200_000 }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct StratumBasis {
    pub stratum: Stratum,
    /// Numerators over the common denominator of `L(D)`.
    pub basis: Vec<MPoly>,
    /// `(component, sum of orders)` for every component of the pattern.
    pub order_sums: Vec<(usize, i64)>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct VeryLargeCertificate {
    pub divisor: HypersurfaceDivisor,
    pub entries: Vec<StratumBasis>,
}

impl VeryLargeCertificate {
    /// Re-checks independence by rank and positivity of order sums using
    /// exact division.
    pub fn verify(&self) -> Result<()> {
        let rr = rr_basis(&self.divisor);
        let den = &rr.denominator;
        for e in &self.entries {
            if e.basis.len() != rr.dimension() {
                return Err(Error::VerificationFailed("basis has the wrong size".into()));
            }
            let mat: Vec<Vec<Rat>> = e.basis.iter().map(|g| rr.coordinates(g)).collect::<Result<_>>()?;
            if rank(&mat) != rr.dimension() {
                return Err(Error::VerificationFailed("basis elements are dependent".into()));
            }
            for &i in &e.stratum.pattern {
                let comp = &self.divisor.components[i].form;
                let mut s = 0i64;
                for g in &e.basis {
                    s += ord_along(g, den, comp)?;
                }
                if s <= 0 {
                    return Err(Error::VerificationFailed(format!("order sum {s} along component {i}")));
                }
                if e.order_sums.iter().find(|(k, _)| *k == i).map(|(_, v)| *v) != Some(s) {
                    return Err(Error::VerificationFailed("recorded order sum disagrees".into()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct NotFound {
    /// Candidate subsets examined across all strata.
    pub examined: usize,
    /// A stratum and component whose exact maximal order sum is not
    /// positive, which rules out every basis, not just the searched ones.
    pub obstruction: Option<(Vec<usize>, usize, i64)>,
}

#[derive(Clone, PartialEq, Debug)]
pub enum CertifyOutcome {
    Certified(VeryLargeCertificate),
    NotFound(NotFound),
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Largest possible `sum_{f in B} ord_E(f)` over bases `B` of `L(D)` for the
/// component `E`: the filtration by powers of `E` gives
/// `sum_{k>=1} dim(forms of degree m divisible by E^k) - dim L(D) * a`.
pub fn max_order_sum(d: &HypersurfaceDivisor, comp: usize) -> i64 {
    let n = d.n as i64;
    let m = d.degree() as i64;
    let e = d.components[comp].form.total_degree() as i64;
    let a = d.components[comp].mult as i64;
    let dim = binom(n + m, n);
    let mut s = 0;
    let mut k = 1;
    while m - k * e >= 0 {
        s += binom(n + m - k * e, n);
        k += 1;
    }
    s - dim * a
}

struct Candidate {
    form: MPoly,
    coords: Vec<Rat>,
    /// Multiplicity of each component of `D` in `form`.
    mults: Vec<i64>,
}

fn candidate_pool(d: &HypersurfaceDivisor, rr: &RRBasis, cap: usize) -> Result<Vec<Candidate>> {
    let nv = d.n + 1;
    let mut gens: Vec<MPoly> = d.support();
    for i in 0..nv {
        let x = MPoly::var(nv, i);
        if !gens.contains(&x) {
            gens.push(x);
        }
    }
    let degs: Vec<u32> = gens.iter().map(MPoly::total_degree).collect();
    let mut out = Vec::new();
    let mut counts = vec![0u32; gens.len()];
    fn rec(
        pos: usize,
        left: u32,
        counts: &mut Vec<u32>,
        degs: &[u32],
        sink: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if pos == degs.len() {
            return left != 0 || sink(counts);
        }
        let mut k = left / degs[pos];
        loop {
            counts[pos] = k;
            if !rec(pos + 1, left - k * degs[pos], counts, degs, sink) {
                counts[pos] = 0;
                return false;
            }
            if k == 0 {
                break;
            }
            k -= 1;
        }
        counts[pos] = 0;
        true
    }
    let r = d.components.len();
    let mut err = None;
    rec(0, d.degree(), &mut counts, &degs, &mut |c| {
        if out.len() >= cap {
            return false;
        }
        let form = gens
            .iter()
            .zip(c)
            .fold(MPoly::one(nv), |acc, (g, &k)| if k == 0 { acc } else { &acc * &g.pow(k) });
        match rr.coordinates(&form) {
            Ok(coords) => out.push(Candidate { form, coords, mults: (0..r).map(|i| c[i] as i64).collect() }),
            Err(e) => err = Some(e),
        }
        true
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(out)
}

fn order_sums(pattern: &[usize], chosen: &[&Candidate], d: &HypersurfaceDivisor) -> Vec<(usize, i64)> {
    let dim = chosen.len() as i64;
    pattern
        .iter()
        .map(|&i| {
            let s: i64 = chosen.iter().map(|c| c.mults[i]).sum();
            (i, s - dim * d.components[i].mult as i64)
        })
        .collect()
}

fn greedy(pool: &[Candidate], weights: &[(usize, i64)], dim: usize) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = (0..pool.len()).collect();
    let score = |c: &Candidate| weights.iter().map(|&(i, w)| w * c.mults[i]).sum::<i64>();
    idx.sort_by_key(|&k| std::cmp::Reverse(score(&pool[k])));
    let mut ech = Echelon::new();
    let mut chosen = Vec::new();
    for k in idx {
        if ech.try_insert(&pool[k].coords) {
            chosen.push(k);
            if chosen.len() == dim {
                return Some(chosen);
            }
        }
    }
    None
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Searches for a very-large certificate: greedy matroid selection over a
/// pool of products of component and coordinate forms under several
/// weightings, then exhaustive search when `dim L(D) <= 6`.
pub fn certify_very_large(d: &HypersurfaceDivisor, budget: SearchBudget) -> Result<CertifyOutcome> {
    let rr = rr_basis(d);
    let dim = rr.dimension();
    let strata = strata(d)?;
    let mut obstruction = None;
    for s in &strata {
        for &i in &s.pattern {
            let b = max_order_sum(d, i);
            if b <= 0 {
                obstruction = Some((s.pattern.clone(), i, b));
                break;
            }
        }
        if obstruction.is_some() {
            break;
        }
    }
    let pool = candidate_pool(d, &rr, budget.max_pool)?;
    let mut examined = 0usize;
    let mut entries = Vec::new();
    for s in &strata {
        let mut weightings: Vec<Vec<(usize, i64)>> = vec![s.pattern.iter().map(|&i| (i, 1)).collect()];
        for &i in &s.pattern {
            weightings.push(s.pattern.iter().map(|&k| (k, if k == i { dim as i64 + 1 } else { 1 })).collect());
        }
        let mut hit = None;
        for w in &weightings {
            examined += 1;
            if let Some(ch) = greedy(&pool, w, dim) {
                let chosen: Vec<&Candidate> = ch.iter().map(|&k| &pool[k]).collect();
                let sums = order_sums(&s.pattern, &chosen, d);
                if sums.iter().all(|&(_, v)| v > 0) {
                    hit = Some((ch, sums));
                    break;
                }
            }
        }
        if hit.is_none() && dim <= 6 && dim <= pool.len() {
            let mut c: Vec<usize> = (0..dim).collect();
            let mut tried = 0usize;
            loop {
                tried += 1;
                let chosen: Vec<&Candidate> = c.iter().map(|&k| &pool[k]).collect();
                let sums = order_sums(&s.pattern, &chosen, d);
                if sums.iter().all(|&(_, v)| v > 0) {
                    let mat: Vec<Vec<Rat>> = chosen.iter().map(|x| x.coords.clone()).collect();
                    if rank(&mat) == dim {
                        hit = Some((c.clone(), sums));
                        break;
                    }
                }
                if tried >= budget.max_subsets || !next_combination(&mut c, pool.len()) {
                    break;
                }
            }
            examined += tried;
        }
        match hit {
            Some((ch, sums)) => entries.push(StratumBasis {
                stratum: s.clone(),
                basis: ch.iter().map(|&k| pool[k].form.clone()).collect(),
                order_sums: sums,
            }),
            None => return Ok(CertifyOutcome::NotFound(NotFound { examined, obstruction })),
        }
    }
    let cert = VeryLargeCertificate { divisor: d.clone(), entries };
    cert.verify()?;
    Ok(CertifyOutcome::Certified(cert))
}

#[derive(Clone, PartialEq, Debug)]
pub enum MakeOutcome {
    Found { b: Vec<u32>, certificate: VeryLargeCertificate },
    NotFound {
        tried: usize,
        /// Every tried `b` was ruled out by an exact order-sum bound.
        all_obstructed: bool,
    },
}

/// Searches `b` in `[1, b_max]^r`, by increasing `sum b` then
/// lexicographically, for `sum b_i D_i` very large.
pub fn make_very_large(d: &HypersurfaceDivisor, b_max: u32, budget: SearchBudget) -> Result<MakeOutcome> {
    if d.components.iter().any(|c| c.mult != 1) {
        return Err(Error::InvalidInput("expects a reduced divisor (all multiplicities 1)".into()));
    }
    let r = d.components.len();
    let mut bs: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..r {
        bs = bs.into_iter().flat_map(|v| (1..=b_max).map(move |k| {
            let mut w = v.clone();
            w.push(k);
            w
        })).collect();
    }
    bs.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then(a.cmp(b)));
    let mut all_obstructed = true;
    let tried = bs.len();
    for b in bs {
        let e = d.with_multiplicities(&b)?;
        match certify_very_large(&e, budget)? {
            CertifyOutcome::Certified(certificate) => return Ok(MakeOutcome::Found { b, certificate }),
            CertifyOutcome::NotFound(nf) => all_obstructed &= nf.obstruction.is_some(),
        }
    }
    Ok(MakeOutcome::NotFound { tried, all_obstructed })
}

fn normalize_form(mut v: Vec<Rat>) -> Vec<Rat> {
    if let Some(p) = v.iter().position(|x| !x.is_zero()) {
        let inv = v[p].recip();
        v.iter_mut().for_each(|x| *x *= &inv);
    }
    v
}

/// Expresses each basis `B_j` in the monomial basis `phi` of `L(D)`, giving
/// linear forms `Lambda_{j,i}` with `psi_{j,i} = Lambda_{j,i}(phi)`, and adds
/// the coordinate forms. Forms are scaled to a leading coefficient of one and
/// deduplicated.
pub fn exceptional_collection(cert: &VeryLargeCertificate, basis: &RRBasis) -> Result<Vec<LinearForm<Rat>>> {
    let dim = basis.dimension();
    let mut out: Vec<Vec<Rat>> = Vec::new();
    let mut push = |v: Vec<Rat>| {
        let v = normalize_form(v);
        if !out.contains(&v) {
            out.push(v);
        }
    };
    for e in &cert.entries {
        let mat: Vec<Vec<Rat>> = e.basis.iter().map(|g| basis.coordinates(g)).collect::<Result<_>>()?;
        if mat.len() != dim || rank(&mat) != dim {
            return Err(Error::SingularChangeOfBasis);
        }
        for row in mat {
            push(row);
        }
    }
    for i in 0..dim {
        push((0..dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect());
    }
    Ok(out.into_iter().map(LinearForm::new).collect())
}

/// The number field generated by a witness, as a [`CoefField`].
pub fn witness_field(s: &Stratum) -> Result<CoefField> {
    Ok(match &s.field {
        None => CoefField::Rationals,
        Some(m) => CoefField::NumberField(NumberField::new(m.clone())?),
    })
}
