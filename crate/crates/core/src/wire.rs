//! JSON and text forms of the main objects, for the command line and for
//! exchanging certificates.
//!
//! Polynomials can be given either structurally,
//! `{"vars":["z1","z2"],"terms":[{"exp":[1,0],"num":"3","den":"2"}]}`, or as
//! a plain expression such as `"3/2*z1 - z2^2"`.

use serde::{Deserialize, Serialize};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::divisor::{HypersurfaceDivisor, VeryLargeCertificate};
use crate::error::{Error, Result};
use crate::exact::{Frac, MPoly, UPoly};
use crate::fg_domain::{elem_add, elem_inv, elem_mul, elem_normalize, DomainElem, DomainPresentation};
use crate::heights_ff::{PlaceSet, QRatFunc};
use crate::scalar::{parse_rat, Field, Int, Rat};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

/// A polynomial as it appears in input files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolySpec {
    Text(String),
    Structured(PolyJson),
}

impl PolySpec {
    pub fn to_mpoly(&self, vars: &[String]) -> Result<MPoly> {
        match self {
            PolySpec::Text(s) => parse_poly(s, vars),
            PolySpec::Structured(p) => poly_from_json(p, vars),
        }
    }

    pub fn to_frac(&self, vars: &[String]) -> Result<Frac> {
        match self {
            PolySpec::Text(s) => parse_frac(s, vars),
            PolySpec::Structured(p) => Ok(Frac::from_poly(poly_from_json(p, vars)?)),
        }
    }
}

pub fn poly_to_json(p: &MPoly, vars: &[String]) -> PolyJson {
    PolyJson {
        vars: vars.to_vec(),
        terms: p
            .terms()
            .rev()
            .map(|(m, c)| TermJson {
                exp: m.0.clone(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect(),
    }
}

/// Reads `p`, renaming its variables onto `vars`.
pub fn poly_from_json(p: &PolyJson, vars: &[String]) -> Result<MPoly> {
    let map: Vec<usize> = p
        .vars
        .iter()
        .map(|v| {
            vars.iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::InvalidInput(format!("unknown variable {v}")))
        })
        .collect::<Result<_>>()?;
    let mut terms = Vec::with_capacity(p.terms.len());
    for t in &p.terms {
        if t.exp.len() != p.vars.len() {
            return Err(Error::InvalidInput("exponent length differs from vars".into()));
        }
        let num: Int = t
            .num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad integer {}", t.num)))?;
        let den: Int = t
            .den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad integer {}", t.den)))?;
        if den == Int::from(0) {
            return Err(Error::ZeroDenominator);
        }
        let mut e = vec![0; vars.len()];
        for (i, &k) in t.exp.iter().enumerate() {
            e[map[i]] += k;
        }
        terms.push((e, Rat::new(num, den)));
    }
    Ok(MPoly::from_terms(vars.len(), terms))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidInput(format!(
            "{msg} at position {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn lift(&self, f: Frac) -> Frac {
        if f.nvars() == self.vars.len() {
            return f;
        }
        let c = f.as_rat().expect("only constants lack variables");
        Frac::from_poly(MPoly::constant(self.vars.len(), c))
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc / rhs;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap_or("")
            .parse()
            .map_err(|_| self.err("expected an exponent"))?;
        let mut acc = self.lift(Frac::one());
        for _ in 0..e {
            acc = acc * base.clone();
        }
        if neg {
            if acc.is_zero() {
                return Err(Error::DivisionByZero);
            }
            acc = acc.inv();
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: Int = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii")
                    .parse()
                    .expect("digits");
                Ok(self.lift(Frac::constant(Rat::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name}")))?;
                Ok(Frac::from_poly(MPoly::var(self.vars.len(), i)))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parses a rational expression in `vars` using `+ - * / ^` and parentheses.
pub fn parse_frac(text: &str, vars: &[String]) -> Result<Frac> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(p.lift(out))
}

/// Like [`parse_frac`], but the result must be a polynomial.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<MPoly> {
    let f = parse_frac(text, vars)?;
    let c = f
        .den()
        .constant_value()
        .ok_or_else(|| Error::InvalidInput(format!("{text} is not a polynomial")))?;
    Ok(f.num().scale(&c.recip()))
}

/// A one-variable rational function over ℚ.
pub fn parse_ratfunc(text: &str, var: &str) -> Result<QRatFunc> {
    let f = parse_frac(text, &[var.to_string()])?;
    frac_to_ratfunc(&f)
}

pub fn frac_to_ratfunc(f: &Frac) -> Result<QRatFunc> {
    let up = |p: &MPoly| p.to_upoly(0).ok_or_else(|| Error::InvalidInput("expected one variable".into()));
    QRatFunc::new(up(f.num())?, up(f.den())?)
}

pub fn upoly_to_json(p: &UPoly<Rat>, var: &str) -> PolyJson {
    poly_to_json(&MPoly::from_upoly(p, 0, 1), &[var.to_string()])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: PolySpec,
    pub den: PolySpec,
    #[serde(default = "rationals_tag")]
    pub coef_field: String,
}

fn rationals_tag() -> String {
    "Q".into()
}

pub fn ratfunc_to_json(r: &QRatFunc, var: &str) -> RatFuncJson {
    RatFuncJson {
        num: PolySpec::Structured(upoly_to_json(r.num(), var)),
        den: PolySpec::Structured(upoly_to_json(r.den(), var)),
        coef_field: rationals_tag(),
    }
}

/// Only rational coefficients are read here; number-field coefficients go
/// through the library API.
pub fn ratfunc_from_json(r: &RatFuncJson, var: &str) -> Result<QRatFunc> {
    if r.coef_field != "Q" {
        return Err(Error::UnsupportedExtension(format!("coefficient field {}", r.coef_field)));
    }
    let vars = [var.to_string()];
    let num = r.num.to_frac(&vars)?;
    let den = r.den.to_frac(&vars)?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    frac_to_ratfunc(&(num / den))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaceSetJson {
    pub places: Vec<PolySpec>,
    #[serde(default)]
    pub infinity: bool,
}

pub fn placeset_from_json(p: &PlaceSetJson, var: &str) -> Result<PlaceSet<Rat>> {
    let vars = [var.to_string()];
    let mut finite = Vec::with_capacity(p.places.len());
    for spec in &p.places {
        let g = spec
            .to_mpoly(&vars)?
            .to_upoly(0)
            .ok_or_else(|| Error::InvalidInput("place must be a polynomial in one variable".into()))?;
        if g.deg() == 0 {
            return Err(Error::InvalidInput("a place must be nonconstant".into()));
        }
        if !crate::exact::is_irreducible_q(&g)? {
            return Err(Error::InvalidInput(format!("place {g} is not irreducible")));
        }
        finite.push(g);
    }
    Ok(PlaceSet::new(finite, p.infinity))
}

pub fn placeset_to_json(p: &PlaceSet<Rat>, var: &str) -> PlaceSetJson {
    PlaceSetJson {
        places: p
            .finite
            .iter()
            .map(|g| PolySpec::Structured(upoly_to_json(g, var)))
            .collect(),
        infinity: p.infinity,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub form: PolySpec,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorJson {
    pub n: usize,
    pub components: Vec<ComponentJson>,
}

/// Homogeneous coordinates `x0, …, xn`.
pub fn coordinate_names(n: usize) -> Vec<String> {
    (0..=n).map(|i| format!("x{i}")).collect()
}

pub fn divisor_from_json(d: &DivisorJson) -> Result<HypersurfaceDivisor> {
    let vars = coordinate_names(d.n);
    let comps = d
        .components
        .iter()
        .map(|c| Ok((c.form.to_mpoly(&vars)?, c.mult)))
        .collect::<Result<Vec<_>>>()?;
    HypersurfaceDivisor::new(d.n, comps)
}

pub fn divisor_to_json(d: &HypersurfaceDivisor) -> DivisorJson {
    let vars = coordinate_names(d.ambient_dim());
    DivisorJson {
        n: d.ambient_dim(),
        components: d
            .components()
            .iter()
            .map(|c| ComponentJson {
                form: PolySpec::Structured(poly_to_json(&c.form, &vars)),
                mult: c.mult,
            })
            .collect(),
    }
}

/// Everything needed to re-check the certificate elsewhere: the divisor,
/// and per stratum the witness point, its field, the basis of `L(D)` and the
/// order sums along each component through the stratum.
pub fn certificate_to_json(c: &VeryLargeCertificate) -> Value {
    let vars = coordinate_names(c.divisor.ambient_dim());
    let entries: Vec<Value> = c
        .entries
        .iter()
        .map(|e| {
            json!({
                "pattern": e.stratum.pattern,
                "witness": e.stratum.witness.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "witness_field": e.stratum.field.as_ref().map(|g| g.to_string()),
                "basis": e.basis.iter().map(|b| poly_to_json(b, &vars)).collect::<Vec<_>>(),
                "order_sums": e.order_sums.iter().map(|(k, s)| json!({"component": k, "sum": s})).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "divisor": divisor_to_json(&c.divisor),
        "denominator": poly_to_json(&c.divisor.denominator(), &vars),
        "entries": entries,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub q: usize,
    pub d: usize,
    #[serde(rename = "G")]
    pub g: PolySpec,
    pub f: PolySpec,
    pub names: Vec<String>,
}

pub fn presentation_from_json(p: &PresentationJson) -> Result<DomainPresentation> {
    if p.names.iter().any(|n| n == "x" || n == "y") {
        return Err(Error::InvalidInput("x and y are reserved names".into()));
    }
    let mut gvars = p.names.clone();
    gvars.push("x".into());
    let g = p.g.to_mpoly(&gvars)?;
    let f = p.f.to_mpoly(&p.names)?;
    DomainPresentation::new(p.q, p.d, g, f, p.names.clone())
}

pub fn presentation_to_json(p: &DomainPresentation) -> PresentationJson {
    let mut gvars = p.names().to_vec();
    gvars.push("x".into());
    PresentationJson {
        q: p.q(),
        d: p.d(),
        g: PolySpec::Structured(poly_to_json(p.g(), &gvars)),
        f: PolySpec::Structured(poly_to_json(p.f(), p.names())),
        names: p.names().to_vec(),
    }
}

/// `{"Q": …, "P": [P_0, …, P_{d−1}]}`, or a single text expression in the
/// generators and `y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DomainElemJson {
    Parts {
        #[serde(rename = "Q")]
        q: PolySpec,
        #[serde(rename = "P")]
        p: Vec<PolySpec>,
    },
    Text(String),
}

pub fn domain_elem_from_json(e: &DomainElemJson, pres: &DomainPresentation) -> Result<DomainElem> {
    match e {
        DomainElemJson::Parts { q, p } => {
            if p.len() != pres.d() {
                return Err(Error::InvalidInput(format!("expected {} numerators", pres.d())));
            }
            let q = q.to_mpoly(pres.names())?;
            let p = p
                .iter()
                .map(|x| x.to_mpoly(pres.names()))
                .collect::<Result<Vec<_>>>()?;
            elem_normalize(q, p)
        }
        DomainElemJson::Text(s) => parse_domain_elem(s, pres),
    }
}

pub fn domain_elem_to_json(e: &DomainElem, names: &[String]) -> DomainElemJson {
    DomainElemJson::Parts {
        q: PolySpec::Structured(poly_to_json(e.den(), names)),
        p: e
            .nums()
            .iter()
            .map(|x| PolySpec::Structured(poly_to_json(x, names)))
            .collect(),
    }
}

/// Reads an expression in the generators and `y`: it is written as a
/// polynomial in `y` with rational-function coefficients, then reduced.
pub fn parse_domain_elem(text: &str, pres: &DomainPresentation) -> Result<DomainElem> {
    let mut vars = pres.names().to_vec();
    vars.push("y".into());
    let f = parse_frac(text, &vars)?;
    let y = pres.q();
    if f.den().involves(y) {
        return Err(Error::InvalidInput("y may not appear in a denominator".into()));
    }
    let drop_y: Vec<usize> = (0..pres.q()).chain(std::iter::once(0)).collect();
    let den = f.den().remap(pres.q(), &drop_y);
    let coeffs: Vec<MPoly> = f
        .num()
        .coeffs_in(y)
        .iter()
        .map(|c| c.remap(pres.q(), &drop_y))
        .collect();
    // y is 1 under the d = 1 convention
    let y = if pres.d() > 1 {
        DomainElem::y(pres)?
    } else {
        DomainElem::one(pres)
    };
    let mut acc = DomainElem::zero(pres);
    for c in coeffs.iter().rev() {
        acc = elem_mul(pres, &acc, &y)?;
        acc = elem_add(&acc, &DomainElem::from_poly(pres, c.clone()))?;
    }
    let inv_den = elem_inv(pres, &DomainElem::from_poly(pres, den))?;
    elem_mul(pres, &acc, &inv_den)
}

pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    parse_rat(s).ok_or_else(|| Error::InvalidInput(format!("not a rational number: {s}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_expressions() {
        let v = names(&["z1", "z2"]);
        let p = parse_poly("3/2*z1 - z2^2 + 2(z1 + 1)", &v).unwrap();
        let expect = MPoly::from_terms(
            2,
            vec![(vec![1, 0], ratio(7, 2)), (vec![0, 2], rat(-1)), (vec![0, 0], rat(2))],
        );
        assert_eq!(p, expect);
        assert!(parse_poly("1/z1", &v).is_err());
        assert!(parse_poly("w", &v).is_err());
        let r = parse_ratfunc("(t^3+1)/(1+t^2)", "t").unwrap();
        assert_eq!(r.height(), 3);
        assert_eq!(parse_ratfunc("t^-2", "t").unwrap(), QRatFunc::t().pow(-2));
    }

    #[test]
    fn poly_round_trip() {
        let v = names(&["z1", "z2"]);
        let p = parse_poly("3/2*z1 - z2^2 + 5", &v).unwrap();
        let j = serde_json::to_string(&poly_to_json(&p, &v)).unwrap();
        let back: PolySpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_mpoly(&v).unwrap(), p);
        let text: PolySpec = serde_json::from_str("\"z2 - z1\"").unwrap();
        assert_eq!(text.to_mpoly(&v).unwrap(), &MPoly::var(2, 1) - &MPoly::var(2, 0));
    }

    #[test]
    fn presentation_and_elements() {
        let j = r#"{"q":1,"d":2,"G":"x^2 - z","f":"1","names":["z"]}"#;
        let pj: PresentationJson = serde_json::from_str(j).unwrap();
        let pres = presentation_from_json(&pj).unwrap();
        let e: DomainElemJson = serde_json::from_str(r#""y/z + y^2""#).unwrap();
        let a = domain_elem_from_json(&e, &pres).unwrap();
        // y/z + z
        assert_eq!(a.den(), &MPoly::var(1, 0));
        assert_eq!(a.nums(), &[MPoly::var(1, 0).pow(2), MPoly::one(1)]);
        let round = domain_elem_to_json(&a, pres.names());
        let s = serde_json::to_string(&round).unwrap();
        let back: DomainElemJson = serde_json::from_str(&s).unwrap();
        assert_eq!(domain_elem_from_json(&back, &pres).unwrap(), a);
        let pj2 = presentation_to_json(&pres);
        assert_eq!(presentation_from_json(&pj2).unwrap(), pres);
    }

    #[test]
    fn divisor_and_places() {
        let j = r#"{"n":1,"components":[{"form":"x0","mult":1},{"form":"x1","mult":1}]}"#;
        let d: DivisorJson = serde_json::from_str(j).unwrap();
        let div = divisor_from_json(&d).unwrap();
        assert_eq!(div.degree(), 2);
        assert_eq!(divisor_from_json(&divisor_to_json(&div)).unwrap(), div);
        let p: PlaceSetJson = serde_json::from_str(r#"{"places":["t","t^2+1"],"infinity":true}"#).unwrap();
        let ps = placeset_from_json(&p, "t").unwrap();
        assert_eq!(ps.len(), 3);
        let bad: PlaceSetJson = serde_json::from_str(r#"{"places":["t^2-1"]}"#).unwrap();
        assert!(placeset_from_json(&bad, "t").is_err());
    }
}
