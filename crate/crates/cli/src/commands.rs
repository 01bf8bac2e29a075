use std::str::FromStr;

use anyhow::{Context, Result};
use clap::Args;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use heightlab::divisor::{
    certify_very_large, make_very_large, CertifyOutcome, HypersurfaceDivisor, MakeOutcome, SearchBudget,
};
use heightlab::exact::CoefField;
use heightlab::heights_ff::{ff_ord, h_proj_ff, h_proj_ff_by_places, support_places, LinearForm, ProjPointFF, QRatFunc};
use heightlab::heights_nf::{
    alg_height, contributing_places, h_proj_q, h_proj_q_by_places, height_machine_veronese, northcott_enumerate_q,
    q_abs, AlgebraicNumber, ProjPointQ,
};
use heightlab::specialization::{specialize, SpecMap};
use heightlab::subspace::{wang_classify, HypCollection};
use heightlab::unit_eq::{pipeline_report, unit_equation_solve, unit_group_generators, UnitEqProblem};
use heightlab::wire::{
    certificate_to_json, coordinate_names, divisor_from_json, domain_elem_from_json, parse_poly, parse_ratfunc,
    placeset_from_json, presentation_from_json, DivisorJson, DomainElemJson, PlaceSetJson, PresentationJson,
};
use heightlab::{Error, NfElem, Rat, UPoly};

use crate::output::Report;
use crate::{Cli, Command};

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Error::InvalidInput(msg.into()).into()
}

fn failed(msg: impl Into<String>) -> anyhow::Error {
    Error::VerificationFailed(msg.into()).into()
}

/// Command-line values, falling back to keys of the `--json` object.
struct Inputs {
    obj: Map<String, Value>,
}

impl Inputs {
    fn load(cli: &Cli) -> Result<Self> {
        let obj = match &cli.json {
            None => Map::new(),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))
                    .map_err(|e| invalid(format!("{e:#}")))?;
                match serde_json::from_str::<Value>(&text) {
                    Ok(Value::Object(m)) => m,
                    Ok(_) => return Err(invalid("--json must contain an object")),
                    Err(e) => return Err(invalid(format!("{}: {e}", path.display()))),
                }
            }
        };
        Ok(Inputs { obj })
    }

    fn text(&self, cli: &Option<String>, key: &str) -> Option<String> {
        if let Some(v) = cli {
            return Some(v.clone());
        }
        match self.obj.get(key)? {
            Value::String(s) => Some(s.clone()),
            v => Some(v.to_string()),
        }
    }

    fn value<T: FromStr + Clone>(&self, cli: &Option<T>, key: &str) -> Result<Option<T>> {
        if let Some(v) = cli {
            return Ok(Some(v.clone()));
        }
        match self.text(&None, key) {
            None => Ok(None),
            Some(s) => s
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| invalid(format!("bad value for {key}: {s}"))),
        }
    }
}

/// Inline JSON, or a path to a JSON file.
fn json_arg<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> Result<T> {
    let t = s.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') {
        s.to_string()
    } else {
        std::fs::read_to_string(s).map_err(|e| invalid(format!("{what}: cannot read {s}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| invalid(format!("{what}: {e}")))
}

fn rat_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',')
        .map(|x| heightlab::wire::rat_from_str(x.trim()).map_err(Into::into))
        .collect()
}

fn int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| invalid(format!("not an integer: {x}"))))
        .collect()
}

fn ratfunc_list(s: &str) -> Result<Vec<QRatFunc>> {
    s.split(',').map(|x| parse_ratfunc(x.trim(), "t").map_err(Into::into)).collect()
}

fn x_poly(s: &str) -> Result<UPoly<Rat>> {
    parse_poly(s, &["x".to_string()])?
        .to_upoly(0)
        .ok_or_else(|| invalid("expected a polynomial in x"))
}

fn t_poly(s: &str) -> Result<UPoly<Rat>> {
    parse_poly(s, &["t".to_string()])?
        .to_upoly(0)
        .ok_or_else(|| invalid("expected a polynomial in t"))
}

pub fn run(cli: &Cli) -> Result<Report> {
    let inputs = Inputs::load(cli)?;
    match &cli.command {
        Command::Heights(a) => heights(cli, &inputs, a),
        Command::Ffheights(a) => ffheights(cli, &inputs, a),
        Command::Verylarge(a) => verylarge(&inputs, a),
        Command::Wang(a) => wang(&inputs, a),
        Command::Specialize(a) => specialize_cmd(&inputs, a),
        Command::Unitseq(a) => unitseq(&inputs, a),
        Command::Pipeline(a) => pipeline(&inputs, a),
    }
}

#[derive(Args, Debug)]
pub struct HeightsArgs {
    /// Projective point over Q, e.g. "1,2/3,5".
    #[arg(long)]
    pub point: Option<String>,
    /// Also apply the degree-m Veronese map to --point.
    #[arg(long)]
    pub veronese: Option<u32>,
    /// Minimal polynomial in x of an algebraic number.
    #[arg(long)]
    pub minpoly: Option<String>,
    /// Root index (complex roots sorted by real, then imaginary part).
    #[arg(long)]
    pub root: Option<usize>,
    /// "n,B": all points of P^n(Q) with height at most B.
    #[arg(long)]
    pub northcott: Option<String>,
    /// Check the product formula on this many random rationals.
    #[arg(long)]
    pub sample: Option<usize>,
}

fn heights(cli: &Cli, inp: &Inputs, a: &HeightsArgs) -> Result<Report> {
    if let Some(pt) = inp.text(&a.point, "point") {
        let p = ProjPointQ::new(&rat_list(&pt)?)?;
        let h = h_proj_q(&p);
        let by_places = h_proj_q_by_places(&p.rat_coords())?;
        if by_places != h {
            return Err(failed(format!("place-by-place height {by_places} differs from {h}")));
        }
        let mut r = Report::new(&["point", "height", "value"]);
        r.row(vec![p.to_string(), h.to_string(), format!("{:.*}", cli.digits, h.value())]);
        let mut js = json!({"point": p.to_string(), "height": h.to_string(), "value": h.value()});
        if let Some(m) = inp.value(&a.veronese, "veronese")? {
            let hv = height_machine_veronese(m, &p)?;
            if hv != h.times(m) {
                return Err(failed(format!("Veronese height {hv} is not {m} times {h}")));
            }
            r.note(format!("Veronese degree {m}: height {hv}"));
            js["veronese"] = json!({"degree": m, "height": hv.to_string()});
        }
        r.json = js;
        return Ok(r);
    }
    if let Some(mp) = inp.text(&a.minpoly, "minpoly") {
        let root = inp.value(&a.root, "root")?.unwrap_or(0);
        let alpha = AlgebraicNumber::new(&x_poly(&mp)?, root)?;
        let precision = 10f64.powi(-(cli.digits.min(12) as i32));
        let iv = alg_height(&alpha, precision)?;
        let z = alpha.approx()?;
        let mut r = Report::new(&["minpoly", "root", "approx", "height"]);
        r.row(vec![
            mp.clone(),
            root.to_string(),
            format!("{:.*}{:+.*}i", cli.digits, z.re, cli.digits, z.im),
            iv.display(cli.digits),
        ]);
        r.json = json!({"minpoly": mp, "root": root, "re": z.re, "im": z.im, "lo": iv.lo, "hi": iv.hi});
        return Ok(r);
    }
    if let Some(nb) = inp.text(&a.northcott, "northcott") {
        let v = int_list(&nb)?;
        let [n, b] = v[..] else {
            return Err(invalid("--northcott expects \"n,B\""));
        };
        if n < 0 || b < 0 {
            return Err(invalid("n and B must be nonnegative"));
        }
        let pts = northcott_enumerate_q(n as usize, b as u64);
        let mut r = Report::new(&["point", "height"]);
        r.note(format!("{} points of P^{n}(Q) with H <= {b}", pts.len()));
        for p in &pts {
            r.row(vec![p.to_string(), h_proj_q(p).to_string()]);
        }
        r.json = json!({"n": n, "bound": b, "count": pts.len(),
            "points": pts.iter().map(ToString::to_string).collect::<Vec<_>>()});
        return Ok(r);
    }
    if let Some(k) = inp.value(&a.sample, "sample")? {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let mut r = Report::new(&["x", "places", "product"]);
        for _ in 0..k {
            let mut draw = || loop {
                let v: i64 = rng.gen_range(-1_000_000..=1_000_000);
                if v != 0 {
                    return v;
                }
            };
            let x = Rat::new(draw().into(), draw().into());
            let places = contributing_places(&x)?;
            let prod = places.iter().fold(Rat::one(), |acc, p| acc * q_abs(&x, p));
            if !prod.is_one() {
                return Err(failed(format!("product formula fails at {x}: {prod}")));
            }
            r.row(vec![x.to_string(), places.len().to_string(), prod.to_string()]);
        }
        r.note(format!("product formula exact on {k} samples (seed {})", cli.seed));
        r.json = json!({"samples": k, "seed": cli.seed, "ok": true});
        return Ok(r);
    }
    Err(invalid("heights needs one of --point, --minpoly, --northcott, --sample"))
}

#[derive(Args, Debug)]
pub struct FfHeightsArgs {
    /// Projective point over Q(t), e.g. "t^2, 1+t, 1".
    #[arg(long)]
    pub coords: Option<String>,
    /// A single element of Q(t), e.g. "(t^3+1)/(1+t^2)".
    #[arg(long)]
    pub elem: Option<String>,
    /// Check height formulas on this many random elements.
    #[arg(long)]
    pub sample: Option<usize>,
}

fn ffheights(cli: &Cli, inp: &Inputs, a: &FfHeightsArgs) -> Result<Report> {
    let q = CoefField::Rationals;
    if let Some(c) = inp.text(&a.coords, "coords") {
        let xs = ratfunc_list(&c)?;
        let p = ProjPointFF::new(&xs)?;
        let h = h_proj_ff(&p);
        let hp = h_proj_ff_by_places(&xs, &q)?;
        if h != hp {
            return Err(failed(format!("place-by-place height {hp} differs from {h}")));
        }
        let mut r = Report::new(&["point", "height"]);
        r.row(vec![p.to_string(), h.to_string()]);
        r.json = json!({"point": p.to_string(), "height": h});
        return Ok(r);
    }
    if let Some(e) = inp.text(&a.elem, "elem") {
        let x = parse_ratfunc(&e, "t")?;
        let h = x.height();
        let hp = h_proj_ff_by_places(&[x.clone(), QRatFunc::one()], &q)?;
        if h != hp {
            return Err(failed(format!("place-by-place height {hp} differs from {h}")));
        }
        let mut r = Report::new(&["place", "degree", "ord"]);
        r.note(format!("element {x}, height {h}"));
        let mut rows = Vec::new();
        if !x.is_zero() {
            for p in support_places(std::slice::from_ref(&x), &q)? {
                let o = ff_ord(&x, &p)?;
                r.row(vec![p.to_string(), p.degree().to_string(), o.to_string()]);
                rows.push(json!({"place": p.to_string(), "degree": p.degree(), "ord": o}));
            }
        }
        r.json = json!({"element": x.to_string(), "height": h, "places": rows});
        return Ok(r);
    }
    if let Some(k) = inp.value(&a.sample, "sample")? {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let mut r = Report::new(&["element", "height", "sum_deg_ord"]);
        for _ in 0..k {
            let poly = |rng: &mut ChaCha8Rng| {
                let d = rng.gen_range(0..=5);
                let mut cs: Vec<Rat> = (0..=d).map(|_| Rat::from_integer(rng.gen_range(-9..=9).into())).collect();
                cs[d] = Rat::from_integer(rng.gen_range(1..=9).into());
                UPoly::new(cs)
            };
            let x = QRatFunc::new(poly(&mut rng), poly(&mut rng))?;
            let hp = h_proj_ff_by_places(&[x.clone(), QRatFunc::one()], &q)?;
            if hp != x.height() {
                return Err(failed(format!("height mismatch at {x}")));
            }
            let mut total = 0i64;
            if !x.is_zero() {
                for p in support_places(std::slice::from_ref(&x), &q)? {
                    total += p.degree() as i64 * ff_ord(&x, &p)?;
                }
            }
            if total != 0 {
                return Err(failed(format!("product formula fails at {x}")));
            }
            r.row(vec![x.to_string(), hp.to_string(), total.to_string()]);
        }
        r.note(format!("height and product formulas exact on {k} samples (seed {})", cli.seed));
        r.json = json!({"samples": k, "seed": cli.seed, "ok": true});
        return Ok(r);
    }
    Err(invalid("ffheights needs one of --coords, --elem, --sample"))
}

#[derive(Args, Debug)]
pub struct VeryLargeArgs {
    /// Divisor as JSON (inline or a file path).
    #[arg(long)]
    pub divisor: Option<String>,
    /// Points of P^1 with optional multiplicities, e.g. "0,1,inf" or "0:2,inf".
    #[arg(long)]
    pub p1: Option<String>,
    /// Search multiplicities b in [1, B]^r for a very large sum b_i D_i.
    #[arg(long)]
    pub make: Option<u32>,
    #[arg(long)]
    pub max_pool: Option<usize>,
    #[arg(long)]
    pub max_subsets: Option<usize>,
}

fn p1_divisor(s: &str) -> Result<HypersurfaceDivisor> {
    let mut pts = Vec::new();
    for item in s.split(',') {
        let (pt, m) = match item.split_once(':') {
            Some((p, m)) => (p.trim(), m.trim().parse().map_err(|_| invalid(format!("bad multiplicity {m}")))?),
            None => (item.trim(), 1u32),
        };
        let a = if pt == "inf" || pt == "∞" {
            None
        } else {
            Some(heightlab::wire::rat_from_str(pt)?)
        };
        pts.push((a, m));
    }
    Ok(HypersurfaceDivisor::p1(&pts)?)
}

fn certificate_report(cert: &heightlab::divisor::VeryLargeCertificate, r: &mut Report) -> Result<()> {
    cert.verify().map_err(|e| failed(format!("certificate re-check: {e}")))?;
    let vars = coordinate_names(cert.divisor.ambient_dim());
    for e in &cert.entries {
        let witness: Vec<String> = e.stratum.witness.iter().map(ToString::to_string).collect();
        for (k, s) in &e.order_sums {
            r.row(vec![
                format!("{:?}", e.stratum.pattern),
                format!("[{}]", witness.join(":")),
                cert.divisor.components()[*k].form.display_with(&vars),
                s.to_string(),
            ]);
        }
    }
    Ok(())
}

fn verylarge(inp: &Inputs, a: &VeryLargeArgs) -> Result<Report> {
    let d = if let Some(p) = inp.text(&a.p1, "p1") {
        p1_divisor(&p)?
    } else if let Some(j) = inp.text(&a.divisor, "divisor") {
        divisor_from_json(&json_arg::<DivisorJson>(&j, "divisor")?)?
    } else {
        return Err(invalid("verylarge needs --divisor or --p1"));
    };
    let mut budget = SearchBudget::default();
    if let Some(m) = inp.value(&a.max_pool, "max_pool")? {
        budget.max_pool = m;
    }
    if let Some(m) = inp.value(&a.max_subsets, "max_subsets")? {
        budget.max_subsets = m;
    }
    let mut r = Report::new(&["stratum", "witness", "component", "order_sum"]);
    if let Some(b_max) = inp.value(&a.make, "make")? {
        match make_very_large(&d, b_max, budget)? {
            MakeOutcome::Found { b, certificate } => {
                r.note(format!("very large with multiplicities {b:?}"));
                certificate_report(&certificate, &mut r)?;
                r.json = json!({"status": "found", "b": b, "certificate": certificate_to_json(&certificate)});
            }
            MakeOutcome::NotFound { tried, all_obstructed } => {
                r.note(format!("no multiplicities found among {tried} tried (all obstructed: {all_obstructed})"));
                r.json = json!({"status": "not_found", "tried": tried, "all_obstructed": all_obstructed});
            }
        }
        return Ok(r);
    }
    match certify_very_large(&d, budget)? {
        CertifyOutcome::Certified(cert) => {
            r.note("certified very large; every order sum re-verified");
            certificate_report(&cert, &mut r)?;
            r.json = json!({"status": "certified", "certificate": certificate_to_json(&cert)});
        }
        CertifyOutcome::NotFound(nf) => {
            r.note(format!("not found after examining {} candidate bases", nf.examined));
            let obstruction = nf.obstruction.as_ref().map(|(pat, comp, bound)| {
                json!({"stratum": pat, "component": comp, "max_order_sum": bound})
            });
            if let Some((pat, comp, bound)) = &nf.obstruction {
                r.note(format!(
                    "obstruction: at stratum {pat:?} the order sum along component {comp} is at most {bound}"
                ));
            }
            r.json = json!({"status": "not_found", "examined": nf.examined, "obstruction": obstruction});
        }
    }
    Ok(r)
}

#[derive(Args, Debug)]
pub struct WangArgs {
    /// Linear forms in x0..xn separated by ';', e.g. "x0; x1; x0 - x1".
    #[arg(long)]
    pub forms: Option<String>,
    /// Points separated by ';', coordinates by ',', e.g. "t,1; t^2,1+t".
    #[arg(long)]
    pub points: Option<String>,
    /// Place set: "t, t^2+1, inf" or JSON {"places":[...],"infinity":true}.
    #[arg(long)]
    pub places: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub c: Option<i64>,
    #[arg(long)]
    pub c_prime: Option<i64>,
}

fn linear_form(s: &str, n: usize) -> Result<LinearForm<Rat>> {
    let vars = coordinate_names(n);
    let p = parse_poly(s, &vars)?;
    if !p.is_zero() && (!p.is_homogeneous() || p.total_degree() != 1) {
        return Err(invalid(format!("{s} is not a linear form in x0..x{n}")));
    }
    let coeffs = (0..=n)
        .map(|i| {
            let mut e = vec![0u32; n + 1];
            e[i] = 1;
            p.terms()
                .find(|(m, _)| m.0 == e)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero)
        })
        .collect();
    Ok(LinearForm::new(coeffs))
}

fn place_set(s: &str) -> Result<heightlab::heights_ff::PlaceSet<Rat>> {
    let t = s.trim_start();
    let pj: PlaceSetJson = if t.starts_with('{') {
        json_arg(s, "places")?
    } else {
        let mut places = Vec::new();
        let mut infinity = false;
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            if item == "inf" || item == "∞" {
                infinity = true;
            } else {
                places.push(heightlab::wire::PolySpec::Text(item.to_string()));
            }
        }
        PlaceSetJson { places, infinity }
    };
    Ok(placeset_from_json(&pj, "t")?)
}

fn wang(inp: &Inputs, a: &WangArgs) -> Result<Report> {
    let pts_text = inp.text(&a.points, "points").ok_or_else(|| invalid("wang needs --points"))?;
    let forms_text = inp.text(&a.forms, "forms").ok_or_else(|| invalid("wang needs --forms"))?;
    let points: Vec<ProjPointFF<Rat>> = pts_text
        .split(';')
        .map(|p| Ok(ProjPointFF::new(&ratfunc_list(p)?)?))
        .collect::<Result<_>>()?;
    let n = points.first().map(|p| p.dim()).ok_or_else(|| invalid("no points given"))?;
    if points.iter().any(|p| p.dim() != n) {
        return Err(invalid("points have different dimensions"));
    }
    let forms = forms_text
        .split(';')
        .map(|f| linear_form(f.trim(), n))
        .collect::<Result<Vec<_>>>()?;
    let h = HypCollection::new(n, forms)?;
    let t = match inp.text(&a.places, "places") {
        Some(s) => place_set(&s)?,
        None => heightlab::heights_ff::PlaceSet::empty(),
    };
    let eps = heightlab::wire::rat_from_str(&inp.text(&a.eps, "eps").unwrap_or_else(|| "1/10".into()))?;
    let c = inp.value(&a.c, "c")?.unwrap_or(0);
    let c_prime = inp.value(&a.c_prime, "c_prime")?.unwrap_or(0);
    let rows = wang_classify(&points, &h, &t, &eps, c, c_prime)?;
    let mut r = Report::new(&["point", "h_F", "lhs", "rhs", "classification"]);
    r.note(format!("n = {n}, {} hyperplanes, |T| = {}, eps = {eps}, C = {c}, C' = {c_prime}", h.len(), t.len()));
    let mut js = Vec::new();
    for row in &rows {
        let lhs = row.lhs.map_or("-".to_string(), |v| v.to_string());
        r.row(vec![
            row.point.to_string(),
            row.height.to_string(),
            lhs.clone(),
            row.rhs().to_string(),
            row.classification.to_string(),
        ]);
        js.push(json!({
            "point": row.point.to_string(),
            "h_F": row.height,
            "lhs": row.lhs,
            "rhs": row.rhs().to_string(),
            "rhs_intercept": row.rhs_intercept.to_string(),
            "rhs_slope": row.rhs_slope.to_string(),
            "epsilon": row.epsilon.to_string(),
            "classification": row.classification.to_string(),
        }));
    }
    r.json = json!({"rows": js});
    Ok(r)
}

#[derive(Args, Debug)]
pub struct SpecializeArgs {
    /// Presentation JSON (inline or a file path).
    #[arg(long)]
    pub domain: Option<String>,
    /// Integer point, e.g. "1,2".
    #[arg(long)]
    pub u: Option<String>,
    /// Root index of G(u).
    #[arg(long)]
    pub i: Option<usize>,
    /// Element as JSON {"Q":..,"P":[..]} or an expression in the generators and y.
    #[arg(long)]
    pub elem: Option<String>,
}

fn nf_coordinates(x: &NfElem) -> Vec<String> {
    x.rep().coeffs().iter().map(ToString::to_string).collect()
}

fn specialize_cmd(inp: &Inputs, a: &SpecializeArgs) -> Result<Report> {
    let dom = inp.text(&a.domain, "domain").ok_or_else(|| invalid("specialize needs --domain"))?;
    let pres = presentation_from_json(&json_arg::<PresentationJson>(&dom, "domain")?)?;
    let u = int_list(&inp.text(&a.u, "u").ok_or_else(|| invalid("specialize needs --u"))?)?;
    let i = inp.value(&a.i, "i")?.unwrap_or(0);
    let elem_text = inp.text(&a.elem, "elem").ok_or_else(|| invalid("specialize needs --elem"))?;
    let ej: DomainElemJson = if elem_text.trim_start().starts_with('{') {
        json_arg(&elem_text, "elem")?
    } else {
        DomainElemJson::Text(elem_text.clone())
    };
    let elem = domain_elem_from_json(&ej, &pres)?;
    let m = SpecMap::new(&pres, &u, i)?;
    let val = specialize(&elem, &m)?;
    let minpoly = m.target.minpoly();
    let primes: Vec<String> = m.target.finite_primes().iter().map(ToString::to_string).collect();
    let mut r = Report::new(&["key", "value"]);
    r.row(vec!["element".into(), elem.display_with(pres.names())]);
    r.row(vec!["minpoly".into(), minpoly.to_string()]);
    r.row(vec!["S".into(), format!("inf{}", primes.iter().map(|p| format!(",{p}")).collect::<String>())]);
    r.row(vec!["value".into(), val.to_string()]);
    if !m.target.y_clause_primes.is_empty() {
        r.note(format!("primes added by the ord(y) < 0 clause: {:?}", m.target.y_clause_primes));
    }
    r.json = json!({
        "u": u,
        "i": i,
        "minpoly": minpoly.to_string(),
        "S": primes,
        "value": val.to_string(),
        "coordinates": nf_coordinates(&val),
    });
    Ok(r)
}

#[derive(Args, Debug)]
pub struct UnitSeqArgs {
    /// Primitive polynomial f in t, e.g. "t*(1-t)".
    #[arg(long)]
    pub f: Option<String>,
}

fn exps_string(e: &[i64]) -> String {
    format!("({})", e.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn unitseq(inp: &Inputs, a: &UnitSeqArgs) -> Result<Report> {
    let f = t_poly(&inp.text(&a.f, "f").ok_or_else(|| invalid("unitseq needs --f"))?)?;
    let prob = UnitEqProblem::new(&f)?;
    let names = prob.presentation().names().to_vec();
    let set = unit_equation_solve(&prob)?;
    let gens: Vec<String> = unit_group_generators(&f)?.iter().map(|g| g.display_with(&names)).collect();
    let mut r = Report::new(&["index", "u", "v", "u_sign", "u_exponents", "v_sign", "v_exponents"]);
    r.note(format!("unit generators: {}", gens.join(", ")));
    r.note(format!(
        "degree bound {} (s' = {}), {} candidates examined, {} solutions",
        set.degree_bound_used,
        prob.support_size(),
        set.search.candidates_examined,
        set.solutions.len()
    ));
    let mut js = Vec::new();
    for (k, s) in set.solutions.iter().enumerate() {
        let sum = heightlab::fg_domain::elem_add(&s.u, &s.v)?;
        if sum != heightlab::fg_domain::DomainElem::one(prob.presentation()) {
            return Err(failed(format!("solution {k} does not satisfy u + v = 1")));
        }
        let (u, v) = (s.u.display_with(&names), s.v.display_with(&names));
        r.row(vec![
            k.to_string(),
            u.clone(),
            v.clone(),
            s.u_sign.to_string(),
            exps_string(&s.u_exponents),
            s.v_sign.to_string(),
            exps_string(&s.v_exponents),
        ]);
        js.push(json!({"u": u, "v": v, "u_sign": s.u_sign, "u_exponents": s.u_exponents,
            "v_sign": s.v_sign, "v_exponents": s.v_exponents}));
    }
    r.json = json!({
        "generators": gens,
        "degree_bound": set.degree_bound_used,
        "candidates_examined": set.search.candidates_examined,
        "solutions": js,
    });
    Ok(r)
}

#[derive(Args, Debug)]
pub struct PipelineArgs {
    /// Primitive polynomial f in t.
    #[arg(long)]
    pub f: Option<String>,
    /// Specialization box [-N, N].
    #[arg(long)]
    pub n: Option<u64>,
}

fn pipeline(inp: &Inputs, a: &PipelineArgs) -> Result<Report> {
    let f = t_poly(&inp.text(&a.f, "f").ok_or_else(|| invalid("pipeline needs --f"))?)?;
    let n = inp.value(&a.n, "n")?.unwrap_or(3);
    let prob = UnitEqProblem::new(&f)?;
    let names = prob.presentation().names().to_vec();
    let set = unit_equation_solve(&prob)?;
    let rep = pipeline_report(&prob, &set, n)?;
    let mut r = Report::new(&["solution", "u", "point", "u(point)", "v(point)", "S", "sum_is_1", "s_units"]);
    r.note(format!("{} solutions, {} specialized rows", set.solutions.len(), rep.rows.len()));
    let mut rows = Vec::new();
    for row in &rep.rows {
        let s: Vec<String> = row.s_primes.iter().map(ToString::to_string).collect();
        let u = set.solutions[row.solution].u.display_with(&names);
        r.row(vec![
            row.solution.to_string(),
            u.clone(),
            row.point.to_string(),
            row.u_value.to_string(),
            row.v_value.to_string(),
            format!("inf{}", s.iter().map(|p| format!(",{p}")).collect::<String>()),
            row.sums_to_one.to_string(),
            row.s_units.to_string(),
        ]);
        rows.push(json!({"solution": row.solution, "u": u, "point": row.point,
            "u_value": row.u_value.to_string(), "v_value": row.v_value.to_string(),
            "S": s, "sum_is_1": row.sums_to_one, "s_units": row.s_units}));
    }
    let mut recs = Vec::new();
    for c in &rep.reconstructions {
        r.note(format!(
            "solution {} reconstructed from points {:?}: u {}, v {}",
            c.solution,
            c.points,
            if c.recovered_u { "ok" } else { "FAILED" },
            if c.recovered_v { "ok" } else { "FAILED" }
        ));
        recs.push(json!({"solution": c.solution, "points": c.points,
            "recovered_u": c.recovered_u, "recovered_v": c.recovered_v}));
    }
    if !rep.all_verified() {
        return Err(failed("a specialized row or reconstruction failed its check"));
    }
    r.json = json!({"rows": rows, "reconstructions": recs, "verified": true});
    Ok(r)
}
