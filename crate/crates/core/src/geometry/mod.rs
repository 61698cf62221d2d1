//! Exact verification of chart gluings, contraction maps and torus actions.
//!
//! A [`GluedThreefold`] is two copies of `C^3` with coordinates `(x, y1, y2)`
//! and `(w, z1, z2)`, a transition map and its inverse, contraction
//! coordinates `v_i` written once in each chart, and a target equation in the
//! `v_i`. Identities are checked at random rational points with exact
//! arithmetic; a report says "holds" only if every residual is exactly zero.

mod expr;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use expr::{Assignment, Expression};

use crate::{Error, Result};

pub const CHART1: [&str; 3] = ["x", "y1", "y2"];
pub const CHART2: [&str; 3] = ["w", "z1", "z2"];

const COORDINATE_BOUND: i64 = 10_000;

/// Contraction coordinate with its expression on each chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionCoordinate {
    pub name: String,
    pub wz: Expression,
    pub xy: Expression,
}

/// An equation kept only as text, not evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerbatimEquation {
    pub text: String,
    pub note: String,
}

/// Diagonal torus action: exponent vector of the torus coordinates per chart coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAction {
    pub rank: usize,
    pub weights: BTreeMap<String, Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedThreefold {
    pub name: String,
    /// `w, z1, z2` in terms of `x, y1, y2`.
    pub transition: Vec<(String, Expression)>,
    /// `x, y1, y2` in terms of `w, z1, z2`.
    pub inverse: Vec<(String, Expression)>,
    pub contraction: Vec<ContractionCoordinate>,
    pub equation: Expression,
    pub verbatim: Vec<VerbatimEquation>,
    pub torus: Option<TorusAction>,
    pub notes: Vec<String>,
}

fn ex(text: &str) -> Expression {
    Expression::parse(text).expect("builtin expressions parse")
}

fn pairs(list: &[(&str, String)]) -> Vec<(String, Expression)> {
    list.iter().map(|(n, e)| (n.to_string(), ex(e))).collect()
}

fn coords(list: &[(&str, String, String)]) -> Vec<ContractionCoordinate> {
    list.iter()
        .map(|(n, wz, xy)| ContractionCoordinate { name: n.to_string(), wz: ex(wz), xy: ex(xy) })
        .collect()
}

fn torus(rank: usize, list: &[(&str, Vec<i64>)]) -> Option<TorusAction> {
    Some(TorusAction { rank, weights: list.iter().map(|(n, w)| (n.to_string(), w.clone())).collect() })
}

fn conifold() -> GluedThreefold {
    GluedThreefold {
        name: "conifold".into(),
        transition: pairs(&[("w", "1/x".into()), ("z1", "x*y1".into()), ("z2", "x*y2".into())]),
        inverse: pairs(&[("x", "1/w".into()), ("y1", "z1*w".into()), ("y2", "z2*w".into())]),
        contraction: coords(&[
            ("v1", "z1".into(), "x*y1".into()),
            ("v2", "z2".into(), "x*y2".into()),
            ("v3", "w*z1".into(), "y1".into()),
            ("v4", "w*z2".into(), "y2".into()),
        ]),
        equation: ex("v1*v4 - v2*v3"),
        verbatim: Vec::new(),
        torus: torus(
            3,
            &[
                ("x", vec![1, 0, 0]),
                ("y1", vec![0, 1, 0]),
                ("y2", vec![0, 0, 1]),
                ("w", vec![-1, 0, 0]),
                ("z1", vec![1, 1, 0]),
                ("z2", vec![1, 0, 1]),
            ],
        ),
        notes: vec!["torus action: scaling of x, y1, y2 transported through the gluing".into()],
    }
}

fn laufer1(k: u32) -> GluedThreefold {
    let k = k as i64;
    GluedThreefold {
        name: format!("laufer1:{k}"),
        transition: pairs(&[("w", "1/x".into()), ("z1", format!("x^2*y1 + x*y2^{k}")), ("z2", "y2".into())]),
        inverse: pairs(&[("x", "1/w".into()), ("y1", format!("w^2*z1 - w*z2^{k}")), ("y2", "z2".into())]),
        contraction: coords(&[
            ("v1", "z2".into(), "y2".into()),
            ("v2", "z1".into(), format!("x^2*y1 + x*y2^{k}")),
            ("v3", "w*z1".into(), format!("x*y1 + y2^{k}")),
            ("v4", format!("w^2 - w*z2^{k}"), "y1".into()),
        ]),
        equation: ex(&format!("v2*v4 - v3^2 + v3*v1^{k}")),
        verbatim: vec![VerbatimEquation {
            text: "u_1^2+ u_2^2 + u_2^2 + u_4^{2k} = 0".into(),
            note: "stored as printed; the term u_2^2 appears twice and the coordinate change is not implemented"
                .into(),
        }],
        torus: torus(
            2,
            &[
                ("x", vec![-1, k]),
                ("y1", vec![1, 0]),
                ("y2", vec![0, 1]),
                ("w", vec![1, -k]),
                ("z1", vec![-1, 2 * k]),
                ("z2", vec![0, 1]),
            ],
        ),
        notes: Vec::new(),
    }
}

fn laufer2(n: u32) -> GluedThreefold {
    let n = n as i64;
    let m = 2 * n + 1;
    let z1 = format!("(x^3*y1 + y2^2 + x^2*y2^{m})");
    GluedThreefold {
        name: format!("laufer2:{n}"),
        transition: pairs(&[("w", "1/x".into()), ("z1", format!("x^3*y1 + y2^2 + x^2*y2^{m}")), ("z2", "y2/x".into())]),
        inverse: pairs(&[
            ("x", "1/w".into()),
            ("y1", format!("w^3*(z1 - (z2/w)^2 - (1/w)^2*(z2/w)^{m})")),
            ("y2", "z2/w".into()),
        ]),
        contraction: coords(&[
            ("v1", "z1".into(), format!("x^3*y1 + x*y2^{m}")),
            ("v2", "w^2*z1 - z2^2".into(), format!("x*y1 + y2^{m}")),
            (
                "v3",
                format!("w^3*z1 - w*z2^2 - z1^{n}*z2"),
                format!("y1 + (1/x)*(y2^{m} - y2*{z1}^{n})"),
            ),
            (
                "v4",
                format!("w^2*z1*z2 - z2^3 - w*z2^{}", n + 1),
                format!("y1*y2 + (1/x)*(y2^{} - {z1}^{})", m + 1, n + 1),
            ),
        ]),
        equation: ex(&format!("v4^2 + v2^3 - v1*v3 - v1^{m}*v2")),
        verbatim: Vec::new(),
        torus: torus(
            1,
            &[
                ("x", vec![1 - 2 * n]),
                ("y1", vec![6 * n + 1]),
                ("y2", vec![2]),
                ("w", vec![2 * n - 1]),
                ("z1", vec![4]),
                ("z2", vec![m]),
            ],
        ),
        notes: Vec::new(),
    }
}

/// Named corrections of printed formulas, as `(target, expression)` overrides.
pub fn variants(family: &str, param: u32) -> Vec<(&'static str, Vec<(String, String)>)> {
    let p = param as i64;
    match family {
        "laufer1" => vec![("corrected", vec![("v4:wz".into(), format!("w^2*z1 - w*z2^{p}"))])],
        "laufer2" => vec![
            ("corrected-v4", vec![("v4:wz".into(), format!("w^2*z1*z2 - z2^3 - w*z1^{}", p + 1))]),
            (
                "corrected",
                vec![
                    ("v4:wz".into(), format!("w^2*z1*z2 - z2^3 - w*z1^{}", p + 1)),
                    ("v1:xy".into(), format!("x^3*y1 + y2^2 + x^2*y2^{}", 2 * p + 1)),
                    ("equation".into(), format!("v4^2 + v2^3 - v1*v3^2 - v1^{}*v2", 2 * p + 1)),
                ],
            ),
        ],
        _ => Vec::new(),
    }
}

/// `conifold`, `laufer1:<k>` or `laufer2:<n>`, optionally followed by `/<variant>`.
pub fn builtin_geometry(name: &str) -> Result<GluedThreefold> {
    let (base, variant) = match name.split_once('/') {
        Some((b, v)) => (b, Some(v)),
        None => (name, None),
    };
    let (family, param) = match base.split_once(':') {
        Some((f, p)) => {
            let p: u32 = p.parse().map_err(|_| Error::UnknownGeometry(format!("bad parameter in `{name}`")))?;
            (f, Some(p))
        }
        None => (base, None),
    };
    let mut g = match (family, param) {
        ("conifold", None) => conifold(),
        ("laufer1", Some(k)) if k >= 1 => laufer1(k),
        ("laufer2", Some(n)) if n >= 1 => laufer2(n),
        _ => return Err(Error::UnknownGeometry(name.to_string())),
    };
    if let Some(v) = variant {
        let list = variants(family, param.unwrap_or(0));
        let (_, overrides) = list
            .into_iter()
            .find(|(vn, _)| *vn == v)
            .ok_or_else(|| Error::UnknownGeometry(format!("no variant `{v}` of {family}")))?;
        for (target, text) in overrides {
            g.set(&target, &text)?;
        }
        g.name = name.to_string();
    }
    Ok(g)
}

impl GluedThreefold {
    /// Replaces one formula. Targets: `v<i>:wz`, `v<i>:xy`, `transition:<coord>`,
    /// `inverse:<coord>`, `equation`.
    pub fn set(&mut self, target: &str, text: &str) -> Result<()> {
        let e = Expression::parse(text)?;
        let bad = || Error::UnknownGeometry(format!("cannot override `{target}`"));
        if target == "equation" {
            self.equation = e;
            return Ok(());
        }
        let (head, tail) = target.split_once(':').ok_or_else(bad)?;
        match head {
            "transition" | "inverse" => {
                let list = if head == "transition" { &mut self.transition } else { &mut self.inverse };
                let slot = list.iter_mut().find(|(n, _)| n == tail).ok_or_else(bad)?;
                slot.1 = e;
            }
            v => {
                let c = self.contraction.iter_mut().find(|c| c.name == v).ok_or_else(bad)?;
                match tail {
                    "wz" => c.wz = e,
                    "xy" => c.xy = e,
                    _ => return Err(bad()),
                }
            }
        }
        self.notes.push(format!("override {target} = {text}"));
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub point: BTreeMap<String, String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub geometry: String,
    pub identity: String,
    pub status: Status,
    pub trials: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let n = rng.gen_range(-COORDINATE_BOUND..=COORDINATE_BOUND);
    let d = rng.gen_range(1..=COORDINATE_BOUND);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_point(rng: &mut ChaCha8Rng, names: &[&str]) -> Assignment {
    names.iter().map(|n| (n.to_string(), random_rational(rng))).collect()
}

fn apply(map: &[(String, Expression)], at: &Assignment) -> Result<Assignment> {
    map.iter().map(|(n, e)| Ok((n.clone(), e.eval(at)?))).collect()
}

/// Draws points with `accept` succeeding, skipping those outside the domain.
fn sample<T, F>(seed: u64, trials: usize, names: &[&str], mut accept: F) -> Result<Vec<(Assignment, T)>>
where
    F: FnMut(&mut ChaCha8Rng, &Assignment) -> Option<T>,
{
    if trials == 0 {
        return Err(Error::Expression("at least one trial is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    let mut attempts = 0;
    while out.len() < trials {
        attempts += 1;
        if attempts > 100 * trials + 100 {
            return Err(Error::Expression("could not find enough sample points in the domain".into()));
        }
        let p = random_point(&mut rng, names);
        if let Some(extra) = accept(&mut rng, &p) {
            out.push((p, extra));
        }
    }
    Ok(out)
}

fn display(a: &Assignment) -> BTreeMap<String, String> {
    a.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

fn report(geometry: &str, identity: &str, results: Vec<(Assignment, BigRational)>) -> VerificationReport {
    let trials = results.len();
    let counterexamples: Vec<Counterexample> = results
        .into_iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(p, r)| Counterexample { point: display(&p), residual: r.to_string() })
        .collect();
    VerificationReport {
        geometry: geometry.to_string(),
        identity: identity.to_string(),
        status: if counterexamples.is_empty() { Status::Holds } else { Status::Fails },
        trials,
        counterexamples,
    }
}

/// Largest absolute coordinate residual between two assignments on shared keys.
fn max_residual(a: &Assignment, b: &Assignment) -> BigRational {
    a.iter()
        .map(|(k, v)| {
            let d = v - &b[k];
            if d < BigRational::zero() {
                -d
            } else {
                d
            }
        })
        .max()
        .unwrap_or_else(BigRational::zero)
}

fn in_domain(g: &GluedThreefold, p: &Assignment) -> bool {
    p["x"] != BigRational::zero() && apply(&g.transition, p).and_then(|q| apply(&g.inverse, &q)).is_ok()
}

/// Chart 1 to chart 2 and back is the identity on the overlap.
pub fn verify_transition(g: &GluedThreefold, trials: usize, seed: u64) -> Result<VerificationReport> {
    let points = sample(seed, trials, &CHART1, |_, p| in_domain(g, p).then_some(()))?;
    let results: Vec<(Assignment, BigRational)> = points
        .into_par_iter()
        .map(|(p, _)| {
            let back = apply(&g.transition, &p).and_then(|q| apply(&g.inverse, &q)).expect("domain checked");
            let r = max_residual(&back, &p);
            (p, r)
        })
        .collect();
    Ok(report(&g.name, "transition", results))
}

fn values(g: &GluedThreefold, chart: fn(&ContractionCoordinate) -> &Expression, at: &Assignment) -> Result<Assignment> {
    g.contraction.iter().map(|c| Ok((c.name.clone(), chart(c).eval(at)?))).collect()
}

/// Agreement of each `v_i` across charts and the target equation on both charts.
pub fn verify_contraction(g: &GluedThreefold, trials: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    let overlap = sample(seed, trials, &CHART1, |_, p| {
        let q = apply(&g.transition, p).ok()?;
        let vw = values(g, |c| &c.wz, &q).ok()?;
        let vx = values(g, |c| &c.xy, p).ok()?;
        (p["x"] != BigRational::zero()).then_some((vw, vx))
    })?;
    let mut reports = Vec::new();
    for c in &g.contraction {
        let results = overlap
            .par_iter()
            .map(|(p, (vw, vx))| (p.clone(), &vw[&c.name] - &vx[&c.name]))
            .collect();
        reports.push(report(&g.name, &format!("{}: {} = {}", c.name, c.wz, c.xy), results));
    }
    let eq_xy = overlap
        .par_iter()
        .map(|(p, (_, vx))| (p.clone(), g.equation.eval(vx)))
        .map(|(p, r)| r.map(|r| (p, r)))
        .collect::<Result<Vec<_>>>()?;
    reports.push(report(&g.name, &format!("{} on the (x,y) chart", g.equation), eq_xy));
    let chart2 = sample(seed.wrapping_add(1), trials, &CHART2, |_, q| {
        let v = values(g, |c| &c.wz, q).ok()?;
        g.equation.eval(&v).ok()
    })?;
    reports.push(report(&g.name, &format!("{} on the (w,z) chart", g.equation), chart2));
    Ok(reports)
}

fn act(t: &TorusAction, torus_point: &[BigRational], at: &Assignment) -> Result<Assignment> {
    at.iter()
        .map(|(n, v)| {
            let w = t.weights.get(n).ok_or_else(|| Error::NoTorusAction(format!("no weight for `{n}`")))?;
            let scale = torus_point
                .iter()
                .zip(w)
                .fold(BigRational::one(), |acc, (s, &e)| acc * s.pow(e as i32));
            Ok((n.clone(), scale * v))
        })
        .collect()
}

/// `transition(t . p) = t . transition(p)` at random points and torus elements.
pub fn verify_equivariance(g: &GluedThreefold, trials: usize, seed: u64) -> Result<VerificationReport> {
    let t = g.torus.as_ref().ok_or_else(|| Error::NoTorusAction(g.name.clone()))?;
    let points = sample(seed, trials, &CHART1, |rng, p| {
        if !in_domain(g, p) {
            return None;
        }
        let s: Vec<BigRational> = (0..t.rank).map(|_| random_rational(rng)).collect();
        if s.iter().any(|x| x.is_zero()) {
            return None;
        }
        let moved = act(t, &s, p).ok()?;
        apply(&g.transition, &moved).ok()?;
        Some(s)
    })?;
    let results = points
        .into_par_iter()
        .map(|(p, s)| -> Result<(Assignment, BigRational)> {
            let lhs = apply(&g.transition, &act(t, &s, &p)?)?;
            let rhs = act(t, &s, &apply(&g.transition, &p)?)?;
            let mut shown = p.clone();
            for (i, x) in s.iter().enumerate() {
                shown.insert(format!("t{}", i + 1), x.clone());
            }
            Ok((shown, max_residual(&lhs, &rhs)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(&g.name, "torus equivariance of the transition", results))
}

/// Transition, contraction and, when available, equivariance reports.
pub fn verify_all(g: &GluedThreefold, trials: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut out = vec![verify_transition(g, trials, seed)?];
    out.extend(verify_contraction(g, trials, seed)?);
    if g.torus.is_some() {
        out.push(verify_equivariance(g, trials, seed)?);
    }
    Ok(out)
}
