//! Side-by-side NCDT / GW comparison sheets.
//!
//! The NCDT side is the crystal count of the chosen family; the GW side is the
//! topological-vertex partition function of a crepant resolution. The user's
//! variable map is applied to the NCDT series and both sides are compared term
//! by term in a common variable space. No dictionary is built in.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::json;

use crate::crystal::{ncdt_series, CrystalFamily, SignConvention};
use crate::representations::{cartan_matrix, positive_roots, CartanMatrix, Root, RootKind, StabilityParameter};
use crate::series::FormalSeries;
use crate::toric::{dual_web, gw_partition_function, orbifold_polygon, unit_triangulations, LatticePolygon};
use crate::{Error, Result};

/// Sign of `theta . alpha` for one root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub root: Vec<i64>,
    pub kind: RootKind,
    pub sign: i8,
}

/// Roots of height at most `radius` together with the side of each wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberCertificate {
    pub radius: u32,
    pub entries: Vec<CertificateEntry>,
}

impl ChamberCertificate {
    pub fn signs(&self) -> Vec<i8> {
        self.entries.iter().map(|e| e.sign).collect()
    }

    /// Same roots checked and no wall crossed.
    pub fn same_chamber(&self, other: &Self) -> bool {
        self.entries == other.entries
    }

    /// Every checked root pairs negatively, as for the all-negative parameter.
    pub fn all_negative(&self) -> bool {
        self.entries.iter().all(|e| e.sign < 0)
    }
}

fn format_vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn chamber_certificate(theta: &StabilityParameter, roots: &[Root], radius: u32) -> Result<ChamberCertificate> {
    let mut entries = Vec::new();
    for r in roots.iter().filter(|r| r.height().abs() <= radius as i64) {
        let p = theta.pair(&r.vector)?;
        if p.is_zero() {
            return Err(Error::OnWall(format_vector(&r.vector)));
        }
        entries.push(CertificateEntry { root: r.vector.clone(), kind: r.kind, sign: if p.is_positive() { 1 } else { -1 } });
    }
    Ok(ChamberCertificate { radius, entries })
}

/// One entry `source = c * x1^k1 * x2^k2 ...` of a variable map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub source: String,
    pub coefficient: BigInt,
    pub factors: Vec<(String, i32)>,
}

impl std::fmt::Display for Substitution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let c = self.coefficient.abs();
        if !c.is_one() || self.factors.is_empty() {
            parts.push(c.to_string());
        }
        for (v, k) in &self.factors {
            parts.push(match k {
                1 => v.clone(),
                k if *k < 0 => format!("{v}^({k})"),
                k => format!("{v}^{k}"),
            });
        }
        let sign = if self.coefficient.is_negative() { "-" } else { "" };
        write!(f, "{}={sign}{}", self.source, parts.join("*"))
    }
}

/// User-supplied hypothesis mapping NCDT variables to signed monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VariableMap {
    entries: Vec<Substitution>,
}

impl VariableMap {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Parses `q0=-Q0*t^2, q1=t^(-1)`. An empty string is the empty map.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<Substitution> = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (source, image) =
                item.split_once('=').ok_or_else(|| Error::Parse(format!("map entry `{item}` has no `=`")))?;
            let source = source.trim().to_string();
            if !is_identifier(&source) {
                return Err(Error::Parse(format!("bad variable `{source}`")));
            }
            if entries.iter().any(|e| e.source == source) {
                return Err(Error::Parse(format!("variable `{source}` mapped twice")));
            }
            let (coefficient, factors) = parse_monomial(image.trim())?;
            entries.push(Substitution { source, coefficient, factors });
        }
        Ok(VariableMap { entries })
    }

    pub fn entries(&self) -> &[Substitution] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn get(&self, var: &str) -> Option<&Substitution> {
        self.entries.iter().find(|e| e.source == var)
    }
}

impl std::fmt::Display for VariableMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_monomial(text: &str) -> Result<(BigInt, Vec<(String, i32)>)> {
    let bad = || Error::Parse(format!("bad monomial `{text}`"));
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, text),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut coefficient = BigInt::one();
    let mut factors: BTreeMap<String, i32> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for factor in body.split('*').map(str::trim) {
        if let Ok(c) = factor.parse::<BigInt>() {
            if c.is_zero() {
                return Err(Error::Parse(format!("zero coefficient in `{text}`")));
            }
            coefficient *= c;
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => {
                let p = p.trim();
                let p = p.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(p);
                (n.trim(), p.trim().parse::<i32>().map_err(|_| bad())?)
            }
            None => (factor, 1),
        };
        if !is_identifier(name) {
            return Err(bad());
        }
        if !factors.contains_key(name) {
            order.push(name.to_string());
        }
        *factors.entry(name.to_string()).or_insert(0) += power;
    }
    if negative {
        coefficient = -coefficient;
    }
    let factors = order.into_iter().map(|n| (n.clone(), factors[&n])).filter(|(_, k)| *k != 0).collect();
    Ok((coefficient, factors))
}

/// Inputs of a comparison.
#[derive(Clone, Debug)]
pub struct CompareRequest {
    pub family: CrystalFamily,
    /// Total NCDT dimension and total GW curve degree.
    pub truncation: u32,
    pub theta: StabilityParameter,
    pub variable_map: VariableMap,
    pub sign: SignConvention,
    /// Exclusive bound on the exponent of `t` on the GW side.
    pub t_precision: i64,
    /// Cartan matrix supplying the roots; `None` uses the family default.
    pub cartan: Option<CartanMatrix>,
    /// Height bound of the certificate; `None` uses `max(truncation, 1)`.
    pub radius: Option<u32>,
}

impl CompareRequest {
    pub fn new(family: CrystalFamily, truncation: u32, theta: StabilityParameter) -> Self {
        CompareRequest {
            family,
            truncation,
            theta,
            variable_map: VariableMap::identity(),
            sign: SignConvention::Unsigned,
            t_precision: 12,
            cartan: None,
            radius: None,
        }
    }
}

/// Affine `A_1` for the conifold, the raw McKay quiver otherwise.
pub fn default_cartan(family: &CrystalFamily) -> CartanMatrix {
    match family {
        CrystalFamily::Conifold => CartanMatrix::parse("2,-2;-2,2").expect("affine A1"),
        CrystalFamily::Orbifold(_) => cartan_matrix(&family.quiver()),
    }
}

/// Polygon whose first unit triangulation feeds the GW side.
pub fn gw_polygon(family: &CrystalFamily) -> Result<LatticePolygon> {
    match family {
        CrystalFamily::Conifold => Ok(LatticePolygon::unit_square()),
        CrystalFamily::Orbifold(act) => orbifold_polygon(act),
    }
}

/// A coefficient pair that differs in the common variable space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffEntry {
    pub exponents: Vec<i32>,
    pub ncdt: String,
    pub gw: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonSheet {
    pub geometry: String,
    pub truncation: u32,
    pub t_precision: i64,
    pub sign_convention: String,
    pub theta: StabilityParameter,
    pub certificate: ChamberCertificate,
    /// The certificate matches the all-negative parameter, where the crystal count applies.
    pub crystal_chamber: bool,
    pub variable_map: VariableMap,
    /// Every mapped image has positive degree, so no unknown NCDT term leaks into the comparison range.
    pub substitution_complete: bool,
    pub ncdt: FormalSeries,
    pub gw: FormalSeries,
    pub substituted: FormalSeries,
    pub gw_lifted: FormalSeries,
    pub diff: Vec<DiffEntry>,
}

pub fn compare(req: &CompareRequest) -> Result<ComparisonSheet> {
    let n = req.family.colours();
    if req.theta.len() != n {
        return Err(Error::DimensionMismatch(format!("theta has {} entries, the quiver has {n} vertices", req.theta.len())));
    }
    let cartan = req.cartan.clone().unwrap_or_else(|| default_cartan(&req.family));
    if cartan.size() != n {
        return Err(Error::DimensionMismatch(format!("Cartan matrix has size {}, the quiver has {n} vertices", cartan.size())));
    }
    let radius = req.radius.unwrap_or(req.truncation.max(1)).max(1);
    let roots = positive_roots(&cartan, radius)?;
    let certificate = chamber_certificate(&req.theta, &roots, radius)?;

    let ncdt_vars = req.family.variables();
    for e in req.variable_map.entries() {
        if !ncdt_vars.contains(&e.source) {
            return Err(Error::Parse(format!("`{}` is not an NCDT variable ({})", e.source, ncdt_vars.join(","))));
        }
    }
    let ncdt = ncdt_series(&req.family, req.truncation, &req.sign);

    let polygon = gw_polygon(&req.family)?;
    let triangulation = unit_triangulations(&polygon)
        .into_iter()
        .next()
        .ok_or_else(|| Error::DegeneratePolygon("no unit triangulation".into()))?;
    let gw = gw_partition_function(&dual_web(&triangulation), req.truncation, req.t_precision)?;

    let mut vars: Vec<String> = gw.vars().to_vec();
    let mut weights: Vec<u32> = gw.weights().to_vec();
    let mut below: Vec<Option<i32>> = gw.below().to_vec();
    let mut push = |name: &str, vars: &mut Vec<String>| {
        if !vars.iter().any(|v| v == name) {
            vars.push(name.to_string());
            weights.push(1);
            below.push(None);
        }
    };
    for v in &ncdt_vars {
        if req.variable_map.get(v).is_none() {
            push(v, &mut vars);
        }
    }
    for e in req.variable_map.entries() {
        for (name, _) in &e.factors {
            push(name, &mut vars);
        }
    }
    let union = FormalSeries::zero(&vars, req.truncation).with_grading(weights, below)?;
    let index = |name: &str| vars.iter().position(|v| v == name).expect("variable in union space");

    let substitution_complete = req.variable_map.entries().iter().all(|e| {
        let mut exps = vec![0; vars.len()];
        for (name, k) in &e.factors {
            exps[index(name)] += k;
        }
        union.weighted_degree(&exps) >= 1
    });

    let mut substituted = union.clone();
    for (e, c) in ncdt.terms() {
        let mut exps = vec![0i32; vars.len()];
        let mut coeff = c.clone();
        for (v, &k) in ncdt_vars.iter().zip(e) {
            match req.variable_map.get(v) {
                Some(s) => {
                    coeff *= num_traits::pow(s.coefficient.clone(), k as usize);
                    for (name, p) in &s.factors {
                        exps[index(name)] += p * k;
                    }
                }
                None => exps[index(v)] += k,
            }
        }
        substituted.add_term(&exps, coeff);
    }

    let mut gw_lifted = union.clone();
    let gw_index: Vec<usize> = gw.vars().iter().map(|v| index(v)).collect();
    for (e, c) in gw.terms() {
        let mut exps = vec![0i32; vars.len()];
        for (&i, &k) in gw_index.iter().zip(e) {
            exps[i] = k;
        }
        gw_lifted.add_term(&exps, c.clone());
    }

    let diff = substituted
        .diff(&gw_lifted)?
        .into_iter()
        .map(|(exponents, a, b)| DiffEntry { exponents, ncdt: a.to_string(), gw: b.to_string() })
        .collect();

    Ok(ComparisonSheet {
        geometry: req.family.to_string(),
        truncation: req.truncation,
        t_precision: req.t_precision,
        sign_convention: req.sign.describe(),
        theta: req.theta.clone(),
        crystal_chamber: certificate.all_negative(),
        certificate,
        variable_map: req.variable_map.clone(),
        substitution_complete,
        ncdt,
        gw,
        substituted,
        gw_lifted,
        diff,
    })
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, x)| format!("{x:<w$}", w = widths[c])).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

fn sign_char(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

impl ComparisonSheet {
    pub fn to_json(&self) -> String {
        let theta: Vec<String> = self.theta.0.iter().map(|x| x.to_string()).collect();
        let map: Vec<String> = self.variable_map.entries().iter().map(|e| e.to_string()).collect();
        let value = json!({
            "geometry": self.geometry,
            "truncation": self.truncation,
            "t_precision": self.t_precision,
            "sign_convention": self.sign_convention,
            "theta": theta,
            "certificate": self.certificate,
            "crystal_chamber": self.crystal_chamber,
            "variable_map": map,
            "substitution_complete": self.substitution_complete,
            "ncdt": self.ncdt.to_text(),
            "gw": self.gw.to_text(),
            "substituted": self.substituted.to_text(),
            "common_vars": self.substituted.vars(),
            "diff": self.diff,
        });
        serde_json::to_string_pretty(&value).expect("sheet serialises")
    }

    pub fn to_text(&self) -> String {
        let yes_no = |b: bool| if b { "yes" } else { "no" }.to_string();
        let map = if self.variable_map.is_empty() { "(none)".to_string() } else { self.variable_map.to_string() };
        let mut out = table(&[
            vec!["geometry".into(), self.geometry.clone()],
            vec!["truncation".into(), self.truncation.to_string()],
            vec!["t precision".into(), self.t_precision.to_string()],
            vec!["sign convention".into(), self.sign_convention.clone()],
            vec!["theta".into(), self.theta.to_string()],
            vec!["crystal chamber".into(), yes_no(self.crystal_chamber)],
            vec!["variable map".into(), map],
            vec!["substitution complete".into(), yes_no(self.substitution_complete)],
        ]);
        let _ = writeln!(out, "\n## chamber certificate (radius {})", self.certificate.radius);
        let mut rows = vec![vec!["root".to_string(), "kind".into(), "sign".into()]];
        for e in &self.certificate.entries {
            let kind = match e.kind {
                RootKind::Real => "real",
                RootKind::Imaginary => "imaginary",
            };
            rows.push(vec![format_vector(&e.root), kind.into(), sign_char(e.sign).into()]);
        }
        out.push_str(&table(&rows));
        for (title, s) in [("ncdt series", &self.ncdt), ("gw series", &self.gw), ("substituted ncdt series", &self.substituted)] {
            let _ = writeln!(out, "\n## {title}");
            out.push_str(&s.to_text());
        }
        let _ = writeln!(out, "\n## diff over {} ({} terms)", self.substituted.vars().join(","), self.diff.len());
        let mut rows = vec![vec!["exponents".to_string(), "ncdt".into(), "gw".into()]];
        for d in &self.diff {
            let e: Vec<String> = d.exponents.iter().map(|x| x.to_string()).collect();
            rows.push(vec![e.join(","), d.ncdt.clone(), d.gw.clone()]);
        }
        out.push_str(&table(&rows));
        out
    }
}
