use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::partition::Partition;
use super::vertex::{vertex_raw, TSeries, VertexCache};
use super::web::DualWeb;
use crate::series::{FormalSeries, LaurentSeries};
use crate::{Error, Result};

/// How the partition sum over edge assignments is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EvaluationOrder {
    /// Parallel over assignments, shared cache of canonically rotated amplitudes.
    #[default]
    Cached,
    /// Sequential, amplitudes recomputed in a rotated slot order, nodes multiplied last to first.
    Rotated,
}

const INITIAL_MARGIN: i64 = 16;

fn assignments(edges: usize, budget: u32) -> Vec<Vec<Partition>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(edges);
    fn rec(edges: usize, budget: u32, current: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if current.len() == edges {
            out.push(current.clone());
            return;
        }
        for p in Partition::up_to(budget) {
            let b = budget - p.size();
            current.push(p);
            rec(edges, b, current, out);
            current.pop();
        }
    }
    rec(edges, budget, &mut current, &mut out);
    out
}

fn term(web: &DualWeb, assignment: &[Partition], work: i64, cache: &VertexCache, order: EvaluationOrder) -> TSeries {
    let mut slots = vec![[Partition::empty(), Partition::empty(), Partition::empty()]; web.nodes.len()];
    let mut acc = TSeries::one();
    for (e, lambda) in web.edges.iter().zip(assignment) {
        let [(a, i), (b, j)] = e.ends;
        slots[a][i] = lambda.clone();
        slots[b][j] = lambda.transpose();
        let size = lambda.size() as i64;
        let sign = if ((e.framing + 1) * size).rem_euclid(2) == 0 { 1 } else { -1 };
        acc = acc.shift(e.framing * lambda.kappa()).scale(&BigInt::from(sign));
    }
    match order {
        EvaluationOrder::Cached => {
            for [l, m, n] in &slots {
                acc = &acc * &cache.get(l, m, n, work);
            }
        }
        EvaluationOrder::Rotated => {
            for [l, m, n] in slots.iter().rev() {
                acc = &acc * &vertex_raw(m, n, l, work);
            }
        }
    }
    acc
}

fn evaluate(
    web: &DualWeb,
    degree: u32,
    work: i64,
    cache: &VertexCache,
    order: EvaluationOrder,
) -> Vec<(Vec<u32>, TSeries)> {
    let list = assignments(web.edges.len(), degree);
    let compute = |a: &Vec<Partition>| (a.iter().map(Partition::size).collect::<Vec<u32>>(), term(web, a, work, cache, order));
    match order {
        EvaluationOrder::Cached => list.par_iter().map(compute).collect(),
        EvaluationOrder::Rotated => list.iter().map(compute).collect(),
    }
}

/// Truncated `Z^GW` with variables `Q0..Q_{E-1}, t`, total `Q`-degree at most
/// `degree`, every `t`-coefficient below `t_precision` exact.
pub fn gw_partition_function(web: &DualWeb, degree: u32, t_precision: i64) -> Result<FormalSeries> {
    gw_partition_function_with(web, degree, t_precision, &VertexCache::new(), EvaluationOrder::Cached)
}

pub fn gw_partition_function_with(
    web: &DualWeb,
    degree: u32,
    t_precision: i64,
    cache: &VertexCache,
    order: EvaluationOrder,
) -> Result<FormalSeries> {
    web.validate()?;
    let e = web.edges.len();
    let mut vars = web.variables();
    vars.push("t".into());
    let bound = i32::try_from(t_precision).map_err(|_| Error::TooLarge("t precision".into()))?;
    let template = FormalSeries::zero(&vars, degree)
        .with_grading([vec![1; e], vec![0]].concat(), [vec![None; e], vec![Some(bound)]].concat())?;
    let mut margin = INITIAL_MARGIN;
    loop {
        let terms = evaluate(web, degree, t_precision + margin, cache, order);
        let mut sums: BTreeMap<Vec<u32>, TSeries> = BTreeMap::new();
        for (d, s) in terms {
            let slot = sums.entry(d).or_insert_with(TSeries::zero);
            *slot = &*slot + &s;
        }
        let reached = sums.values().filter_map(|s| s.precision()).min().unwrap_or(i64::MAX);
        if reached >= t_precision {
            let mut out = template.clone();
            for (d, s) in sums {
                for (exp, c) in s.terms() {
                    let mut exps: Vec<i32> = d.iter().map(|&x| x as i32).collect();
                    exps.push(exp as i32);
                    out.add_term(&exps, c.clone());
                }
            }
            return Ok(out);
        }
        margin = margin * 2 + (t_precision - reached);
    }
}

/// Identifies all weight-one variables with a single `Q`.
pub fn collapse_kahler(z: &FormalSeries) -> Result<FormalSeries> {
    let (t_index, bound) = t_variable(z)?;
    let mut out = FormalSeries::zero(&["Q", "t"], z.order()).with_grading(vec![1, 0], vec![None, bound])?;
    for (exps, c) in z.terms() {
        let d: i32 = exps.iter().enumerate().filter(|(i, _)| *i != t_index).map(|(_, x)| *x).sum();
        out.add_term(&[d, exps[t_index]], c.clone());
    }
    Ok(out)
}

fn t_variable(z: &FormalSeries) -> Result<(usize, Option<i32>)> {
    let zero_weight: Vec<usize> = (0..z.vars().len()).filter(|&i| z.weights()[i] == 0).collect();
    match zero_weight.as_slice() {
        &[i] => Ok((i, z.below()[i])),
        _ => Err(Error::InvalidSeries("expected exactly one weight-zero variable t".into())),
    }
}

type RSeries = LaurentSeries<BigRational>;

/// Gopakumar-Vafa invariants `n^g_d` by total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GvTable {
    pub degree: u32,
    /// `(g, d) -> n^g_d`, nonzero entries only.
    pub values: BTreeMap<(u32, u32), BigRational>,
    /// `t`-precision of `u * f_d` for each `d`.
    pub precision: Vec<i64>,
}

impl GvTable {
    pub fn get(&self, genus: u32, d: u32) -> BigRational {
        self.values.get(&(genus, d)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.values.values().all(|v| v.is_integer())
    }

    pub fn max_genus(&self) -> u32 {
        self.values.keys().map(|(g, _)| *g).max().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# g\td\tn\n");
        for g in 0..=self.max_genus() {
            for d in 1..=self.degree {
                let _ = writeln!(out, "{g}\t{d}\t{}", self.get(g, d));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry {
            genus: u32,
            degree: u32,
            value: String,
        }
        #[derive(Serialize)]
        struct Out {
            degree: u32,
            integral: bool,
            invariants: Vec<Entry>,
            precision: Vec<i64>,
        }
        let invariants = (0..=self.max_genus())
            .flat_map(|g| (1..=self.degree).map(move |d| (g, d)))
            .map(|(g, d)| Entry { genus: g, degree: d, value: self.get(g, d).to_string() })
            .collect();
        let out = Out { degree: self.degree, integral: self.is_integral(), invariants, precision: self.precision.clone() };
        serde_json::to_string_pretty(&out).expect("table serialises")
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `u_k = 2 - t^{2k} - t^{-2k}`.
fn u(k: i64) -> RSeries {
    RSeries::polynomial([(-2 * k, rat(-1)), (0, rat(2)), (2 * k, rat(-1))])
}

fn u_power(k: i64, g: u32) -> RSeries {
    (0..g).fold(RSeries::one(), |acc, _| &acc * &u(k))
}

/// `n (1/k) u_k^{g-1}`, with `1/u_k = -t^{2k}/(1-t^{2k})^2` at genus zero.
fn cover_term(n: &BigRational, k: i64, g: u32, precision: i64) -> RSeries {
    let kr = rat(k);
    if g == 0 {
        let mut s = RSeries::zero();
        let mut m = 1;
        while 2 * k * m < precision {
            s.add_term(2 * k * m, -(n * rat(m)) / &kr);
            m += 1;
        }
        s.truncated(precision)
    } else {
        u_power(k, g - 1).scale(&(n / &kr))
    }
}

/// Inverts the multiple-cover formula on `F = log Z` after identifying all
/// Kähler variables; genera are read off wherever the `t`-precision reaches.
pub fn gv_extract(z: &FormalSeries) -> Result<GvTable> {
    let z = collapse_kahler(z)?;
    let (_, bound) = t_variable(&z)?;
    let precision = bound.ok_or_else(|| Error::InvalidSeries("t variable needs a precision bound".into()))? as i64;
    let n = z.order();
    let mut x: Vec<RSeries> = vec![RSeries::zero().truncated(precision); n as usize + 1];
    let mut constant = RSeries::zero();
    for (exps, c) in z.terms() {
        let term = BigRational::from_integer(c.clone());
        if exps[0] == 0 {
            constant.add_term(exps[1] as i64, term);
        } else {
            x[exps[0] as usize].add_term(exps[1] as i64, term);
        }
    }
    if constant != RSeries::one() {
        return Err(Error::NonUnitConstant);
    }
    let mut f: Vec<RSeries> = vec![RSeries::zero().truncated(precision); n as usize + 1];
    let mut power = x.clone();
    for m in 1..=n as usize {
        if m > 1 {
            let mut next = vec![RSeries::zero().truncated(precision); n as usize + 1];
            for d1 in 1..=n as usize {
                for d2 in 1..=(n as usize - d1) {
                    next[d1 + d2] = &next[d1 + d2] + &(&power[d1] * &x[d2]);
                }
            }
            power = next;
        }
        let c = BigRational::new(BigInt::from(if m % 2 == 1 { 1 } else { -1 }), BigInt::from(m));
        for d in 1..=n as usize {
            f[d] = &f[d] + &power[d].scale(&c);
        }
    }
    let mut table = GvTable { degree: n, values: BTreeMap::new(), precision: Vec::new() };
    for d in 1..=n {
        let mut fd = f[d as usize].clone();
        for k in 2..=d {
            if d % k != 0 {
                continue;
            }
            let lower: Vec<(u32, BigRational)> =
                table.values.iter().filter(|((_, e), _)| *e == d / k).map(|((g, _), v)| (*g, v.clone())).collect();
            for (g, v) in lower {
                fd = &fd - &cover_term(&v, k as i64, g, precision);
            }
        }
        let mut r = &u(1) * &fd;
        let p = r.precision().unwrap_or(i64::MAX);
        table.precision.push(p);
        if p <= 0 {
            return Err(Error::InsufficientPrecision(format!("degree {d} is known only below t^{p}")));
        }
        while let Some(e) = r.valuation() {
            if e > 0 || e % 2 != 0 {
                return Err(Error::NotGopakumarVafa(format!("degree {d} leaves a term t^{e}")));
            }
            let g = (-e / 2) as u32;
            let coeff = r.coeff(e);
            let value = if g.is_multiple_of(2) { coeff } else { -coeff };
            r = &r - &u_power(1, g).scale(&value);
            if !value.is_zero() {
                table.values.insert((g, d), value);
            }
        }
    }
    Ok(table)
}

/// Rational number as a signed integer, if integral and small.
pub fn as_integer(x: &BigRational) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    let n = x.to_integer();
    if n.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    n.try_into().ok()
}
