//! Exact truncated power series.
//!
//! [`FormalSeries`] is the multivariate carrier for NCDT and GW generating
//! functions. Coefficients are arbitrary-precision integers. A series is
//! truncated at a weighted total degree (`sum w_i e_i <= order`) and, optionally,
//! by a per-variable exclusive ceiling (used for the `t` variable of GW series,
//! which carries weight 0 and may have negative exponents).
//!
//! The text format is line oriented:
//!
//! ```text
//! # vars=q0,q1 weights=1,1 order=2 below=-,-
//! 0,0	1
//! 1,0	1
//! 1,1	3
//! ```
//!
//! Terms are listed in graded lexicographic order: increasing weighted degree,
//! then decreasing exponent vectors.

pub mod laurent;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use laurent::{Coeff, LaurentSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    vars: Vec<String>,
    weights: Vec<u32>,
    order: u32,
    below: Vec<Option<i32>>,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl FormalSeries {
    /// Zero series in `vars`, truncated at total degree `order`.
    pub fn zero<S: AsRef<str>>(vars: &[S], order: u32) -> Self {
        let n = vars.len();
        FormalSeries {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            weights: vec![1; n],
            order,
            below: vec![None; n],
            terms: BTreeMap::new(),
        }
    }

    pub fn one<S: AsRef<str>>(vars: &[S], order: u32) -> Self {
        let mut s = Self::zero(vars, order);
        s.add_term(&vec![0; vars.len()], BigInt::one());
        s
    }

    /// Replaces the grading: `weights[i]` is the degree of variable `i`, and
    /// `below[i] = Some(p)` drops every exponent `>= p` of variable `i`.
    pub fn with_grading(mut self, weights: Vec<u32>, below: Vec<Option<i32>>) -> Result<Self> {
        if weights.len() != self.vars.len() || below.len() != self.vars.len() {
            return Err(Error::InvalidSeries("grading length differs from variable count".into()));
        }
        self.weights = weights;
        self.below = below;
        let keep: Vec<_> = std::mem::take(&mut self.terms).into_iter().collect();
        for (e, c) in keep {
            self.add_term(&e, c);
        }
        Ok(self)
    }

    /// Same variables and truncation, no terms.
    pub fn empty_like(&self) -> Self {
        FormalSeries {
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            order: self.order,
            below: self.below.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn below(&self) -> &[Option<i32>] {
        &self.below
    }

    pub fn weighted_degree(&self, exps: &[i32]) -> i64 {
        exps.iter().zip(&self.weights).map(|(e, w)| *e as i64 * *w as i64).sum()
    }

    /// Whether a monomial with these exponents survives truncation.
    pub fn admits(&self, exps: &[i32]) -> bool {
        exps.len() == self.vars.len()
            && self.weighted_degree(exps) <= self.order as i64
            && exps.iter().zip(&self.below).all(|(e, b)| b.is_none_or(|p| *e < p))
            && exps.iter().zip(&self.weights).all(|(e, w)| *w == 0 || *e >= 0)
    }

    /// Adds `c * x^exps`; silently drops monomials beyond the truncation.
    pub fn add_term(&mut self, exps: &[i32], c: BigInt) {
        if c.is_zero() || !self.admits(exps) {
            return;
        }
        match self.terms.get_mut(exps) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(exps);
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), c);
            }
        }
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded lexicographic order.
    pub fn terms(&self) -> Vec<(&[i32], &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| self.grlex(a.0, b.0));
        v
    }

    fn grlex(&self, a: &[i32], b: &[i32]) -> Ordering {
        self.weighted_degree(a)
            .cmp(&self.weighted_degree(b))
            .then_with(|| b.cmp(a))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || self.weights != other.weights {
            return Err(Error::InvalidSeries(format!(
                "incompatible series: [{}] vs [{}]",
                self.vars.join(","),
                other.vars.join(",")
            )));
        }
        Ok(())
    }

    /// Intersection of both truncations.
    fn meet(&self, other: &Self) -> Self {
        let below = self
            .below
            .iter()
            .zip(&other.below)
            .map(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => Some(*x.min(y)),
                (Some(x), None) | (None, Some(x)) => Some(*x),
                (None, None) => None,
            })
            .collect();
        FormalSeries {
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            order: self.order.min(other.order),
            below,
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.meet(other);
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.meet(other);
        let mut exps = vec![0; self.vars.len()];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for i in 0..exps.len() {
                    exps[i] = ea[i] + eb[i];
                }
                out.add_term(&exps, ca * cb);
            }
        }
        Ok(out)
    }

    /// Re-truncates at a lower total degree.
    pub fn truncated(&self, order: u32) -> Self {
        let mut out = self.clone();
        out.order = self.order.min(order);
        let order = out.order as i64;
        let weights = out.weights.clone();
        out.terms.retain(|e, _| {
            e.iter().zip(&weights).map(|(x, w)| *x as i64 * *w as i64).sum::<i64>() <= order
        });
        out
    }

    /// Sets every variable equal to a single new variable `name`.
    pub fn specialize_all(&self, name: &str) -> Self {
        let mut out = FormalSeries::zero(&[name], self.order);
        for (e, c) in &self.terms {
            let d: i32 = e.iter().sum();
            out.add_term(&[d], c.clone());
        }
        out
    }

    /// Term-by-term difference `self - other` restricted to common truncation;
    /// lists `(exponents, self coefficient, other coefficient)` where they differ.
    pub fn diff(&self, other: &Self) -> Result<Vec<(Vec<i32>, BigInt, BigInt)>> {
        self.check_compatible(other)?;
        let region = self.meet(other);
        let mut keys: Vec<&Vec<i32>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort_by(|a, b| self.grlex(a, b));
        keys.dedup();
        Ok(keys
            .into_iter()
            .filter(|k| region.admits(k))
            .filter_map(|k| {
                let a = self.coeff(k);
                let b = other.coeff(k);
                (a != b).then(|| (k.clone(), a, b))
            })
            .collect())
    }

    /// Serialises into the line-oriented series text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let below: Vec<String> =
            self.below.iter().map(|b| b.map_or("-".to_string(), |p| p.to_string())).collect();
        let weights: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        let _ = writeln!(
            out,
            "# vars={} weights={} order={} below={}",
            self.vars.join(","),
            weights.join(","),
            self.order,
            below.join(",")
        );
        for (e, c) in self.terms() {
            let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}\t{}", exps.join(","), c);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty series text".into()))?;
        let header = header
            .strip_prefix("# ")
            .ok_or_else(|| Error::Parse("series header must start with `# `".into()))?;
        let mut fields = BTreeMap::new();
        for part in header.split_whitespace() {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed header field `{part}`")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| {
            fields.get(k).copied().ok_or_else(|| Error::Parse(format!("missing header field `{k}`")))
        };
        let vars: Vec<String> = split_list(get("vars")?).map(str::to_string).collect();
        let order: u32 = get("order")?
            .parse()
            .map_err(|_| Error::Parse("order must be a nonnegative integer".into()))?;
        let weights = split_list(get("weights")?)
            .map(|w| w.parse().map_err(|_| Error::Parse(format!("bad weight `{w}`"))))
            .collect::<Result<Vec<u32>>>()?;
        let below = split_list(get("below")?)
            .map(|b| {
                if b == "-" {
                    Ok(None)
                } else {
                    b.parse().map(Some).map_err(|_| Error::Parse(format!("bad bound `{b}`")))
                }
            })
            .collect::<Result<Vec<Option<i32>>>>()?;
        let mut s = FormalSeries::zero(&vars, order).with_grading(weights, below)?;
        for line in lines {
            let (e, c) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse(format!("term line without TAB: `{line}`")))?;
            let exps = split_list(e)
                .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad exponent `{x}`"))))
                .collect::<Result<Vec<i32>>>()?;
            if exps.len() != s.vars.len() {
                return Err(Error::Parse(format!("exponent vector `{e}` has wrong length")));
            }
            let c: BigInt =
                c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            s.add_term(&exps, c);
        }
        Ok(s)
    }

    /// Human readable rendering, e.g. `1 + q + 3*q^2`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(x, _)| **x != 0)
                .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => {
                    let _ = write!(out, "{abs}");
                }
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => {
                    let _ = write!(out, "{abs}*{}", mono.join("*"));
                }
            }
        }
        out
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').filter(|x| !x.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn multiplication_respects_total_degree() {
        let mut a = FormalSeries::zero(&["x", "y"], 2);
        a.add_term(&[0, 0], b(1));
        a.add_term(&[1, 0], b(1));
        a.add_term(&[0, 1], b(1));
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.coeff(&[1, 1]), b(2));
        assert_eq!(sq.coeff(&[2, 0]), b(1));
        assert_eq!(sq.num_terms(), 6);
        let cube = sq.mul(&a).unwrap();
        assert_eq!(cube.coeff(&[1, 1]), b(6));
    }

    #[test]
    fn text_round_trip_and_grlex_order() {
        let mut a = FormalSeries::zero(&["q0", "q1"], 3);
        a.add_term(&[0, 1], b(2));
        a.add_term(&[1, 0], b(-1));
        a.add_term(&[0, 0], b(1));
        a.add_term(&[2, 1], b(5));
        let text = a.to_text();
        assert_eq!(text, "# vars=q0,q1 weights=1,1 order=3 below=-,-\n0,0\t1\n1,0\t-1\n0,1\t2\n2,1\t5\n");
        assert_eq!(FormalSeries::from_text(&text).unwrap(), a);
    }

    #[test]
    fn ceilings_and_zero_weights() {
        let s = FormalSeries::zero(&["Q", "t"], 2)
            .with_grading(vec![1, 0], vec![None, Some(4)])
            .unwrap();
        assert!(s.admits(&[2, -7]));
        assert!(!s.admits(&[1, 4]));
        assert!(!s.admits(&[3, 0]));
    }

    #[test]
    fn pretty_printing() {
        let mut a = FormalSeries::zero(&["q"], 3);
        a.add_term(&[0], b(1));
        a.add_term(&[1], b(1));
        a.add_term(&[2], b(-3));
        assert_eq!(a.pretty(), "1 + q - 3*q^2");
    }
}
