//! Truncated Laurent series in a single variable `t`.
//!
//! A series stores its known coefficients together with a *precision*: every
//! coefficient of `t^e` with `e < precision` is exact, nothing is known at or
//! above it. Polynomials are represented with `precision = None`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Coefficient ring used by [`LaurentSeries`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries<C> {
    terms: BTreeMap<i64, C>,
    precision: Option<i64>,
}

impl<C: Coeff> LaurentSeries<C> {
    pub fn zero() -> Self {
        LaurentSeries { terms: BTreeMap::new(), precision: None }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        let mut s = Self::zero();
        s.add_term(exp, c);
        s
    }

    /// Builds an exact Laurent polynomial.
    pub fn polynomial<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let mut s = Self::zero();
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// Series with the given coefficients, exact below `precision`.
    pub fn with_precision<I: IntoIterator<Item = (i64, C)>>(terms: I, precision: i64) -> Self {
        let mut s = Self::polynomial(terms);
        s.truncate(precision);
        s
    }

    /// `1 / (1 - t^step)` known below `precision`; `step > 0`.
    pub fn geometric(step: i64, precision: i64) -> Self {
        assert!(step > 0, "geometric series needs a positive step");
        let mut s = Self::zero();
        let mut e = 0;
        while e < precision {
            s.add_term(e, C::one());
            e += step;
        }
        s.precision = Some(precision.max(0));
        s
    }

    pub fn precision(&self) -> Option<i64> {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Lower bound on the exponents this series can contribute: the valuation,
    /// or the precision when no nonzero coefficient is known.
    fn order_bound(&self) -> Option<i64> {
        match (self.valuation(), self.precision) {
            (Some(v), _) => Some(v),
            (None, p) => p,
        }
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, c: C) {
        if let Some(p) = self.precision {
            if exp >= p {
                return;
            }
        }
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Forgets everything at or above `precision`.
    pub fn truncate(&mut self, precision: i64) {
        let p = match self.precision {
            Some(q) => q.min(precision),
            None => precision,
        };
        self.terms.retain(|e, _| *e < p);
        self.precision = Some(p);
    }

    pub fn truncated(mut self, precision: i64) -> Self {
        self.truncate(precision);
        self
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            precision: self.precision.map(|p| p + k),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = LaurentSeries { terms: BTreeMap::new(), precision: self.precision };
        for (e, v) in &self.terms {
            out.add_term(*e, v.clone() * c.clone());
        }
        out
    }

    /// Substitutes `t -> t^k` for `k >= 1`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        LaurentSeries {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
            precision: self.precision.map(|p| k * p),
        }
    }

    /// Equality of all coefficients below `precision`.
    pub fn agrees_below(&self, other: &Self, precision: i64) -> bool {
        let a: Vec<_> = self.terms.iter().filter(|(e, _)| **e < precision).collect();
        let b: Vec<_> = other.terms.iter().filter(|(e, _)| **e < precision).collect();
        a == b
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> LaurentSeries<D> {
        let mut out = LaurentSeries { terms: BTreeMap::new(), precision: self.precision };
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }
}

impl<C: Coeff> Add for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn add(self, rhs: Self) -> LaurentSeries<C> {
        let precision = min_precision(self.precision, rhs.precision);
        let mut out = LaurentSeries { terms: BTreeMap::new(), precision };
        for (e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn sub(self, rhs: Self) -> LaurentSeries<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Neg for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn neg(self) -> LaurentSeries<C> {
        LaurentSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            precision: self.precision,
        }
    }
}

impl<C: Coeff> Mul for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn mul(self, rhs: Self) -> LaurentSeries<C> {
        // (a + O(t^pa)) (b + O(t^pb)) = ab + O(t^{min(pa + vb, pb + va)})
        let from_self = self.precision.and_then(|p| rhs.order_bound().map(|v| p + v));
        let from_rhs = rhs.precision.and_then(|p| self.order_bound().map(|v| p + v));
        let precision = min_precision(from_self, from_rhs);
        let mut out = LaurentSeries { terms: BTreeMap::new(), precision };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if let Some(p) = precision {
                    if e >= p {
                        break;
                    }
                }
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

fn min_precision(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        if let Some(p) = self.precision {
            write!(f, " + O(t^{p})")?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaurentSeries")
            .field("terms", &self.terms)
            .field("precision", &self.precision)
            .finish()
    }
}
