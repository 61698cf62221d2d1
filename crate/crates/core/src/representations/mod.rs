//! Monomial representations, King stability, Cartan matrices, roots and walls.
//!
//! Stability parameters and dimension vectors are indexed by the quiver's vertex
//! order. For framed representations the framing vertex is implicit: its
//! parameter is always `theta_inf = -sum theta_v alpha_v`.

mod monomial;
mod roots;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::{Error, Result};

pub use monomial::{
    check_relations, is_cyclic, is_semistable, subrep_dimension_vectors, Classification,
    Framing, MonomialRepresentation, StabilityConvention, StabilityReport,
};
pub use roots::{
    cartan_matrix, positive_roots, walls_between, CartanMatrix, Root, RootKind, WallReport,
};

pub type DimensionVector = Vec<u32>;

/// Rational stability parameter, one entry per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StabilityParameter(pub Vec<BigRational>);

impl StabilityParameter {
    pub fn zero(n: usize) -> Self {
        StabilityParameter(vec![BigRational::zero(); n])
    }

    pub fn from_integers(values: &[i64]) -> Self {
        StabilityParameter(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    /// Parses a comma separated list of integers or fractions, e.g. `1/2,-3`.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(',')
            .map(|s| parse_rational(s.trim()))
            .collect::<Result<Vec<_>>>()
            .map(StabilityParameter)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        StabilityParameter(self.0.iter().map(|x| x * c).collect())
    }

    /// `sum theta_v alpha_v`.
    pub fn pair(&self, alpha: &[i64]) -> Result<BigRational> {
        if alpha.len() != self.0.len() {
            return Err(Error::DimensionMismatch(format!(
                "parameter has {} entries, vector has {}",
                self.0.len(),
                alpha.len()
            )));
        }
        Ok(self.0.iter().zip(alpha).map(|(t, &a)| t * BigInt::from(a)).sum())
    }
}

impl std::fmt::Display for StabilityParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Framing parameter `theta_inf = -sum theta_v alpha_v`.
pub fn theta_infinity(theta: &StabilityParameter, alpha: &[u32]) -> Result<BigRational> {
    let alpha: Vec<i64> = alpha.iter().map(|&a| a as i64).collect();
    Ok(-theta.pair(&alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_infinity_examples() {
        let zero = StabilityParameter::zero(2);
        assert!(theta_infinity(&zero, &[3, 4]).unwrap().is_zero());
        let t = StabilityParameter::from_integers(&[2, -3]);
        assert_eq!(theta_infinity(&t, &[1, 1]).unwrap(), BigRational::from_integer(1.into()));
        assert!(matches!(theta_infinity(&t, &[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn framed_sum_vanishes() {
        let t = StabilityParameter::parse("1/2,-7/3,4").unwrap();
        let alpha = [3u32, 1, 2];
        let inf = theta_infinity(&t, &alpha).unwrap();
        let total = t.pair(&[3, 1, 2]).unwrap() + inf;
        assert!(total.is_zero());
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(StabilityParameter::parse("1/0").is_err());
        assert!(StabilityParameter::parse("x").is_err());
    }
}
