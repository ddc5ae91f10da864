//! Puiseux branch input: truncated fractional-power series with exact
//! rational exponents and coefficients, plus the two coordinate axes.
//!
//! A branch is `x = sum c_i y^{e_i}` with strictly increasing exponents, all
//! at least one, or one of the axis markers `{x=0}` / `{y=0}`. Branches
//! carry a positive weight (their multiplicity in the divisor being
//! resolved); a branch may instead be flagged as tracked, in which case it
//! is carried through the resolution to place an arrow but contributes
//! nothing to multiplicities and never triggers a blow-up by itself.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::TruncSeries;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BranchError {
    #[error("exponents must be strictly increasing")]
    ExponentsNotIncreasing,
    #[error("exponents must be at least 1, got {0}")]
    ExponentTooSmall(BigRational),
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("a weighted branch needs weight at least 1")]
    ZeroWeight,
    #[error("ramification index {0} too large")]
    RamificationTooLarge(BigInt),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchKind {
    /// `x = sum c_i y^{e_i}` with the given (exponent, coefficient) terms.
    Series(Vec<(BigRational, BigRational)>),
    /// `{x=0}` or `{y=0}`.
    Axis(Axis),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxBranch {
    pub kind: BranchKind,
    /// Multiplicity in the divisor; ignored (treated as 0) when tracked.
    pub weight: u64,
    pub label: String,
    pub tracked: bool,
}

impl PuiseuxBranch {
    pub fn series(
        terms: Vec<(BigRational, BigRational)>,
        weight: u64,
        label: impl Into<String>,
    ) -> Result<Self, BranchError> {
        if weight == 0 {
            return Err(BranchError::ZeroWeight);
        }
        let one = BigRational::one();
        let mut prev: Option<&BigRational> = None;
        for (e, c) in &terms {
            if *e < one {
                return Err(BranchError::ExponentTooSmall(e.clone()));
            }
            if c.is_zero() {
                return Err(BranchError::ZeroCoefficient);
            }
            if let Some(p) = prev {
                if e <= p {
                    return Err(BranchError::ExponentsNotIncreasing);
                }
            }
            prev = Some(e);
        }
        Ok(PuiseuxBranch {
            kind: BranchKind::Series(terms),
            weight,
            label: label.into(),
            tracked: false,
        })
    }

    pub fn axis(axis: Axis, weight: u64, label: impl Into<String>) -> Result<Self, BranchError> {
        if weight == 0 {
            return Err(BranchError::ZeroWeight);
        }
        Ok(PuiseuxBranch {
            kind: BranchKind::Axis(axis),
            weight,
            label: label.into(),
            tracked: false,
        })
    }

    pub fn tracked_axis(axis: Axis, label: impl Into<String>) -> Self {
        PuiseuxBranch {
            kind: BranchKind::Axis(axis),
            weight: 1,
            label: label.into(),
            tracked: true,
        }
    }

    pub fn tracked(mut self) -> Self {
        self.tracked = true;
        self
    }

    /// Ramification index: least common denominator of the exponents.
    pub fn ramification_index(&self) -> Result<u64, BranchError> {
        match &self.kind {
            BranchKind::Axis(_) => Ok(1),
            BranchKind::Series(terms) => {
                let mut n = BigInt::one();
                for (e, _) in terms {
                    n = n.lcm(e.denom());
                }
                u64::try_from(&n).map_err(|_| BranchError::RamificationTooLarge(n))
            }
        }
    }

    /// Exact parameterization `(x(t), y(t))` with `y = t^N`; the series part
    /// is truncated just beyond its last given exponent. Axes parameterize
    /// exactly.
    pub(crate) fn parameterize(&self) -> Result<(TruncSeries, TruncSeries), BranchError> {
        match &self.kind {
            BranchKind::Axis(Axis::X) => Ok((TruncSeries::zero(), TruncSeries::parameter())),
            BranchKind::Axis(Axis::Y) => Ok((TruncSeries::parameter(), TruncSeries::zero())),
            BranchKind::Series(terms) => {
                let n = self.ramification_index()?;
                let nq = BigRational::from(BigInt::from(n));
                let mut tterms = Vec::with_capacity(terms.len());
                let mut last = 0i64;
                for (e, c) in terms {
                    let te = e * &nq;
                    debug_assert!(te.is_integer());
                    let exp = i64::try_from(te.numer())
                        .map_err(|_| BranchError::RamificationTooLarge(te.numer().clone()))?;
                    tterms.push((exp, c.clone()));
                    last = exp;
                }
                let prec = Some(last + 1);
                Ok((
                    TruncSeries::from_terms(tterms, prec),
                    TruncSeries::monomial(n as i64, BigRational::one()),
                ))
            }
        }
    }

    /// Normalized term list used to detect duplicate input branches.
    pub(crate) fn germ_signature(&self) -> BranchKind {
        self.kind.clone()
    }
}

/// Parses an exact rational from `a`, `-a`, or `a/b` notation.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from(n))
    }
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.denom() == &BigInt::from(-1) {
        (-r.numer()).to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn validation() {
        assert!(PuiseuxBranch::series(vec![(q("1"), q("1")), (q("2"), q("-1"))], 1, "d1").is_ok());
        assert_eq!(
            PuiseuxBranch::series(vec![(q("1/2"), q("1"))], 1, "bad").unwrap_err(),
            BranchError::ExponentTooSmall(q("1/2"))
        );
        assert_eq!(
            PuiseuxBranch::series(vec![(q("2"), q("1")), (q("2"), q("1"))], 1, "bad").unwrap_err(),
            BranchError::ExponentsNotIncreasing
        );
        assert_eq!(
            PuiseuxBranch::series(vec![(q("1"), q("0"))], 1, "bad").unwrap_err(),
            BranchError::ZeroCoefficient
        );
    }

    #[test]
    fn parameterization_clears_denominators() {
        let b =
            PuiseuxBranch::series(vec![(q("1"), q("1")), (q("34/13"), q("1"))], 1, "d3").unwrap();
        assert_eq!(b.ramification_index().unwrap(), 13);
        let (x, y) = b.parameterize().unwrap();
        assert_eq!(x.coeff(13).unwrap(), q("1"));
        assert_eq!(x.coeff(34).unwrap(), q("1"));
        assert_eq!(x.prec(), Some(35));
        assert_eq!(y.coeff(13).unwrap(), q("1"));
    }

    #[test]
    fn rational_io() {
        assert_eq!(rational_to_string(&q("34/13")), "34/13");
        assert_eq!(rational_to_string(&q("-2")), "-2");
        assert_eq!(parse_rational("3/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
