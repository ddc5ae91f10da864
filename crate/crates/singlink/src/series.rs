//! Truncated formal power series in one parameter with exact rational
//! coefficients.
//!
//! A series knows its coefficients below a precision bound and nothing
//! beyond it: `prec = Some(p)` means every term of exponent `< p` is stored
//! exactly and terms from `p` on are unknown; `prec = None` means the series
//! is an exact polynomial. Branch parameterizations are truncations, so
//! every decision the curve resolver takes (orders, leading coefficients,
//! positions after a blow-up) must either be settled by the known part or
//! fail with [`SeriesError::NeedMoreTerms`] — that failure surfaces as the
//! resolver's insufficient-truncation error.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("decision requires coefficients beyond the stored truncation")]
    NeedMoreTerms,
}

/// Order information of a truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesOrd {
    /// Identically zero (exact).
    Zero,
    /// Smallest exponent with nonzero coefficient, known exactly.
    Exact(i64),
    /// Zero below the bound; anything could follow.
    AtLeast(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    /// exponent -> nonzero coefficient; all exponents are nonnegative and
    /// below `prec` when that is finite.
    terms: BTreeMap<i64, BigRational>,
    prec: Option<i64>,
}

impl TruncSeries {
    pub fn zero() -> Self {
        TruncSeries {
            terms: BTreeMap::new(),
            prec: None,
        }
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        assert!(exp >= 0);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        TruncSeries { terms, prec: None }
    }

    pub fn parameter() -> Self {
        Self::monomial(1, BigRational::one())
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (i64, BigRational)>,
        prec: Option<i64>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            assert!(e >= 0);
            if !c.is_zero() {
                map.insert(e, c);
            }
        }
        let mut s = TruncSeries { terms: map, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            self.terms.retain(|&e, _| e < p);
        }
    }

    #[allow(dead_code)] // exercised by tests
    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn ord(&self) -> SeriesOrd {
        match (self.terms.keys().next(), self.prec) {
            (Some(&e), _) => SeriesOrd::Exact(e),
            (None, None) => SeriesOrd::Zero,
            (None, Some(p)) => SeriesOrd::AtLeast(p),
        }
    }

    /// The exact order, failing when the truncation cannot settle it.
    /// `Ok(None)` means exactly zero.
    pub fn ord_exact(&self) -> Result<Option<i64>, SeriesError> {
        match self.ord() {
            SeriesOrd::Zero => Ok(None),
            SeriesOrd::Exact(e) => Ok(Some(e)),
            SeriesOrd::AtLeast(_) => Err(SeriesError::NeedMoreTerms),
        }
    }

    /// True when the order is known to be at least `bound`.
    pub fn ord_at_least(&self, bound: i64) -> bool {
        match self.ord() {
            SeriesOrd::Zero => true,
            SeriesOrd::Exact(e) => e >= bound,
            SeriesOrd::AtLeast(p) => p >= bound,
        }
    }

    /// Coefficient of `t^exp`, failing when it lies beyond the truncation.
    pub fn coeff(&self, exp: i64) -> Result<BigRational, SeriesError> {
        if let Some(p) = self.prec {
            if exp >= p {
                return Err(SeriesError::NeedMoreTerms);
            }
        }
        Ok(self
            .terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = min_prec(self.prec, other.prec);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        let mut s = TruncSeries { terms, prec };
        s.normalize();
        s
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn sub_const(&self, c: &BigRational) -> Self {
        self.sub(&TruncSeries::monomial(0, c.clone()))
    }

    fn ord_lower_bound(&self) -> Option<i64> {
        // None encodes +infinity (exact zero)
        match self.ord() {
            SeriesOrd::Zero => None,
            SeriesOrd::Exact(e) => Some(e),
            SeriesOrd::AtLeast(p) => Some(p),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_exactly_zero() || other.is_exactly_zero() {
            return TruncSeries::zero();
        }
        // a known mod t^pa, b mod t^pb: product exact below
        // min(pa + ord(b), pb + ord(a))
        let bound = |p: Option<i64>, other_ord: Option<i64>| -> Option<i64> {
            match (p, other_ord) {
                (None, _) => None,
                (Some(_), None) => None,
                (Some(p), Some(o)) => Some(p + o),
            }
        };
        let prec = min_prec(
            bound(self.prec, other.ord_lower_bound()),
            bound(other.prec, self.ord_lower_bound()),
        );
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if let Some(p) = prec {
                    if e >= p {
                        continue;
                    }
                }
                let entry = terms.entry(e).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TruncSeries { terms, prec }
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    /// Division `self / other`, defined when `ord(other)` is exact and
    /// `ord(self) >= ord(other)` (all resulting exponents nonnegative).
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        let beta = other
            .ord_exact()?
            .expect("division by the zero series is a caller bug");
        if self.is_exactly_zero() {
            return Ok(TruncSeries::zero());
        }
        debug_assert!(self.ord_at_least(beta));
        // strip t^beta from the divisor, leaving a unit
        let unit = TruncSeries {
            terms: other
                .terms
                .iter()
                .map(|(e, c)| (e - beta, c.clone()))
                .collect(),
            prec: other.prec.map(|p| p - beta),
        };
        let shifted = TruncSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e - beta, c.clone()))
                .collect(),
            prec: self.prec.map(|p| p - beta),
        };
        let inv = unit.invert_unit();
        Ok(shifted.mul(&inv))
    }

    /// Inverse of a unit (order exactly zero). A single-term unit inverts
    /// exactly; otherwise the finite precision of the input caps the result.
    fn invert_unit(&self) -> Self {
        let c0 = self
            .terms
            .get(&0)
            .expect("unit has a constant term")
            .clone();
        if self.terms.len() == 1 {
            return TruncSeries {
                terms: BTreeMap::from([(0, c0.recip())]),
                prec: self.prec,
            };
        }
        let p = self
            .prec
            .expect("non-monomial exact units do not arise from truncated input");
        let mut inv: BTreeMap<i64, BigRational> = BTreeMap::new();
        inv.insert(0, c0.recip());
        for e in 1..p {
            // coefficient from the convolution identity sum_{k<=e} a_k b_{e-k} = 0
            let mut acc = BigRational::zero();
            for (k, a) in self.terms.range(1..=e) {
                if let Some(b) = inv.get(&(e - k)) {
                    acc += a * b;
                }
            }
            if !acc.is_zero() {
                inv.insert(e, -acc / &c0);
            }
        }
        TruncSeries {
            terms: inv,
            prec: Some(p),
        }
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) => x,
        (x, None) => x,
        (Some(a), Some(b)) => Some(a.min(b)),
    }
}
