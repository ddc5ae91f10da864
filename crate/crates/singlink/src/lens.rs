//! Hirzebruch-Jung continued fractions, bamboo resolutions of the
//! quasi-ordinary family `z^n = x y^q`, and lens space parameters.
//!
//! The negative continued fraction of `n/q` (all digits at least two) is the
//! weight sequence of the bamboo that resolves a cyclic quotient germ of
//! type `(n, q)`. The family `z^n = x y^q` with `gcd(n, q) = 1` has link
//! `L(n, n-q)` and minimal resolution bamboo `hj_expand(n, n-q)`.
//!
//! Orientation convention used throughout the crate: the boundary of the
//! linear plumbing with weights `-b_1, ..., -b_k`, where
//! `n/q = [b_1, ..., b_k]`, is `L(n, q)`. The convention is validated by the
//! quasi-ordinary families exercised in the test suite; the residual global
//! sign ambiguity of lens parameters is resolved by this choice and not
//! otherwise detectable from the graphs.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{PlumbingGraph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LensError {
    #[error("expected coprime parameters, got gcd({n}, {q}) > 1")]
    NotCoprime { n: u64, q: u64 },
    #[error("parameters out of range: need 0 < q < n, got n={n}, q={q}")]
    OutOfRange { n: u64, q: u64 },
    #[error("bamboo weight {0} is smaller than 2")]
    WeightTooSmall(u64),
    #[error("arithmetic overflow while evaluating a continued fraction")]
    Overflow,
}

/// An ordered Hirzebruch-Jung bamboo: weights `b_i >= 2`, stored positive.
/// The plumbing graph uses euler numbers `-b_i`. The empty bamboo is the
/// smooth case (link S^3).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HjBamboo {
    weights: Vec<u64>,
}

impl HjBamboo {
    pub fn new(weights: Vec<u64>) -> Result<Self, LensError> {
        if let Some(&w) = weights.iter().find(|&&w| w < 2) {
            return Err(LensError::WeightTooSmall(w));
        }
        Ok(HjBamboo { weights })
    }

    pub fn empty() -> Self {
        HjBamboo { weights: vec![] }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut w = self.weights.clone();
        w.reverse();
        HjBamboo { weights: w }
    }

    /// The bamboo as a plumbing graph `V1 - V2 - ...` with eulers `-b_i`.
    pub fn to_graph(&self) -> PlumbingGraph {
        let mut g = PlumbingGraph::new();
        let width = self.weights.len().to_string().len();
        let id = |i: usize| format!("V{:0width$}", i + 1, width = width);
        for (i, &b) in self.weights.iter().enumerate() {
            g.add_vertex(Vertex::new(id(i), 0, Some(-(b as i64))))
                .expect("fresh ids");
        }
        for i in 1..self.weights.len() {
            g.add_edge(&id(i - 1).as_str().into(), &id(i).as_str().into())
                .expect("endpoints exist");
        }
        g
    }
}

impl std::fmt::Display for HjBamboo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

/// The unique expansion `n/q = b_1 - 1/(b_2 - 1/(... - 1/b_k))` with all
/// `b_i >= 2`, for coprime `0 < q < n`.
pub fn hj_expand(n: u64, q: u64) -> Result<HjBamboo, LensError> {
    if q == 0 || q >= n {
        return Err(LensError::OutOfRange { n, q });
    }
    if q.gcd(&n) != 1 {
        return Err(LensError::NotCoprime { n, q });
    }
    let mut weights = Vec::new();
    let (mut n, mut q) = (n, q);
    while q > 0 {
        let b = n.div_ceil(q);
        weights.push(b);
        let next_q = b
            .checked_mul(q)
            .and_then(|bq| bq.checked_sub(n))
            .ok_or(LensError::Overflow)?;
        n = q;
        q = next_q;
    }
    debug_assert_eq!(n, 1);
    HjBamboo::new(weights)
}

/// Inverse of [`hj_expand`]: the coprime pair whose negative continued
/// fraction is the given bamboo. The empty bamboo evaluates to `(1, 0)`.
pub fn hj_evaluate(b: &HjBamboo) -> Result<(u64, u64), LensError> {
    let (mut n, mut q) = (1u64, 0u64);
    for &w in b.weights().iter().rev() {
        if w < 2 {
            return Err(LensError::WeightTooSmall(w));
        }
        let wn = w.checked_mul(n).ok_or(LensError::Overflow)?;
        let next_n = wn.checked_sub(q).ok_or(LensError::Overflow)?;
        q = n;
        n = next_n;
    }
    Ok((n, q))
}

/// Bamboo of the minimal good resolution of `z^n = x y^q`, which is
/// `hj_expand(n, n-q)`, read from the `{x=0}` arrow end of the chain.
pub fn resolve_quasi_ordinary(n: u64, q: u64) -> Result<HjBamboo, LensError> {
    if q == 0 || q >= n {
        return Err(LensError::OutOfRange { n, q });
    }
    if q.gcd(&n) != 1 {
        return Err(LensError::NotCoprime { n, q });
    }
    hj_expand(n, n - q)
}

/// Lens space parameters `(n, q)`, normalized: `n >= 1` implies
/// `gcd(n, q) = 1` and `0 <= q < n`; `n = 0` encodes `S^1 x S^2`; `(1, 0)`
/// encodes `S^3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensParams {
    n: u64,
    q: u64,
}

impl LensParams {
    pub fn new(n: u64, q: i64) -> Result<Self, LensError> {
        if n == 0 {
            // S^1 x S^2; q is conventionally 1 so that gcd(n, q) = 1
            return Ok(LensParams { n: 0, q: 1 });
        }
        let m = n as i64;
        let qq = q.rem_euclid(m) as u64;
        if qq.gcd(&n) != 1 {
            return Err(LensError::NotCoprime { n, q: qq });
        }
        Ok(LensParams { n, q: qq })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn s3() -> Self {
        LensParams { n: 1, q: 0 }
    }

    pub fn s1_x_s2() -> Self {
        LensParams { n: 0, q: 1 }
    }

    pub fn is_s3(&self) -> bool {
        self.n == 1
    }

    pub fn is_s1_x_s2(&self) -> bool {
        self.n == 0
    }
}

impl std::fmt::Display for LensParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "L({},{})", self.n, self.q)
    }
}

/// Link of `z^n = x y^q`: the lens space `L(n, n-q)`.
pub fn lens_of_quasi_ordinary(n: u64, q: u64) -> Result<LensParams, LensError> {
    if q == 0 || q >= n {
        return Err(LensError::OutOfRange { n, q });
    }
    if q.gcd(&n) != 1 {
        return Err(LensError::NotCoprime { n, q });
    }
    LensParams::new(n, (n - q) as i64)
}

/// Boundary of the linear plumbing on the bamboo: `L(n, q)` with
/// `(n, q) = hj_evaluate(b)`.
pub fn lens_of_bamboo(b: &HjBamboo) -> Result<LensParams, LensError> {
    let (n, q) = hj_evaluate(b)?;
    LensParams::new(n, q as i64)
}

/// Homeomorphism test. Oriented: `n` equal and `q2 = q1` or
/// `q1 q2 = 1 (mod n)`. Unoriented: additionally `q2 = -q1` or
/// `q1 q2 = -1 (mod n)`.
pub fn lens_equivalent(a: &LensParams, b: &LensParams, oriented: bool) -> bool {
    if a.n != b.n {
        return false;
    }
    let n = a.n as u128;
    if n == 0 {
        return true;
    }
    let q1 = a.q as u128;
    let q2 = b.q as u128;
    let prod = (q1 * q2) % n;
    let oriented_eq = q1 == q2 || prod == 1 % n;
    if oriented || oriented_eq {
        return oriented_eq;
    }
    let neg = (n - q1) % n;
    q2 == neg || prod == (n - 1) % n
}

/// Shape oracle for the quasi-ordinary family, independent of continued
/// fractions: the number of exceptional components created by the repeated
/// line blow-up of `z^n = x y^q`.
///
/// One blow-up of the singular line turns the equation `z^n = x y^q`
/// (`0 < q < n`) into `z^(n-q) = x y^q` and creates one rational component;
/// when `q >= n` the blow-up is bijective and rewrites the germ to
/// `z^n = x y^(q-n)` without creating anything. The recursion stops at
/// `n = 1` (smooth).
pub fn quasi_ordinary_line_blowup_length(n: u64, q: u64) -> Result<u64, LensError> {
    if q == 0 || q >= n {
        return Err(LensError::OutOfRange { n, q });
    }
    if q.gcd(&n) != 1 {
        return Err(LensError::NotCoprime { n, q });
    }
    let (mut n, mut q) = (n, q);
    let mut created = 0u64;
    while n > 1 {
        if q < n {
            n -= q;
            created += 1;
        } else {
            q -= n;
        }
        if q == 0 {
            break;
        }
    }
    Ok(created)
}
