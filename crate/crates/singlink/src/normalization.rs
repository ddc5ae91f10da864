//! Combinatorial topology of normalization maps over a one-dimensional
//! singular locus: hyperplane-section counts, curlings, core
//! identifications, and singular pinched solid tori.
//!
//! Over one branch of the singular locus, the normalization restricted to
//! the link is determined by the degrees `d_1, ..., d_n` of the covering on
//! the components upstairs. The neighborhood of the singular knot is a
//! pinched solid torus classified by the conjugacy class of the gluing
//! permutation, i.e. by the multiset `{d_j}`; the map itself factors as the
//! `d_j`-curling quotients followed by the identification of the cores.
//! The module stores exactly this complete invariant; no simplicial
//! 3-manifold structures are built.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizationError {
    #[error("branch cover data must contain at least one degree")]
    Empty,
    #[error("covering degrees must be positive")]
    ZeroDegree,
}

/// Degrees of the normalization on the components upstairs over one branch
/// of the singular locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCoverData {
    degrees: Vec<u64>,
}

impl BranchCoverData {
    pub fn new(degrees: Vec<u64>) -> Result<Self, NormalizationError> {
        if degrees.is_empty() {
            return Err(NormalizationError::Empty);
        }
        if degrees.contains(&0) {
            return Err(NormalizationError::ZeroDegree);
        }
        Ok(BranchCoverData { degrees })
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }
}

/// A pinched solid torus: mapping torus of a `k`-pinched disc under a
/// permutation homeomorphism, classified by the permutation's cycle type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchedTorusModel {
    pub k: u64,
    /// Sorted multiset of cycle lengths, summing to `k`.
    pub cycle_type: Vec<u64>,
}

/// Number of irreducible components of the hyperplane section germ:
/// `k = d_1 + ... + d_n`.
pub fn hyperplane_branch_count(data: &BranchCoverData) -> u64 {
    data.degrees.iter().sum()
}

/// The pinched solid torus around the singular knot of this branch.
pub fn pinched_model(data: &BranchCoverData) -> PinchedTorusModel {
    let mut cycle_type = data.degrees.clone();
    cycle_type.sort_unstable();
    PinchedTorusModel {
        k: hyperplane_branch_count(data),
        cycle_type,
    }
}

/// Orientation preserving homeomorphism of pinched solid tori depends only
/// on the cycle type.
pub fn models_homeomorphic(a: &PinchedTorusModel, b: &PinchedTorusModel) -> bool {
    a == b
}

/// The link is a topological manifold iff every branch of the singular
/// locus has an irreducible hyperplane section. An empty list (isolated
/// singularity) trivially qualifies.
pub fn is_manifold_link(branches: &[BranchCoverData]) -> bool {
    branches.iter().all(|b| hyperplane_branch_count(b) == 1)
}

/// One step of the quotient description of the normalization over a branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum QuotientStep {
    /// The `d`-curling quotient on one solid torus upstairs.
    Curling { d: u64 },
    /// Identification of the cores of the listed tori.
    IdentifyCores { count: u64 },
}

/// Structured decomposition record for one branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDescription {
    pub steps: Vec<QuotientStep>,
    pub model: PinchedTorusModel,
}

/// The normalization over the branch as curling quotients followed by one
/// core identification. Trivial curlings are listed only when at least one
/// nontrivial curling occurs; a single component needs no identification.
pub fn compose_curlings_and_identifications(data: &BranchCoverData) -> QuotientDescription {
    let mut steps = Vec::new();
    let n = data.degrees.len() as u64;
    if data.degrees.iter().any(|&d| d > 1) {
        for &d in &data.degrees {
            steps.push(QuotientStep::Curling { d });
        }
    }
    if n >= 2 {
        steps.push(QuotientStep::IdentifyCores { count: n });
    }
    QuotientDescription {
        steps,
        model: pinched_model(data),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(degrees: &[u64]) -> BranchCoverData {
        BranchCoverData::new(degrees.to_vec()).unwrap()
    }

    #[test]
    fn branch_counts() {
        assert_eq!(hyperplane_branch_count(&data(&[1])), 1);
        for d in 1..=6 {
            assert_eq!(hyperplane_branch_count(&data(&[d])), d);
        }
        assert_eq!(hyperplane_branch_count(&data(&[2, 1, 3])), 6);
    }

    #[test]
    fn pinched_models() {
        let curling = pinched_model(&data(&[4]));
        assert_eq!(curling.k, 4);
        assert_eq!(curling.cycle_type, vec![4]);

        let ident = pinched_model(&data(&[1, 1]));
        assert_eq!(ident.k, 2);
        assert_eq!(ident.cycle_type, vec![1, 1]);

        let mixed = pinched_model(&data(&[2, 3]));
        assert_eq!(mixed.k, 5);
        assert_eq!(mixed.cycle_type, vec![2, 3]);
    }

    #[test]
    fn homeomorphism_is_cycle_type_equality() {
        assert!(models_homeomorphic(
            &pinched_model(&data(&[2, 3])),
            &pinched_model(&data(&[3, 2])),
        ));
        assert!(!models_homeomorphic(
            &pinched_model(&data(&[2, 3])),
            &pinched_model(&data(&[5])),
        ));
        assert!(models_homeomorphic(
            &pinched_model(&data(&[1])),
            &pinched_model(&data(&[1])),
        ));
    }

    #[test]
    fn manifold_detection() {
        assert!(is_manifold_link(&[data(&[1]), data(&[1])]));
        for d in 2..=5 {
            assert!(!is_manifold_link(&[data(&[d])]));
        }
        assert!(is_manifold_link(&[]));
        // a manifold link forces every pinched model to be an honest torus
        assert!(pinched_model(&data(&[1])).k == 1);
    }

    #[test]
    fn quotient_descriptions() {
        let d21 = compose_curlings_and_identifications(&data(&[2, 1]));
        assert_eq!(
            d21.steps,
            vec![
                QuotientStep::Curling { d: 2 },
                QuotientStep::Curling { d: 1 },
                QuotientStep::IdentifyCores { count: 2 },
            ]
        );
        assert_eq!(d21.model.k, 3);

        let single = compose_curlings_and_identifications(&data(&[5]));
        assert_eq!(single.steps, vec![QuotientStep::Curling { d: 5 }]);

        let idents = compose_curlings_and_identifications(&data(&[1, 1, 1]));
        assert_eq!(idents.steps, vec![QuotientStep::IdentifyCores { count: 3 }]);
        assert_eq!(idents.model.k, 3);
    }

    #[test]
    fn invalid_data_is_rejected() {
        assert_eq!(
            BranchCoverData::new(vec![]).unwrap_err(),
            NormalizationError::Empty
        );
        assert_eq!(
            BranchCoverData::new(vec![2, 0]).unwrap_err(),
            NormalizationError::ZeroDegree
        );
    }
}
