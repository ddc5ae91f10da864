//! Exact combinatorial topology of complex surface singularities.
//!
//! The crate computes with the discrete data attached to resolutions of
//! surface singularities: weighted plumbing (dual resolution) graphs and
//! their intersection lattices, blow-up/blow-down rewriting, Hirzebruch-Jung
//! continued fractions and lens spaces, embedded resolution of plane curve
//! germs from Puiseux data, the quotient topology of normalization maps, and
//! the Hirzebruch-Jung resolution pipeline for cyclic covers `z^d = f(x,y)`.
//!
//! Everything is exact: integers are arbitrary precision where products can
//! grow (determinants, definiteness tests), series coefficients are exact
//! rationals, and no floating point is used anywhere.
//!
//! Entry points by theme:
//!
//! - [`graph`] — plumbing graph values, intersection matrix, determinant,
//!   negative definiteness.
//! - [`moves`] — blow-up/blow-down calculus, reduction to the minimal good
//!   resolution, graph isomorphism.
//! - [`lens`] — negative continued fractions, bamboo resolutions of
//!   `z^n = x y^q`, lens space parameters and their classification.
//! - [`curve`] — minimal embedded resolution of plane curve germs given by
//!   Puiseux branches.
//! - [`normalization`] — curlings, core identifications and pinched solid
//!   tori along a one-dimensional singular locus.
//! - [`cover`] — covering graphs of cyclic covers, bamboo splicing, Euler
//!   number assignment, and the full resolution pipeline.
//! - [`io`] — the JSON and DOT exchange formats used by the CLI.
//!
//! The `singlink` binary is a thin front end over these modules; the
//! `examples/` directory contains one runnable walkthrough per capability.
//!
//! ```
//! use singlink::cover::{resolve_cyclic, PipelineOptions};
//! use singlink::lens::{hj_expand, resolve_quasi_ordinary};
//! use singlink::puiseux::{Axis, PuiseuxBranch};
//!
//! // the negative continued fraction of 12/5 and its bamboo
//! let bamboo = hj_expand(12, 5)?;
//! assert_eq!(bamboo.weights(), &[3, 2, 3]);
//!
//! // the same weights resolve the cyclic cover z^12 = x^5 y^11
//! let branches = vec![
//!     PuiseuxBranch::axis(Axis::X, 5, "lx")?,
//!     PuiseuxBranch::axis(Axis::Y, 11, "ly")?,
//! ];
//! let report = resolve_cyclic(&branches, 12, PipelineOptions::default())?;
//! let weights: Vec<i64> = report
//!     .minimal
//!     .vertices()
//!     .map(|v| v.euler.unwrap())
//!     .collect();
//! assert_eq!(weights.len(), 3);
//!
//! // and z^12 = x y^7 is the quasi-ordinary germ with the reversed datum
//! assert_eq!(resolve_quasi_ordinary(12, 7)?.weights(), &[3, 2, 3]);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

#![forbid(unsafe_code)]

pub mod cli;
pub mod cover;
pub mod curve;
pub mod graph;
pub mod io;
pub mod lens;
pub mod local_model;
pub mod moves;
pub mod normalization;
pub mod puiseux;
mod series;

pub use graph::{Arrow, PlumbingGraph, Vertex, VertexId};
pub use lens::{HjBamboo, LensParams};
