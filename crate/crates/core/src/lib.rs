//! Deterministic statevector simulation and analysis toolkit for the
//! non-variational quantum-walk optimisation algorithm.
//!
//! The simulation lives in the logical solution space (dimension `N`, the
//! number of feasible solutions), not the qubit Hilbert space: the mixers
//! preserve the feasible subspace, so walking the logical space is exact and
//! far cheaper. Qubit-level simulation exists only in [`circuits`], which
//! builds and verifies the explicit gate constructions.
//!
//! Modules map onto the moving parts of the algorithm:
//!
//! - [`space`]: solution-space codecs, distances, subset combinatorics
//! - [`problems`]: objective kernels and penalty functions for the five
//!   problem classes, plus objective statistics
//! - [`mixers`]: the continuous-time quantum-walk mixing unitaries
//! - [`engine`]: amplified-state preparation, measurement statistics,
//!   parameter search and penalty tuning
//! - [`analysis`]: subset-mean statistics, amplification profiles and the
//!   coherent-sum approximation with its error study
//! - [`circuits`]: gate-level constructions and a small qubit simulator
//! - [`instances`]: builtin problem instances, generators and brute-force
//!   oracles




pub mod engine;
pub mod error;
pub mod instances;
pub mod mixers;
pub mod problems;
pub mod space;
pub mod state;

pub use error::{Error, Result};
pub use space::{DistanceProfile, Solution, SpaceSpec};
pub use state::Statevector;
