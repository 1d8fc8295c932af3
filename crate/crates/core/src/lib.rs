//! Computational toolkit for Horn's problem and the moment-map geometry
//! around it: Schur-Horn polytopes, Hermitian triples with prescribed
//! spectra summing to zero, Littlewood-Richardson invariant dimensions,
//! flag-manifold moment maps and polygon spaces.

pub mod conjugation_flow;
pub mod embeddings;
pub mod error;
pub mod hermitian_core;
pub mod horn_flow;
pub mod lr_invariants;
pub mod matrix_json;
pub mod polygon_spaces;
pub mod quotient_examples;
pub mod schur_horn;
pub mod spectra;

pub use error::{HornError, Result};
