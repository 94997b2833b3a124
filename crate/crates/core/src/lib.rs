//! Exact computations with q-analogues, λ-rings, Witt vectors and
//! q-de Rham complexes of polynomial rings.

pub mod cartier;
pub mod error;
pub mod lambda_ring;
pub mod linalg;
pub mod qdrham;
pub mod qdrw;
pub mod ring_core;
pub mod suites;
pub mod witt;

pub use error::{Error, Result};
