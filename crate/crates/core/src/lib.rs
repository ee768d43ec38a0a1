//! Teleportation of two-qubit states through four-qubit mixed resources.
//!
//! The crate covers dense linear algebra on small qubit registers
//! ([`linalg`]), the resource and measurement state families ([`states`]),
//! the teleportation channels and a brute-force protocol simulation
//! ([`channel`]), and scalar diagnostics such as the generalized singlet
//! fraction, negativity and four-qubit filter invariants ([`metrics`]).

pub mod channel;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod optimize;
pub mod par;
pub mod rng;
pub mod states;
pub mod tolerance;

pub use error::{Error, Result};
