//! Dephasing dynamics and entanglement detection for qutrit pairs.

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod states;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use num_complex::Complex64;
