//! Ancilla-free synthesis of multi-control Peres and Toffoli gates with
//! mixed-polarity controls, built from Feynman gates and controlled κ-th
//! roots of NOT, together with the simulators and oracles used to check them.

pub mod bits;
pub mod circuit;
pub mod error;
pub mod io;
pub mod simulation;
pub mod synthesis;
pub mod verification;

pub use bits::BitString;
pub use circuit::{Circuit, Direction, Gate, GateCensus, Kappa};
pub use error::{Error, Result};
pub use synthesis::{ActivationVector, AlphaVector, PolarityVector, ZeroPolarityMode};
