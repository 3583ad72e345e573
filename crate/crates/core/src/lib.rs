//! Seven-segment puzzle oracles as reversible circuits.
//!
//! The crate compiles matchstick-equation puzzles into Boolean oracle
//! circuits built from a small component library, simulates Grover search
//! over the oracle's input register, and checks everything against a
//! classical brute-force solver.

pub mod circuit;
pub mod error;
pub mod grover;
pub mod oracle;
pub mod puzzle;
pub mod refsolver;
pub mod register;
pub mod segcode;
pub mod synth;

pub use error::{Error, Result};
