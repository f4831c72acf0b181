//! Exact construction and verification of chain-type classical r-matrices for `sl(n)`.
//!
//! Everything is computed over arbitrary-precision rationals. The crate builds
//! the full, rotated, Jordanian and enlarged chains, checks them against the
//! classical Yang-Baxter equation by an explicit Schouten bracket, solves for
//! the enlargement Cartan elements, and analyzes the induced dual Lie algebra.

pub mod builders;
pub mod dual;
pub mod error;
pub mod exec;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod rational;
pub mod roots;
pub mod tensor;

pub use error::{Error, Result};
pub use exec::Execution;
pub use lie::{LieElement, MatrixUnit, RootVector};
pub use rational::Rational;
pub use tensor::{BiTensor, CybeVerdict, TriTensor};
