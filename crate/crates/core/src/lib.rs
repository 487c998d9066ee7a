//! Exact linear algebra for companion matrices, Toeplitz and Hankel
//! matrices and their Bezoutians.
//!
//! All arithmetic is over the rationals with no rounding. The crate covers
//! companion matrix construction, the `∂` operator and its kernel, Bezoutian
//! inverses of Toeplitz and Hankel matrices in `O(n²)` operations, the
//! similarity relations between companion matrices, structured extensions
//! and the state-space views built on them.

pub mod bezoutian;
pub mod companion;
pub mod error;
pub mod extension;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod selftest;
pub mod similarity;
pub mod statespace;
pub mod structured;

pub use companion::{companion, companion_power, CompanionKind, Side};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::{Poly, PolyVec};
pub use rational::{count_multiplications, q, Rational};
pub use structured::{HankelBand, ToeplitzBand};
