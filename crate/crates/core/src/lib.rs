//! Exact harmonic, hyperharmonic and generalized hyperharmonic numbers, the
//! coefficient families of their weighted summation formulas, and a registry
//! of identities that checks every closed form against a brute-force sum.
//!
//! ```
//! use hhlab::{HyperRoute, SeqCache};
//!
//! let seq = SeqCache::new();
//! assert_eq!(seq.harmonic(3, 1).to_string(), "11/6");
//! assert_eq!(seq.hyperharmonic(3, 2, HyperRoute::Conway).to_string(), "13/3");
//! ```

pub mod coefficients;
pub mod error;
pub mod identities;
pub mod rational;
pub mod sequences;

pub use coefficients::{AhatTable, Coefficients, Family};
pub use error::{Error, Result};
pub use identities::{
    Bound, Identity, Outcome, Param, ParamRange, Point, Registry, Role, Variant, VerificationResult,
};
pub use rational::{binomial, falling_factorial, int_pow, rising_factorial, Rational};
pub use sequences::{HyperRoute, SeqCache};
