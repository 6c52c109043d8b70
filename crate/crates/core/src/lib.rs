//! Exact continued fractions of rationals and real quadratic irrationals.
//!
//! Everything is computed with arbitrary-precision integers: finite expansions
//! of rationals and their continuants ([`cf`]), eventually periodic expansions
//! of `(P + √D)/Q` ([`surd`]), the palindromic period of `√N` ([`sqrtn`]),
//! closed-form period rules for classes of `N = n² + j` ([`observations`]),
//! brute-force checks of the classical approximation theorems ([`approx`]) and
//! range scans that test conjectured bounds ([`scan`]).
//!
//! ```
//! use contfrac::sqrtn::{reconstruct_n, sqrt_cf};
//! use num_bigint::BigInt;
//!
//! let cf = sqrt_cf(&BigInt::from(1726)).unwrap();
//! assert_eq!(cf.period_length(), 88);
//! assert!(cf.period_length() > 2 * 41);
//!
//! let n = reconstruct_n(cf.n(), &cf.body).unwrap();
//! assert_eq!(n, BigInt::from(1726).into());
//! ```
//!
//! The `book/` directory next to this crate walks through each module.

pub mod approx;
pub mod cf;
mod decimal;
pub mod error;
pub mod observations;
pub mod scan;
pub mod sqrtn;
pub mod surd;

pub use cf::{FiniteCf, Rational};
pub use error::{Error, Result};
pub use sqrtn::{SqrtCf, SqrtDecomposition};
pub use surd::{PeriodicCf, QuadraticSurd};

/// Re-exported so callers can build inputs without naming the bigint crate.
pub use num_bigint::BigInt;
