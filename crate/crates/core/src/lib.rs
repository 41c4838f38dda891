//! Fast remainder, quotient and divisibility tests for 32-bit integers by
//! invariant divisors.
//!
//! The core trick: instead of computing `n % d` from the quotient, keep the
//! *fractional* bits of `c * n` where `c` is a scaled approximate reciprocal
//! of `d`, then multiply those bits by `d` and take the high half. One
//! widening multiplication replaces the multiply-subtract dance compilers
//! emit today.
//!
//! The crate ships four families of functionality:
//!
//! * [`unsigned`] / [`signed`] — the production 32-bit runtime paths with a
//!   fixed 64-bit reciprocal.
//! * [`magic`] — generic-width (`N <= 32`) parameter selection: minimal
//!   fractional-bit counts, validity predicates and toy-width div/rem used
//!   to reproduce small worked examples.
//! * [`baseline`] — the Granlund-Montgomery-Warren quotient algorithm and
//!   the Granlund-Montgomery divisibility test, for cross-checking and
//!   benchmark comparison.
//! * [`verify`] / [`bench`] — an oracle-driven sweep harness and the two
//!   benchmarks (LCG throughput, trial-division prime counting).

pub mod baseline;
pub mod bench;
pub mod error;
pub mod magic;
pub mod rng;
pub mod signed;
pub mod unsigned;
pub mod verify;

pub use baseline::{GmDivisibility, GmwDivisor};
pub use error::Error;
pub use magic::MagicParameters;
pub use signed::SignedFastDivisor;
pub use unsigned::UnsignedFastDivisor;
