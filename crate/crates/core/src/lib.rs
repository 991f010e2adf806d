//! Numerical laboratory for absolute matrix summability.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! * lazy, memoized real sequences with difference operators, partial sums,
//!   weight systems and finite-prefix class checks ([`sequences`]);
//! * lower-triangular summability methods with their series-to-sequence and
//!   series-to-series companions ([`matrices`]);
//! * the `|C,α|_k`, `|N̄,p_n|_k` and `|A,p_n|_k` indices as partial-sum
//!   ledgers together with the factor-theorem hypothesis checks
//!   ([`summability`]);
//! * the Abel-transformed four-term split of `Δ̄I_n` ([`decomposition`]);
//! * trigonometric Fourier experiments ([`fourier`]) on top of a small
//!   Gauss–Kronrod quadrature layer ([`quadrature`]).
//!
//! Every asymptotic `O(·)` statement is graded on a finite prefix by a
//! [`GrowthReport`]; nothing here proves convergence.

#![no_std]

extern crate alloc;

pub mod decomposition;
pub mod error;
pub mod fourier;
pub mod growth;
pub mod matrices;
pub mod numeric;
pub mod quadrature;
pub mod sequences;
pub mod summability;

pub use error::{Error, Result};
pub use growth::{Check, GrowthReport, Thresholds, Verdict};
pub use matrices::TriangularMethod;
pub use numeric::{CompensatedSum, Dd};
pub use sequences::{LazySequence, Prefix, WeightSystem};
pub use summability::{HypothesisLedger, SummabilityLedger};
