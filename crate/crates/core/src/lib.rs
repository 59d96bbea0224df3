//! Exact and numeric verification of the identity between nested power sums
//! over the roots of `x^m - x^(m-1) - ... - x - 1` and shifted m-bonacci
//! sequences.
//!
//! The nested sum over all compositions of `n` into `m` parts is the complete
//! homogeneous symmetric polynomial `h_n` of the roots. Several independent
//! routes compute it:
//!
//! - [`symmetric`]: Vieta values plus the `h` recurrence (fast, exact).
//! - [`sympoly`]: brute-force enumeration of the monomials, reduction to the
//!   elementary basis and evaluation at the Vieta values (slow, exact).
//! - [`rootfind`]: Durand-Kerner roots and direct floating-point summation.
//!
//! These are compared against the sequences of [`recurrences`]; the
//! algebraic steps of the induction argument are checked in [`sympoly`] and
//! [`quotient`]. [`expr`] is a small calculator language over the same
//! quantities and [`cli`] wires everything into reports.

pub mod bfile;
pub mod cli;
pub mod error;
pub mod expr;
pub mod quotient;
pub mod recurrences;
pub mod report;
pub mod rootfind;
pub mod summation;
pub mod symmetric;
pub mod sympoly;
pub mod verify;

pub use error::{Error, Result};
pub use recurrences::{CompanionMatrix, Family, RecurrenceSpec};
pub use rootfind::RootSet;
pub use symmetric::{HSequence, PSequence, VietaVector};
pub use sympoly::{EPolynomial, MultivariatePoly};
