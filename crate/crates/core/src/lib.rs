//! Minimizers of the even-degree geometric-sum polynomial
//! `f_m(x) = 1 + x + ... + x^m`.
//!
//! The minimizer `x_m` is the unique negative root of
//! `g_m(x) = m x^{m+1} - (m+1) x^m + 1` and lies in `[-1, -1/2]`. It is
//! computed here in four independent ways:
//!
//! * [`oracle::solve_oracle`]: safeguarded Newton iteration on `g_m`;
//! * [`series::lagrange_partial_sum`]: the Lagrange-inversion series;
//! * [`series::hypergeometric_closed_form`]: a finite sum of `m`
//!   hypergeometric functions at unit argument;
//! * [`series::perturbation_partial_sum`]: the rapidly converging
//!   perturbation series.
//!
//! [`analysis`] provides the error metrics and the significant-digits test
//! used to compare them. All arithmetic runs at the mantissa width chosen by
//! a [`PrecisionContext`].

pub mod analysis;
pub mod error;
pub mod format;
pub mod numerics;
pub mod oracle;
pub mod parallel;
pub mod polynomial;
pub mod series;

pub use error::{Error, Result};
pub use numerics::{PrecisionContext, Real};
pub use oracle::{Method, MinimizerResult};
pub use parallel::Execution;
pub use polynomial::EvenDegree;
