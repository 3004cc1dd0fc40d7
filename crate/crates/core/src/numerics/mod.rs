//! Precision-configurable real arithmetic and the special functions used by
//! the rest of the crate.

mod bell;
mod context;
mod gamma;
mod hypergeometric;
mod pochhammer;

pub use bell::bell_partial;
pub use context::{
    relative_difference, PrecisionContext, Real, DEFAULT_MANTISSA_BITS, DEFAULT_MAX_SERIES_TERMS,
    MIN_MANTISSA_BITS,
};
pub use gamma::{gamma, ln_gamma};
pub use hypergeometric::{pfq, pfq_detailed, pfq_partial, PfqSum};
pub use pochhammer::{factorial, falling_factorial, k_gamma, k_pochhammer, rising_factorial};
