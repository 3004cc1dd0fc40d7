use rug::Float;

use crate::error::{Error, Result};

/// Extended-precision real number. The mantissa width travels with the value.
pub type Real = Float;

/// Smallest mantissa width accepted by [`PrecisionContext`].
pub const MIN_MANTISSA_BITS: u32 = 64;
/// Default mantissa width (about 77 decimal digits).
pub const DEFAULT_MANTISSA_BITS: u32 = 256;
/// Default cap on the number of terms summed by any series routine.
pub const DEFAULT_MAX_SERIES_TERMS: usize = 10_000;

/// Working precision shared by every operation in the crate.
///
/// `term_epsilon` is the relative threshold below which a series term is
/// considered negligible; by default it is `8 * 2^-mantissa_bits`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    mantissa_bits: u32,
    max_series_terms: usize,
    term_epsilon: Real,
}

impl PrecisionContext {
    pub fn new(mantissa_bits: u32) -> Result<Self> {
        if mantissa_bits < MIN_MANTISSA_BITS {
            return Err(Error::InvalidContext(format!(
                "mantissa_bits must be at least {MIN_MANTISSA_BITS}, got {mantissa_bits}"
            )));
        }
        let term_epsilon = Float::with_val(mantissa_bits, 8) >> mantissa_bits;
        Ok(Self {
            mantissa_bits,
            max_series_terms: DEFAULT_MAX_SERIES_TERMS,
            term_epsilon,
        })
    }

    pub fn with_max_series_terms(mut self, max_series_terms: usize) -> Result<Self> {
        if max_series_terms == 0 {
            return Err(Error::InvalidContext(
                "max_series_terms must be positive".into(),
            ));
        }
        self.max_series_terms = max_series_terms;
        Ok(self)
    }

    pub fn with_term_epsilon(mut self, term_epsilon: Real) -> Result<Self> {
        if !(term_epsilon.is_finite() && term_epsilon > 0) {
            return Err(Error::InvalidContext(
                "term_epsilon must be positive".into(),
            ));
        }
        self.term_epsilon = term_epsilon;
        Ok(self)
    }

    pub fn mantissa_bits(&self) -> u32 {
        self.mantissa_bits
    }

    pub fn max_series_terms(&self) -> usize {
        self.max_series_terms
    }

    pub fn term_epsilon(&self) -> &Real {
        &self.term_epsilon
    }

    /// A context with `extra` more mantissa bits and the same term cap.
    pub fn elevated(&self, extra: u32) -> Self {
        let mut ctx = Self::new(self.mantissa_bits + extra).expect("wider context is valid");
        ctx.max_series_terms = self.max_series_terms;
        ctx
    }

    /// Converts `value` to a [`Real`] at this context's precision.
    pub fn real<T>(&self, value: T) -> Real
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.mantissa_bits, value)
    }

    /// Exact rational `num/den` rounded to this precision.
    pub fn ratio(&self, num: i64, den: i64) -> Real {
        Float::with_val(self.mantissa_bits, num) / den
    }

    /// Parses a decimal literal such as `"-0.6058295862"` at this precision.
    pub fn parse(&self, literal: &str) -> Result<Real> {
        Float::parse(literal)
            .map(|p| Float::with_val(self.mantissa_bits, p))
            .map_err(|e| Error::Domain(format!("cannot parse {literal:?} as a real: {e}")))
    }

    /// `2^-bits` at this context's precision.
    pub fn pow2_neg(&self, bits: i64) -> Real {
        let one = Float::with_val(self.mantissa_bits, 1);
        if bits >= 0 {
            one >> bits as u32
        } else {
            one << (-bits) as u32
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(DEFAULT_MANTISSA_BITS).expect("default precision is valid")
    }
}

/// Relative difference `|a - b| / max(|b|, tiny)`, used throughout the tests
/// and the cross-validation code.
pub fn relative_difference(a: &Real, b: &Real) -> Real {
    let prec = a.prec().max(b.prec());
    let diff = Float::with_val(prec, a - b).abs();
    if b.is_zero() {
        diff
    } else {
        diff / Float::with_val(prec, b.abs_ref())
    }
}
