//! The polynomial family `f_m(x) = 1 + x + ... + x^m` for even `m`, its
//! derivatives, and the auxiliary polynomials
//!
//! * `g_m(x) = m x^{m+1} - (m+1) x^m + 1`, whose negative root is the
//!   minimizer (`f'_m(x) = 0 ⇔ g_m(x) = 0` for `x < 0`);
//! * `h_m(x) = (m-1) m x^{m+1} - 2(m²-1) x^m + m(m+1) x^{m-1} - 2`, which
//!   vanishes exactly where `f''_m` does for `x < 0`.

use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::Real;

/// A validated even degree `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvenDegree(u32);

impl EvenDegree {
    pub fn new(m: u32) -> Result<Self> {
        if m >= 2 && m.is_multiple_of(2) {
            Ok(Self(m))
        } else {
            Err(Error::InvalidDegree(i64::from(m)))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Even degrees `from, from+2, ..., to` (inclusive).
    pub fn range(from: EvenDegree, to: EvenDegree) -> Vec<EvenDegree> {
        (from.0..=to.0).step_by(2).map(EvenDegree).collect()
    }
}

impl TryFrom<i64> for EvenDegree {
    type Error = Error;

    fn try_from(m: i64) -> Result<Self> {
        u32::try_from(m)
            .map_err(|_| Error::InvalidDegree(m))
            .and_then(EvenDegree::new)
    }
}

impl fmt::Display for EvenDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point evaluation of `f_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyEval {
    pub m: EvenDegree,
    pub x: Real,
    pub value: Real,
}

impl PolyEval {
    pub fn new(m: EvenDegree, x: Real) -> Self {
        let value = eval_f(m, &x);
        Self { m, x, value }
    }
}

/// Horner evaluation of `1 + x + ... + x^m`.
pub fn eval_f_horner(m: EvenDegree, x: &Real) -> Real {
    let mut acc = Float::with_val(x.prec(), 1);
    for _ in 0..m.get() {
        acc *= x;
        acc += 1u32;
    }
    acc
}

/// `f_m(x)`, via `(1 - x^{m+1}) / (1 - x)` away from `x = 1` and by Horner's
/// rule when `|1 - x| < 2^{-prec/2}`.
pub fn eval_f(m: EvenDegree, x: &Real) -> Real {
    let prec = x.prec();
    let gap = Float::with_val(prec, 1 - x);
    let cutoff = Float::with_val(prec, 1) >> (prec / 2);
    if Float::with_val(prec, gap.abs_ref()) < cutoff {
        return eval_f_horner(m, x);
    }
    let power = Float::with_val(prec, x.pow(m.get() + 1));
    (1 - power) / gap
}

/// `g_m(x) = m x^{m+1} - (m+1) x^m + 1`, evaluated as `x^m (m x - (m+1)) + 1`.
pub fn eval_g(m: EvenDegree, x: &Real) -> Real {
    let prec = x.prec();
    let mm = m.get();
    let xm = Float::with_val(prec, x.pow(mm));
    let linear = Float::with_val(prec, x * mm) - (mm + 1);
    xm * linear + 1u32
}

/// `g'_m(x) = m (m+1) x^{m-1} (x - 1)`.
pub fn eval_g_prime(m: EvenDegree, x: &Real) -> Real {
    let prec = x.prec();
    let mm = m.get();
    let xm1 = Float::with_val(prec, x.pow(mm - 1));
    xm1 * Float::with_val(prec, x - 1u32) * (mm * (mm + 1))
}

/// `g_m` in exact rational arithmetic.
pub fn eval_g_exact(m: EvenDegree, x: &Rational) -> Rational {
    let mm = m.get();
    let xm = Rational::from(x.pow(mm as i32));
    let linear = Rational::from(x * mm) - (mm + 1);
    xm * linear + 1u32
}

/// `h_m(x)`; zero exactly where `f''_m` vanishes on `x < 0`.
pub fn eval_h(m: EvenDegree, x: &Real) -> Real {
    let prec = x.prec();
    let mm = m.get();
    let xm1 = Float::with_val(prec, x.pow(mm - 1));
    // x^{m-1} ((m-1) m x² - 2(m²-1) x + m(m+1)) - 2
    let c2 = (mm - 1) * mm;
    let c1 = 2 * (mm * mm - 1);
    let c0 = mm * (mm + 1);
    let quad = Float::with_val(prec, x * c2) - c1;
    let quad = quad * x + c0;
    xm1 * quad - 2u32
}

/// Coefficients of `f'_m`, lowest degree first: `[1, 2, 3, ..., m]`.
pub fn fp_coefficients(m: EvenDegree) -> Vec<Integer> {
    (1..=m.get()).map(Integer::from).collect()
}

/// Coefficients of `f''_m`, lowest degree first: `i (i-1)` for `i = 2..=m`.
pub fn fpp_coefficients(m: EvenDegree) -> Vec<Integer> {
    (2..=m.get()).map(|i| Integer::from(i) * (i - 1)).collect()
}

fn horner_float(coeffs: &[Integer], x: &Real) -> Real {
    let mut acc = Float::new(x.prec());
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

fn horner_rational(coeffs: &[Integer], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

/// `f'_m(x)` by term-wise differentiation.
pub fn eval_fp(m: EvenDegree, x: &Real) -> Real {
    horner_float(&fp_coefficients(m), x)
}

/// `f''_m(x)` by term-wise differentiation.
pub fn eval_fpp(m: EvenDegree, x: &Real) -> Real {
    horner_float(&fpp_coefficients(m), x)
}

/// `f''_m(x)` in exact rational arithmetic.
pub fn eval_fpp_exact(m: EvenDegree, x: &Rational) -> Rational {
    horner_rational(&fpp_coefficients(m), x)
}

/// Minimum value `(1+m) / (1 + m(1 - x_m))` given the minimizer `x_m`.
pub fn min_value_from_minimizer(m: EvenDegree, x_m: &Real) -> Result<Real> {
    if !(*x_m >= -1 && *x_m <= -0.5f64) {
        return Err(Error::Domain(format!(
            "minimizer must lie in [-1, -1/2], got {}",
            x_m.to_f64()
        )));
    }
    let prec = x_m.prec();
    let mm = m.get();
    let denom = Float::with_val(prec, 1 - x_m) * mm + 1u32;
    Ok(Float::with_val(prec, mm + 1) / denom)
}
