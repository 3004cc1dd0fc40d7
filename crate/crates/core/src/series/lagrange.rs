//! Lagrange-inversion series. Substituting `x = -ζ^{-1/m}` turns
//! `g_m(x) = 0` into `ζ = 1 + m + m ζ^{-1/m}`; inverting about `ζ = 1 + m`
//! gives
//!
//! `x_m = -(1+m)^{-1/m}/m · Σ_k Γ((mk+k+1)/m) / Γ((m+k+1)/m) · z^k / k!`
//!
//! with `z = -m (1+m)^{-(m+1)/m}`. The series sits on its circle of
//! convergence and converges slowly.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::{SeriesApproximation, SeriesMethod};
use crate::error::{Error, Result};
use crate::numerics::{gamma, PrecisionContext, Real};
use crate::polynomial::EvenDegree;

const GUARD_BITS: u32 = 32;

/// `z = -m (1+m)^{-(m+1)/m}`.
pub fn lagrange_argument(m: EvenDegree, prec: u32) -> Real {
    let mm = m.get();
    let base = Float::with_val(prec, mm + 1);
    let exponent = -Float::with_val(prec, mm + 1) / mm;
    -(base.pow(exponent) * mm)
}

fn prefactor(m: EvenDegree, prec: u32) -> Real {
    let mm = m.get();
    -(Float::with_val(prec, mm + 1).root(mm).recip() / mm)
}

/// Single addend `k` of the series, including the overall prefactor.
pub fn lagrange_term(m: EvenDegree, k: usize, ctx: &PrecisionContext) -> Result<Real> {
    let work = ctx.elevated(GUARD_BITS);
    let w = work.mantissa_bits();
    let z = lagrange_argument(m, w);
    let power = z.pow(k as u32);
    let fact = Float::with_val(w, Integer::from(Integer::factorial(k as u32)));
    let value = term_with(m, k, &power, &fact, &work)? * prefactor(m, w);
    Ok(Float::with_val(ctx.mantissa_bits(), value))
}

fn term_with(
    m: EvenDegree,
    k: usize,
    z_power: &Float,
    factorial: &Float,
    work: &PrecisionContext,
) -> Result<Float> {
    let mm = u64::from(m.get());
    let k = k as u64;
    let w = work.mantissa_bits();
    let upper = Float::with_val(w, mm * k + k + 1) / mm;
    let lower = Float::with_val(w, mm + k + 1) / mm;
    let ratio = gamma(&upper, work)? / gamma(&lower, work)?;
    let value = ratio * z_power / factorial;
    if !value.is_finite() {
        return Err(Error::Overflow(format!(
            "Lagrange term {k} for m = {mm} is not representable"
        )));
    }
    Ok(value)
}

/// Terms `0..=n` of the Lagrange-inversion series and their sum.
pub fn lagrange_partial_sum(
    m: EvenDegree,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<SeriesApproximation> {
    let work = ctx.elevated(GUARD_BITS);
    let w = work.mantissa_bits();
    let z = lagrange_argument(m, w);
    let scale = prefactor(m, w);
    let mut power = Float::with_val(w, 1);
    let mut factorial = Float::with_val(w, 1);
    let mut terms = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            power *= &z;
            factorial *= k as u64;
        }
        let t = term_with(m, k, &power, &factorial, &work)? * &scale;
        terms.push(Float::with_val(ctx.mantissa_bits(), t));
    }
    Ok(SeriesApproximation::from_terms(
        m,
        SeriesMethod::Lagrange,
        terms,
    ))
}
