//! Gamma function by argument shift plus Stirling's asymptotic series.
//!
//! For `s > 0` the argument is raised by unit steps to `z >= z_min(w)`, the
//! Stirling series for `ln Γ(z)` is summed until its terms drop below
//! `2^-w`, and the shift is undone with the product `s (s+1) ... (z-1)`.
//! `w` is the caller's precision plus [`GUARD_BITS`].

use std::sync::OnceLock;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use super::context::{PrecisionContext, Real};
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 32;
/// Number of Stirling correction terms available (uses B_2 .. B_120).
const STIRLING_TERMS: usize = 60;

/// Stirling coefficients `B_{2j} / (2j (2j-1))` for `j = 1..=STIRLING_TERMS`.
fn stirling_coefficients() -> &'static [Rational] {
    static COEFFS: OnceLock<Vec<Rational>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let bernoulli = bernoulli_numbers(2 * STIRLING_TERMS);
        (1..=STIRLING_TERMS)
            .map(|j| {
                let n = 2 * j as i64;
                &bernoulli[2 * j] / Rational::from(n * (n - 1))
            })
            .collect()
    })
}

/// `B_0 ..= B_n` from `sum_{k=0}^{n} C(n+1, k) B_k = 0`, with `B_1 = -1/2`.
pub(crate) fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::from(1));
    for i in 1..=n {
        if i > 1 && i % 2 == 1 {
            b.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            if bk.cmp0().is_eq() {
                continue;
            }
            let binom = Integer::from(Integer::binomial_u(i as u32 + 1, k as u32));
            acc += Rational::from(bk * &binom);
        }
        b.push(-acc / Rational::from(i as u64 + 1));
    }
    b
}

/// Shift threshold that lets [`STIRLING_TERMS`] corrections reach `2^-w`.
fn shift_threshold(w: u32) -> f64 {
    let by_precision = f64::from(w) / 2.0;
    let by_term_budget = 8.0 * 2f64.powf(f64::from(w) / (2 * STIRLING_TERMS) as f64);
    by_precision.max(by_term_budget).max(10.0).ceil()
}

/// `ln Γ(z)` for `z` already past the shift threshold.
fn stirling_ln_gamma(z: &Float, w: u32) -> Float {
    let half_ln_2pi = (Float::with_val(w, Constant::Pi) * 2u32).ln() / 2u32;
    let mut sum = Float::with_val(w, z - 0.5f64) * Float::with_val(w, z.ln_ref()) - z + half_ln_2pi;
    let tol = Float::with_val(w, 1) >> w;
    let inv_z2 = Float::with_val(w, z * z).recip();
    let mut inv_power = Float::with_val(w, z.recip_ref());
    for coeff in stirling_coefficients() {
        let term = Float::with_val(w, coeff) * &inv_power;
        let small = term.clone().abs() < tol;
        sum += term;
        if small {
            return sum;
        }
        inv_power *= &inv_z2;
    }
    debug_assert!(false, "Stirling series did not reach 2^-{w}");
    sum
}

/// Raises `s` to the shift threshold; returns the shifted argument and the
/// product `s (s+1) ... (shifted - 1)`.
fn shift_up(s: &Float, w: u32) -> (Float, Float) {
    let threshold = shift_threshold(w);
    let mut z = Float::with_val(w, s);
    let mut product = Float::with_val(w, 1);
    while z < threshold {
        product *= &z;
        z += 1u32;
    }
    (z, product)
}

fn check_positive(s: &Real) -> Result<()> {
    if s.is_finite() && *s > 0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "gamma requires s > 0, got {}",
            s.to_f64()
        )))
    }
}

/// Γ(s) for real `s > 0`.
pub fn gamma(s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    check_positive(s)?;
    let w = ctx.mantissa_bits() + GUARD_BITS;
    let (z, product) = shift_up(s, w);
    let value = stirling_ln_gamma(&z, w).exp() / product;
    if !value.is_finite() {
        return Err(Error::Overflow(format!(
            "gamma({}) is not representable",
            s.to_f64()
        )));
    }
    Ok(Float::with_val(ctx.mantissa_bits(), value))
}

/// ln Γ(s) for real `s > 0`.
pub fn ln_gamma(s: &Real, ctx: &PrecisionContext) -> Result<Real> {
    check_positive(s)?;
    let w = ctx.mantissa_bits() + GUARD_BITS;
    let (z, product) = shift_up(s, w);
    let value = stirling_ln_gamma(&z, w) - product.ln();
    Ok(Float::with_val(ctx.mantissa_bits(), value))
}
