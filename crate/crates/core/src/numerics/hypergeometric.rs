//! Generalized hypergeometric series `pFq(a; b; z)`.
//!
//! Terms are generated with the ratio recurrence
//! `t_{k+1} = t_k · ∏(a_i+k) / ∏(b_j+k) · z/(k+1)`.
//! Inside the unit disc (or for `p <= q`) the series is summed directly until
//! two consecutive terms fall below `term_epsilon · |sum|`.
//!
//! At `z = 1` with `p = q + 1` the terms decay only like `k^-(1+γ)`, where
//! `γ = Σb - Σa > 0`, so direct summation cannot reach working precision.
//! There the first `N` terms are summed and the remainder is taken from its
//! asymptotic expansion `T_N ~ t_N · N · Σ_j e_j N^-j`. The coefficients
//! `e_j` follow from `u(N) = 1 + r(N) u(N+1)`, `u = T_N / t_N`, with the
//! term ratio `r` expanded in `1/N`. `N` doubles until the smallest retained
//! correction is below tolerance.

use rug::Float;

use super::context::{PrecisionContext, Real};
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 32;
const TAIL_START_TERMS: usize = 64;
const TAIL_MAX_ORDER: usize = 120;
/// Growth (in bits) over the smallest tail contribution that marks the
/// asymptotic expansion as diverging.
const DIVERGENCE_BITS: u32 = 32;

/// A hypergeometric sum together with bookkeeping about how it was obtained.
#[derive(Debug, Clone)]
pub struct PfqSum {
    pub value: Real,
    /// Number of series terms added explicitly.
    pub terms_summed: usize,
    /// Asymptotic remainder added at `z = 1`, if any.
    pub tail: Option<Real>,
    /// Magnitude of the first neglected contribution.
    pub error_estimate: Real,
}

fn is_nonpositive_integer(x: &Real) -> bool {
    x.is_integer() && *x <= 0
}

fn validate(bottom: &[Real]) -> Result<()> {
    if let Some(b) = bottom.iter().find(|b| is_nonpositive_integer(b)) {
        return Err(Error::Domain(format!(
            "bottom parameter {} is a nonpositive integer",
            b.to_f64()
        )));
    }
    Ok(())
}

/// Multiplies `term` (the k-th term) into the (k+1)-th term in place.
fn advance(term: &mut Float, k: usize, top: &[Real], bottom: &[Real], z: &Real) {
    let w = term.prec();
    for a in top {
        *term *= Float::with_val(w, a + k as u64);
    }
    for b in bottom {
        *term /= Float::with_val(w, b + k as u64);
    }
    *term *= z;
    *term /= k as u64 + 1;
}

/// `pFq(top; bottom; z)`.
pub fn pfq(top: &[Real], bottom: &[Real], z: &Real, ctx: &PrecisionContext) -> Result<Real> {
    pfq_detailed(top, bottom, z, ctx).map(|s| s.value)
}

/// Sum of the first `n_terms` terms of `pFq(top; bottom; z)` (no tail).
pub fn pfq_partial(
    top: &[Real],
    bottom: &[Real],
    z: &Real,
    n_terms: usize,
    ctx: &PrecisionContext,
) -> Result<Real> {
    validate(bottom)?;
    let w = ctx.mantissa_bits() + GUARD_BITS;
    let mut term = Float::with_val(w, 1);
    let mut sum = Float::new(w);
    for k in 0..n_terms {
        sum += &term;
        advance(&mut term, k, top, bottom, z);
    }
    Ok(Float::with_val(ctx.mantissa_bits(), sum))
}

/// Like [`pfq`], but also reports the term count and error estimate.
pub fn pfq_detailed(
    top: &[Real],
    bottom: &[Real],
    z: &Real,
    ctx: &PrecisionContext,
) -> Result<PfqSum> {
    validate(bottom)?;
    if !z.is_finite() {
        return Err(Error::Domain("argument z must be finite".into()));
    }
    let terminating = top.iter().any(is_nonpositive_integer);
    let p = top.len();
    let q = bottom.len();
    if terminating || p <= q {
        return direct_sum(top, bottom, z, ctx);
    }
    if p > q + 1 {
        return Err(Error::Domain(format!(
            "{p}F{q} with p > q + 1 diverges for z != 0"
        )));
    }
    let abs_z = Float::with_val(z.prec(), z.abs_ref());
    if abs_z < 1 {
        return direct_sum(top, bottom, z, ctx);
    }
    if *z == 1 {
        return unit_argument_sum(top, bottom, ctx);
    }
    Err(Error::Domain(format!(
        "{p}F{q} is only summed for |z| < 1 or z = 1, got z = {}",
        z.to_f64()
    )))
}

fn direct_sum(top: &[Real], bottom: &[Real], z: &Real, ctx: &PrecisionContext) -> Result<PfqSum> {
    let w = ctx.mantissa_bits() + GUARD_BITS;
    let eps = Float::with_val(w, ctx.term_epsilon());
    let mut term = Float::with_val(w, 1);
    let mut sum = Float::with_val(w, 1);
    let mut small_run = 0;
    for k in 0..ctx.max_series_terms() {
        advance(&mut term, k, top, bottom, z);
        if term.is_zero() {
            return Ok(PfqSum {
                value: Float::with_val(ctx.mantissa_bits(), sum),
                terms_summed: k + 1,
                tail: None,
                error_estimate: Float::new(ctx.mantissa_bits()),
            });
        }
        sum += &term;
        let threshold = Float::with_val(w, sum.abs_ref()) * &eps;
        if Float::with_val(w, term.abs_ref()) < threshold {
            small_run += 1;
            if small_run == 2 {
                return Ok(PfqSum {
                    value: Float::with_val(ctx.mantissa_bits(), sum),
                    terms_summed: k + 2,
                    tail: None,
                    error_estimate: Float::with_val(ctx.mantissa_bits(), term.abs()),
                });
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series",
        iterations: ctx.max_series_terms(),
    })
}

/// Coefficients `e_0, e_1, ...` of `T_N / (N t_N) ~ Σ e_j N^-j` at `z = 1`.
fn tail_coefficients(top: &[Real], bottom: &[Real], excess: &Float, order: usize) -> Vec<Float> {
    let w = excess.prec();
    let len = order + 2;

    // ln r(N) = Σ_s ρ_s N^-s with ρ_s = (-1)^{s+1}/s (Σ a^s - 1 - Σ b^s)
    let mut rho = vec![Float::new(w); len];
    let mut top_pow: Vec<Float> = top.iter().map(|a| Float::with_val(w, a)).collect();
    let mut bottom_pow: Vec<Float> = bottom.iter().map(|b| Float::with_val(w, b)).collect();
    for (s, rho_s) in rho.iter_mut().enumerate().skip(1) {
        let mut acc = Float::with_val(w, -1);
        for (pw, a) in top_pow.iter_mut().zip(top) {
            acc += &*pw;
            *pw *= a;
        }
        for (pw, b) in bottom_pow.iter_mut().zip(bottom) {
            acc -= &*pw;
            *pw *= b;
        }
        acc /= s as u64;
        *rho_s = if s % 2 == 1 { acc } else { -acc };
    }

    // r(N) = exp(ln r) as a series in 1/N
    let mut ratio = vec![Float::new(w); len];
    ratio[0] = Float::with_val(w, 1);
    for s in 1..len {
        let mut acc = Float::new(w);
        for k in 1..=s {
            acc += Float::with_val(w, &rho[k] * &ratio[s - k]) * k as u64;
        }
        ratio[s] = acc / s as u64;
    }

    // Solve U(x) - r(x) V(x) = x order by order, where U = Σ e_j x^j and
    // V = Σ e_j x^j (1+x)^{1-j} is U evaluated at N+1.
    let mut e: Vec<Float> = Vec::with_capacity(order + 1);
    let mut shifted = vec![Float::new(w); len];
    for s in 1..len {
        let mut acc = Float::with_val(w, if s == 1 { 1 } else { 0 });
        for i in 0..=s {
            acc += Float::with_val(w, &ratio[s - i] * &shifted[i]);
        }
        let denom = Float::with_val(w, excess + (s - 1) as u64);
        let coeff = acc / denom;
        // add coeff · x^j (1+x)^{1-j} into V, j = s-1
        let j = s - 1;
        let mut binom = Float::with_val(w, 1);
        for r in 0..(len - j) {
            shifted[j + r] += Float::with_val(w, &coeff * &binom);
            binom *= 1i64 - j as i64 - r as i64;
            binom /= r as u64 + 1;
        }
        e.push(coeff);
    }
    e
}

fn unit_argument_sum(top: &[Real], bottom: &[Real], ctx: &PrecisionContext) -> Result<PfqSum> {
    let bits = ctx.mantissa_bits();
    let w = bits + GUARD_BITS;
    let mut excess = Float::new(w);
    for b in bottom {
        excess += b;
    }
    for a in top {
        excess -= a;
    }
    if excess <= 0 {
        return Err(Error::Domain(format!(
            "pFq at z = 1 needs Σb - Σa > 0, got {}",
            excess.to_f64()
        )));
    }
    let one = Float::with_val(w, 1);
    let eps = Float::with_val(w, ctx.term_epsilon());
    let coeffs = tail_coefficients(top, bottom, &excess, TAIL_MAX_ORDER);

    let mut term = Float::with_val(w, 1);
    let mut partial = Float::new(w);
    let mut summed = 0usize;
    let mut target = TAIL_START_TERMS;
    let mut last_error = Float::with_val(w, rug::float::Special::Infinity);
    while target <= ctx.max_series_terms() {
        while summed < target {
            partial += &term;
            advance(&mut term, summed, top, bottom, &one);
            summed += 1;
        }
        // term is now t_N with N = summed
        let n = Float::with_val(w, summed as u64);
        let inv_n = Float::with_val(w, n.recip_ref());
        let scale = Float::with_val(w, &term * &n);
        let tolerance = Float::with_val(w, partial.abs_ref()) * &eps;
        let mut tail = Float::new(w);
        let mut inv_power = Float::with_val(w, 1);
        let mut smallest = Float::with_val(w, rug::float::Special::Infinity);
        let mut converged = false;
        for e in &coeffs {
            let contribution = Float::with_val(w, e * &inv_power) * &scale;
            let size = Float::with_val(w, contribution.abs_ref());
            if size <= tolerance {
                last_error = size;
                converged = true;
                break;
            }
            // a single coefficient can be accidentally small, so only a
            // large rise over the smallest contribution counts as divergence
            if size > Float::with_val(w, &smallest << DIVERGENCE_BITS) {
                break;
            }
            tail += contribution;
            if size < smallest {
                smallest = size;
            }
            inv_power *= &inv_n;
        }
        if converged {
            let value = Float::with_val(bits, &partial + &tail);
            return Ok(PfqSum {
                value,
                terms_summed: summed,
                tail: Some(Float::with_val(bits, tail)),
                error_estimate: Float::with_val(bits, last_error),
            });
        }
        last_error = smallest;
        target *= 2;
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series at z = 1",
        iterations: summed,
    })
}
