//! Error metrics, the sign-test digit count and the truncation rule `n*(q)`.

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Real};
use crate::oracle::solve_oracle;
use crate::parallel::{self, Execution};
use crate::polynomial::{eval_g_exact, EvenDegree};
use crate::series::{lagrange_partial_sum, perturbation_coeffs_closed};

/// Extra bits given to the reference solve over the series under test.
const REFERENCE_GUARD_BITS: u32 = 64;
/// Errors below `2^-(bits - FLOOR_SLACK)` are not trusted.
const FLOOR_SLACK: u32 = 16;
/// Default upper limit of the digit scan.
pub const DEFAULT_P_MAX: u32 = 200;

/// `R_m(n) = |x̃_{m,n} / x_m - 1|` for one truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub m: EvenDegree,
    pub n: usize,
    pub approx: Real,
    pub relative_error: Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigDigitsRecord {
    pub m: EvenDegree,
    pub q: u32,
    pub n_star: usize,
    pub p: u32,
}

fn reference(m: EvenDegree, ctx: &PrecisionContext) -> Result<Real> {
    Ok(solve_oracle(m, &ctx.elevated(REFERENCE_GUARD_BITS))?.x_m)
}

fn records(
    m: EvenDegree,
    sums: Vec<Real>,
    x_ref: &Real,
    ctx: &PrecisionContext,
) -> Result<Vec<ConvergenceRecord>> {
    let bits = ctx.mantissa_bits();
    let floor = ctx.pow2_neg(i64::from(bits - FLOOR_SLACK));
    sums.into_iter()
        .enumerate()
        .map(|(n, approx)| {
            let w = x_ref.prec();
            let ratio = Float::with_val(w, &approx) / x_ref;
            let relative_error = Float::with_val(bits, (ratio - 1u32).abs());
            if relative_error < floor {
                return Err(Error::Precision(format!(
                    "R_{}({n}) is below 2^-{} at {bits} bits; raise the precision",
                    m.get(),
                    bits - FLOOR_SLACK
                )));
            }
            Ok(ConvergenceRecord {
                m,
                n,
                approx,
                relative_error,
            })
        })
        .collect()
}

/// `R_m(n)` of the perturbation partial sums for `n = 0..=n_max`.
pub fn relative_error_curve(
    m: EvenDegree,
    n_max: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<ConvergenceRecord>> {
    let x_ref = reference(m, ctx)?;
    let sums = perturbation_coeffs_closed(m, n_max, ctx).partial_sums();
    records(m, sums, &x_ref, ctx)
}

/// Same as [`relative_error_curve`] for the Lagrange-inversion partial sums.
pub fn lagrange_error_curve(
    m: EvenDegree,
    n_max: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<ConvergenceRecord>> {
    let x_ref = reference(m, ctx)?;
    let sums = lagrange_partial_sum(m, n_max, ctx)?.partial_sums();
    records(m, sums, &x_ref, ctx)
}

/// `n*(q) = max{0, ceil((q - 2) / 0.759)}`, evaluated in integers.
pub fn n_star(q: u32) -> usize {
    if q <= 2 {
        return 0;
    }
    let num = u64::from(q - 2) * 1000;
    num.div_ceil(759) as usize
}

/// Checks `R_4(n) < 5 × 10^{-(2 + 0.759 n)}` for `n = 0..=n_max`.
///
/// The comparison is done on logarithms: `log10 R_4(n) < log10 5 - 2 - 0.759 n`.
pub fn empirical_bound_check(n_max: usize, ctx: &PrecisionContext) -> Result<Vec<bool>> {
    let m = EvenDegree::new(4)?;
    let curve = relative_error_curve(m, n_max, ctx)?;
    let w = ctx.mantissa_bits();
    let log5 = Float::with_val(w, 5).log10();
    let slope = ctx.parse("0.759")?;
    Ok(curve
        .iter()
        .map(|r| {
            let bound = Float::with_val(w, &slope * r.n as u64);
            let bound = Float::with_val(w, &log5 - 2u32) - bound;
            Float::with_val(w, r.relative_error.log10_ref()) < bound
        })
        .collect())
}

/// Largest `p <= p_max` such that `g_m(x̃ - δ) g_m(x̃ + δ) <= 0` with
/// `δ = 5 × 10^{-(p+1)}`; 0 if even `p = 0` fails.
///
/// The sign test runs in exact rational arithmetic on the binary value of
/// `approx`. The scan goes upward from `p = 0` and stops at the first failure.
pub fn significant_digits(m: EvenDegree, approx: &Real, p_max: u32) -> u32 {
    let Some(x) = approx.to_rational() else {
        return 0;
    };
    let mut delta = Rational::from((1, 2));
    let mut best = 0;
    for p in 0..=p_max {
        let lo = eval_g_exact(m, &Rational::from(&x - &delta));
        let hi = eval_g_exact(m, &Rational::from(&x + &delta));
        if Rational::from(&lo * &hi) > 0 {
            break;
        }
        best = p;
        delta /= 10;
    }
    best
}

/// For each even `m` in `m_min..=m_max`, the digits achieved by the
/// perturbation partial sum truncated at `n*(q)`.
pub fn sigdigits_sweep(
    q: u32,
    m_min: EvenDegree,
    m_max: EvenDegree,
    ctx: &PrecisionContext,
) -> Vec<SigDigitsRecord> {
    sigdigits_sweep_with(Execution::default(), q, m_min, m_max, ctx)
}

pub fn sigdigits_sweep_with(
    exec: Execution,
    q: u32,
    m_min: EvenDegree,
    m_max: EvenDegree,
    ctx: &PrecisionContext,
) -> Vec<SigDigitsRecord> {
    let n = n_star(q);
    let degrees = EvenDegree::range(m_min, m_max);
    parallel::map(exec, &degrees, |&m| {
        let approx = perturbation_coeffs_closed(m, n, ctx).partial_sum(n);
        SigDigitsRecord {
            m,
            q,
            n_star: n,
            p: significant_digits(m, &approx, DEFAULT_P_MAX),
        }
    })
}
