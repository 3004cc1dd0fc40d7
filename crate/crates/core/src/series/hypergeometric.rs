//! `x_m` as a finite sum of `m` hypergeometric functions at unit argument:
//!
//! `x_m = Σ_{k=1}^{m} P_k · {}_{m+2}F_{m+1}(1, {k/m + (ℓ-1)/(m+1)}_{ℓ=0..m};
//!        (m+k)/m, {(k+ℓ)/m}_{ℓ=0..m-1}; 1)`
//!
//! with `P_k = (-m)^{k-2} (1+m)^{1-(m+1)k/m} Γ((m+1)k/m - 1) / (Γ((m+k)/m) Γ(k))`.
//! Each series has parameter excess `Σb - Σa = 1/2`.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::{SeriesApproximation, SeriesMethod};
use crate::error::{Error, Result};
use crate::numerics::{gamma, pfq_detailed, PrecisionContext, Real};
use crate::oracle::{Method, MinimizerResult};
use crate::polynomial::EvenDegree;

const GUARD_BITS: u32 = 32;

fn check_index(m: EvenDegree, k: u32) -> Result<()> {
    if k == 0 || k > m.get() {
        return Err(Error::Domain(format!("term index k = {k} outside 1..={m}")));
    }
    Ok(())
}

/// Top and bottom parameter lists of the `k`-th hypergeometric function.
pub fn hypergeometric_parameters(
    m: EvenDegree,
    k: u32,
    prec: u32,
) -> Result<(Vec<Real>, Vec<Real>)> {
    check_index(m, k)?;
    let mm = i64::from(m.get());
    let k = i64::from(k);
    let rational = |num: i64, den: i64| Float::with_val(prec, &Rational::from((num, den)));
    let mut top = Vec::with_capacity(m.get() as usize + 2);
    top.push(Float::with_val(prec, 1));
    for l in 0..=mm {
        // k/m + (l-1)/(m+1)
        top.push(rational(k * (mm + 1) + (l - 1) * mm, mm * (mm + 1)));
    }
    let mut bottom = Vec::with_capacity(m.get() as usize + 1);
    bottom.push(rational(mm + k, mm));
    for l in 0..mm {
        bottom.push(rational(k + l, mm));
    }
    Ok((top, bottom))
}

/// Weight `P_k` multiplying the `k`-th hypergeometric function.
pub fn hypergeometric_prefactor(m: EvenDegree, k: u32, ctx: &PrecisionContext) -> Result<Real> {
    check_index(m, k)?;
    let bits = ctx.mantissa_bits();
    let mm = i64::from(m.get());
    let ki = i64::from(k);

    // (-m)^{k-2} as an exact signed rational
    let sign_power = if k >= 2 {
        Rational::from(Integer::from(-mm).pow(k - 2))
    } else {
        Rational::from((-1, mm))
    };
    // (m+1)k/m - 1 = ((m+1)k - m)/m
    let shifted = Float::with_val(bits, &Rational::from(((mm + 1) * ki - mm, mm)));
    let power = Float::with_val(bits, mm + 1).pow(&shifted);
    let lower = Float::with_val(bits, &Rational::from((mm + ki, mm)));
    let gammas =
        gamma(&shifted, ctx)? / (gamma(&lower, ctx)? * gamma(&Float::with_val(bits, ki), ctx)?);
    let value = Float::with_val(bits, &sign_power) * gammas / power;
    if value.is_zero() || !value.is_finite() {
        return Err(Error::Overflow(format!(
            "prefactor of hypergeometric term k = {k} (m = {m}) is not representable"
        )));
    }
    Ok(value)
}

/// The `m` weighted hypergeometric terms; their sum is `x_m`.
pub fn hypergeometric_grouped(
    m: EvenDegree,
    ctx: &PrecisionContext,
) -> Result<SeriesApproximation> {
    Ok(grouped_with_errors(m, ctx)?.0)
}

fn grouped_with_errors(
    m: EvenDegree,
    ctx: &PrecisionContext,
) -> Result<(SeriesApproximation, Real)> {
    let work = ctx.elevated(GUARD_BITS);
    let w = work.mantissa_bits();
    let one = Float::with_val(w, 1);
    let mut terms = Vec::with_capacity(m.get() as usize);
    let mut error = Float::with_val(w, 1) >> ctx.mantissa_bits();
    for k in 1..=m.get() {
        let (top, bottom) = hypergeometric_parameters(m, k, w)?;
        let series = pfq_detailed(&top, &bottom, &one, &work)?;
        let weight = hypergeometric_prefactor(m, k, &work)?;
        error += Float::with_val(w, &series.error_estimate * &weight).abs();
        terms.push(Float::with_val(ctx.mantissa_bits(), series.value * weight));
    }
    let approx = SeriesApproximation::from_terms(m, SeriesMethod::HypergeometricGrouped, terms);
    Ok((approx, Float::with_val(ctx.mantissa_bits(), error)))
}

/// `x_m` from the finite hypergeometric sum.
pub fn hypergeometric_closed_form(
    m: EvenDegree,
    ctx: &PrecisionContext,
) -> Result<MinimizerResult> {
    let (approx, error) = grouped_with_errors(m, ctx)?;
    Ok(MinimizerResult::from_estimate(
        m,
        approx.partial_sum,
        Method::Hypergeometric,
        error,
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{pfq_partial, relative_difference};
    use crate::oracle::{solve_algebraic, solve_oracle};
    use crate::series::lagrange_partial_sum;

    fn deg(m: u32) -> EvenDegree {
        EvenDegree::new(m).unwrap()
    }

    #[test]
    fn parameter_excess_is_one_half() {
        for m in [2, 4, 6, 10, 30] {
            for k in 1..=m {
                let (top, bottom) = hypergeometric_parameters(deg(m), k, 256).unwrap();
                assert_eq!(top.len() as u32, m + 2);
                assert_eq!(bottom.len() as u32, m + 1);
                let excess: Float = bottom.iter().fold(Float::new(256), |acc, b| acc + b)
                    - top.iter().fold(Float::new(256), |acc, a| acc + a);
                assert!((excess.to_f64() - 0.5).abs() < 1e-60, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn m2_parameters() {
        let (top, bottom) = hypergeometric_parameters(deg(2), 1, 256).unwrap();
        let t: Vec<f64> = top.iter().map(Float::to_f64).collect();
        let b: Vec<f64> = bottom.iter().map(Float::to_f64).collect();
        assert_eq!(t, vec![1.0, 1.0 / 6.0, 0.5, 5.0 / 6.0]);
        assert_eq!(b, vec![1.5, 0.5, 1.0]);
        assert!(hypergeometric_parameters(deg(2), 3, 256).is_err());
        assert!(hypergeometric_parameters(deg(2), 0, 256).is_err());
    }

    #[test]
    fn exact_small_cases() {
        let ctx = PrecisionContext::default();
        let x2 = hypergeometric_closed_form(deg(2), &ctx).unwrap();
        let err = Float::with_val(256, &x2.x_m + 0.5f64).abs();
        assert!(err < ctx.pow2_neg(256 - 20), "err = {}", err.to_f64());
        let x4 = hypergeometric_closed_form(deg(4), &ctx).unwrap();
        let alg = solve_algebraic(deg(4), &ctx).unwrap();
        assert!(relative_difference(&x4.x_m, &alg.x_m) < 1e-60);
    }

    #[test]
    fn agrees_with_oracle() {
        let ctx = PrecisionContext::default();
        for m in [2, 4, 6, 8, 10] {
            let h = hypergeometric_closed_form(deg(m), &ctx).unwrap();
            let o = solve_oracle(deg(m), &ctx).unwrap();
            let diff = Float::with_val(256, &h.x_m - &o.x_m).abs();
            assert!(diff < 1e-20, "m={m}: {}", diff.to_f64());
            assert!(h.error_estimate < 1e-20);
        }
    }

    /// Grouping the Lagrange terms by residue of the index mod m gives the
    /// truncated hypergeometric functions term by term.
    #[test]
    fn grouped_lagrange_terms_match_truncated_hypergeometric() {
        let ctx = PrecisionContext::default();
        for m in [2u32, 4] {
            let groups = 5usize;
            let lagrange = lagrange_partial_sum(deg(m), groups * m as usize - 1, &ctx).unwrap();
            for k in 1..=m {
                let (top, bottom) = hypergeometric_parameters(deg(m), k, 256).unwrap();
                let truncated = pfq_partial(&top, &bottom, &ctx.real(1), groups, &ctx).unwrap()
                    * hypergeometric_prefactor(deg(m), k, &ctx).unwrap();
                let mut grouped = ctx.real(0);
                for n in 0..groups {
                    grouped += &lagrange.terms[m as usize * n + k as usize - 1];
                }
                assert!(
                    relative_difference(&grouped, &truncated) < ctx.pow2_neg(256 - 24),
                    "m={m} k={k}"
                );
            }
        }
    }
}
