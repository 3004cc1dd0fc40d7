//! Perturbation series `x_m = Σ_k a_k`.
//!
//! The root of `x^m (2 - (1+x)ε + 1/m) - 1/m` is expanded as
//! `x(ε) = Σ a_k ε^k`; at `ε = 1` this is the minimizer. Writing
//! `x(ε)^p = Σ c_{k,p} ε^k`, matching powers of `ε` gives
//! `a_0 = -(1+2m)^{-1/m}` and
//! `(1+2m) c_{k,m} = m (c_{k-1,m} + c_{k-1,m+1})` for `k >= 1`.
//!
//! The coefficients also have the closed form
//! `a_k = Σ_{ℓ=0}^{k} (ℓ+m+1)_{k-1,m} / (ℓ! (k-ℓ)!) · a_0^{mk+ℓ+1}`,
//! where `(x)_{n,m}` is the Pochhammer k-symbol with step `m`.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::{SeriesApproximation, SeriesMethod};
use crate::error::{Error, Result};
use crate::numerics::{
    bell_partial, factorial, falling_factorial, k_pochhammer, PrecisionContext, Real,
};
use crate::polynomial::EvenDegree;

const GUARD_BITS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Recurrence,
    ClosedForm,
}

/// Coefficients `a_0..=a_n` of the perturbation series, computed once and
/// reused for every partial sum.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationCoefficients {
    pub m: EvenDegree,
    pub a: Vec<Real>,
    pub construction: Construction,
}

impl PerturbationCoefficients {
    /// Highest coefficient index available.
    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    /// `x̃_{m,n} = a_0 + ... + a_n`.
    pub fn partial_sum(&self, n: usize) -> Real {
        let mut acc = Float::new(self.a[0].prec());
        for a in &self.a[..=n] {
            acc += a;
        }
        acc
    }

    /// Running sums `x̃_{m,0}, ..., x̃_{m,order}`.
    pub fn partial_sums(&self) -> Vec<Real> {
        let mut acc = Float::new(self.a[0].prec());
        self.a
            .iter()
            .map(|a| {
                acc += a;
                acc.clone()
            })
            .collect()
    }

    pub fn approximation(&self, n: usize) -> SeriesApproximation {
        SeriesApproximation::from_terms(self.m, SeriesMethod::Perturbation, self.a[..=n].to_vec())
    }
}

/// `a_0 = -(1+2m)^{-1/m}`.
pub fn leading_coefficient(m: EvenDegree, prec: u32) -> Real {
    let mm = m.get();
    -Float::with_val(prec, 2 * mm + 1).root(mm).recip()
}

/// Coefficients from the closed form.
///
/// The sum over `ℓ` alternates in sign and cancels more as `k` grows, so each
/// `a_k` is recomputed with extra bits whenever the cancellation eats into
/// the guard bits.
pub fn perturbation_coeffs_closed(
    m: EvenDegree,
    n: usize,
    ctx: &PrecisionContext,
) -> PerturbationCoefficients {
    let bits = ctx.mantissa_bits();
    let mut a = Vec::with_capacity(n + 1);
    a.push(leading_coefficient(m, bits));
    let mut w = bits + GUARD_BITS;
    let mut a0 = leading_coefficient(m, w);
    for k in 1..=n {
        loop {
            let (value, lost) = closed_coefficient(m, k, &a0);
            if lost + 8 <= w - bits {
                a.push(Float::with_val(bits, value));
                break;
            }
            w = bits + lost + GUARD_BITS;
            a0 = leading_coefficient(m, w);
        }
    }
    PerturbationCoefficients {
        m,
        a,
        construction: Construction::ClosedForm,
    }
}

/// `a_k` at the precision of `a0`, with the number of bits lost to
/// cancellation, `log2(Σ|terms| / |sum|)`.
fn closed_coefficient(m: EvenDegree, k: usize, a0: &Float) -> (Float, u32) {
    let w = a0.prec();
    let mm = m.get();
    // a_0^{mk+ℓ+1}, starting at ℓ = 0
    let mut power = Float::with_val(w, a0.pow(mm * k as u32 + 1));
    let mut acc = Float::new(w);
    let mut magnitude = Float::new(w);
    for l in 0..=k {
        let start = Float::with_val(w, l as u64 + u64::from(mm) + 1);
        let poch = k_pochhammer(&start, (k - 1) as u32, mm);
        let denom = Integer::from(Integer::factorial(l as u32))
            * Integer::from(Integer::factorial((k - l) as u32));
        let term = poch * &power / denom;
        magnitude += Float::with_val(w, term.abs_ref());
        acc += term;
        power *= a0;
    }
    let lost = match (magnitude.get_exp(), acc.get_exp()) {
        (Some(big), Some(small)) => (big - small).max(0) as u32 + 1,
        _ => 0,
    };
    (acc, lost)
}

/// `c_{k,p}` for one new `k` from `c_{k,p} = (1/(a_0 k)) Σ_{ℓ=1}^{k} ((p+1)ℓ - k) a_ℓ c_{k-ℓ,p}`,
/// using `a[1..=k]` (entries past `a.len()` count as zero).
fn power_coefficient(a: &[Float], c: &[Float], p: u32, k: usize) -> Float {
    let w = a[0].prec();
    let mut acc = Float::new(w);
    for l in 1..=k.min(a.len() - 1) {
        let weight = (i64::from(p) + 1) * l as i64 - k as i64;
        if weight == 0 {
            continue;
        }
        acc += Float::with_val(w, &a[l] * &c[k - l]) * weight;
    }
    acc / (Float::with_val(w, &a[0]) * k as u64)
}

/// Coefficients from the order-by-order recurrence.
///
/// At order `k`, `c_{k,m} = m a_0^{m-1} a_k + r_k` where `r_k` is the value
/// of the power recurrence with `a_k` set to zero; this isolates `a_k`.
pub fn perturbation_coeffs_recurrence(
    m: EvenDegree,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<PerturbationCoefficients> {
    let bits = ctx.mantissa_bits();
    let w = bits + GUARD_BITS;
    let mm = m.get();
    let a0 = leading_coefficient(m, w);
    if a0.is_zero() {
        return Err(Error::Domain("leading coefficient vanished".into()));
    }
    let linear = Float::with_val(w, (&a0).pow(mm - 1)) * mm;
    let mut a: Vec<Float> = vec![a0.clone()];
    let mut c_m = vec![Float::with_val(w, (&a0).pow(mm))];
    let mut c_m1 = vec![Float::with_val(w, (&a0).pow(mm + 1))];
    for k in 1..=n {
        // a holds a_0..a_{k-1}, so this is r_k
        let remainder = power_coefficient(&a, &c_m, mm, k);
        let target = Float::with_val(w, &c_m[k - 1] + &c_m1[k - 1]) * mm / (2 * mm + 1);
        let ak = (target - &remainder) / &linear;
        c_m.push(remainder + Float::with_val(w, &linear * &ak));
        a.push(ak);
        c_m1.push(power_coefficient(&a, &c_m1, mm + 1, k));
    }
    Ok(PerturbationCoefficients {
        m,
        a: a.into_iter().map(|v| Float::with_val(bits, v)).collect(),
        construction: Construction::Recurrence,
    })
}

/// `x̃_{m,n} = Σ_{k=0}^{n} a_k` with closed-form coefficients.
pub fn perturbation_partial_sum(
    m: EvenDegree,
    n: usize,
    ctx: &PrecisionContext,
) -> SeriesApproximation {
    perturbation_coeffs_closed(m, n, ctx).approximation(n)
}

/// Coefficients `c_{0,p}, c_{1,p}, ...` of the `p`-th power of a power series.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeriesCoeffs {
    pub p: u32,
    pub c: Vec<Real>,
}

impl PowerSeriesCoeffs {
    /// `c_{k,p}` for `k < a.len()` by the power recurrence.
    pub fn by_recurrence(a: &[Real], p: u32) -> Result<Self> {
        check_series(a, p)?;
        let mut c = vec![Float::with_val(a[0].prec(), (&a[0]).pow(p))];
        for k in 1..a.len() {
            let next = power_coefficient(a, &c, p, k);
            c.push(next);
        }
        Ok(Self { p, c })
    }

    /// `c_{k,p}` by Faà di Bruno:
    /// `c_{k,p} = (1/k!) Σ_{ℓ=1}^{k} (p)^(ℓ) a_0^{p-ℓ} B_{k,ℓ}(1! a_1, 2! a_2, ...)`.
    pub fn by_bell(a: &[Real], p: u32) -> Result<Self> {
        check_series(a, p)?;
        let prec = a[0].prec();
        let scaled: Vec<Float> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, aj)| Float::with_val(prec, aj * Integer::from(Integer::factorial(j as u32))))
            .collect();
        let p_real = Float::with_val(prec, p);
        let mut c = vec![Float::with_val(prec, (&a[0]).pow(p))];
        for k in 1..a.len() {
            let mut acc = Float::new(prec);
            for l in 1..=k {
                let falling = falling_factorial(&p_real, l as u32);
                if falling.is_zero() {
                    continue;
                }
                let power = Float::with_val(prec, (&a[0]).pow(i64::from(p) as i32 - l as i32));
                let bell = bell_partial(k, l, &scaled[..k - l + 1])?;
                acc += falling * power * bell;
            }
            c.push(acc / factorial(k as u32, prec));
        }
        Ok(Self { p, c })
    }
}

fn check_series(a: &[Real], p: u32) -> Result<()> {
    if p == 0 {
        return Err(Error::Domain("power must be positive".into()));
    }
    match a.first() {
        None => Err(Error::Dimension {
            expected: 1,
            got: 0,
        }),
        Some(a0) if a0.is_zero() => Err(Error::Domain("power recurrence needs a_0 != 0".into())),
        Some(_) => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::relative_difference;
    use crate::oracle::solve_oracle;

    fn deg(m: u32) -> EvenDegree {
        EvenDegree::new(m).unwrap()
    }

    fn close(a: &Real, b: &Real, slack: i64) -> bool {
        let bits = i64::from(a.prec().min(b.prec()));
        let err = Float::with_val(a.prec(), a - b).abs();
        let mut scale = Float::with_val(a.prec(), b.abs_ref());
        if scale.is_zero() {
            scale += 1u32;
        }
        err <= scale * (Float::with_val(a.prec(), 1) >> (bits - slack) as u32)
    }

    #[test]
    fn leading_coefficient_values() {
        let ctx = PrecisionContext::default();
        let c = perturbation_coeffs_closed(deg(2), 0, &ctx);
        assert_eq!(c.a.len(), 1);
        let expected = -ctx.real(5).sqrt().recip();
        assert!(close(&c.a[0], &expected, 4));
        assert!((c.a[0].to_f64() + 0.4472135955).abs() < 1e-10);
    }

    #[test]
    fn first_order_coefficient() {
        // a_1 = a_0^{m+1} + a_0^{m+2}
        let ctx = PrecisionContext::default();
        for m in [2, 4, 12] {
            let c = perturbation_coeffs_closed(deg(m), 1, &ctx);
            let a0 = &c.a[0];
            let expected =
                Float::with_val(256, a0.pow(m + 1)) + Float::with_val(256, a0.pow(m + 2));
            assert!(close(&c.a[1], &expected, 8));
        }
    }

    #[test]
    fn constructions_agree() {
        let ctx = PrecisionContext::default();
        for m in [2, 4, 6, 10, 20] {
            let closed = perturbation_coeffs_closed(deg(m), 20, &ctx);
            let rec = perturbation_coeffs_recurrence(deg(m), 20, &ctx).unwrap();
            assert_eq!(rec.construction, Construction::Recurrence);
            for k in 0..=20 {
                assert!(close(&rec.a[k], &closed.a[k], 24), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn power_coefficients_start_with_a0_power() {
        let ctx = PrecisionContext::default();
        let coeffs = perturbation_coeffs_closed(deg(4), 6, &ctx);
        for p in [1u32, 4, 5, 9] {
            let c = PowerSeriesCoeffs::by_recurrence(&coeffs.a, p).unwrap();
            assert_eq!(c.c[0], Float::with_val(256, (&coeffs.a[0]).pow(p)));
            if p == 1 {
                for (ck, ak) in c.c.iter().zip(&coeffs.a) {
                    assert!(close(ck, ak, 8));
                }
            }
        }
    }

    #[test]
    fn bell_form_matches_recurrence() {
        let ctx = PrecisionContext::default();
        for m in [2, 4, 6] {
            let coeffs = perturbation_coeffs_closed(deg(m), 6, &ctx);
            for p in [m, m + 1, 3] {
                let rec = PowerSeriesCoeffs::by_recurrence(&coeffs.a, p).unwrap();
                let bell = PowerSeriesCoeffs::by_bell(&coeffs.a, p).unwrap();
                for k in 0..=6 {
                    assert!(close(&bell.c[k], &rec.c[k], 24), "m={m} p={p} k={k}");
                }
            }
        }
    }

    #[test]
    fn power_series_of_known_function() {
        // (1 + ε)^3 = 1 + 3ε + 3ε² + ε³
        let ctx = PrecisionContext::default();
        let a = vec![
            ctx.real(1),
            ctx.real(1),
            ctx.real(0),
            ctx.real(0),
            ctx.real(0),
        ];
        for c in [
            PowerSeriesCoeffs::by_recurrence(&a, 3).unwrap(),
            PowerSeriesCoeffs::by_bell(&a, 3).unwrap(),
        ] {
            let v: Vec<f64> = c.c.iter().map(Float::to_f64).collect();
            assert_eq!(v, vec![1.0, 3.0, 3.0, 1.0, 0.0]);
        }
        assert!(PowerSeriesCoeffs::by_recurrence(&[ctx.real(0)], 2).is_err());
        assert!(PowerSeriesCoeffs::by_bell(&[], 2).is_err());
    }

    #[test]
    fn perturbed_equation_is_satisfied_order_by_order() {
        // (1+2m) c_{k,m} - m (c_{k-1,m} + c_{k-1,m+1}) = 0
        let ctx = PrecisionContext::default();
        let m = 6u32;
        let coeffs = perturbation_coeffs_closed(deg(m), 15, &ctx);
        let cm = PowerSeriesCoeffs::by_recurrence(&coeffs.a, m).unwrap();
        let cm1 = PowerSeriesCoeffs::by_recurrence(&coeffs.a, m + 1).unwrap();
        // constant term: (2 + 1/m) a_0^m = 1/m
        let constant = Float::with_val(256, &cm.c[0] * (2 * m + 1)) - 1u32;
        assert!(constant.abs() < ctx.pow2_neg(240));
        for k in 1..=15 {
            let lhs = Float::with_val(256, &cm.c[k] * (2 * m + 1));
            let rhs = Float::with_val(256, &cm.c[k - 1] + &cm1.c[k - 1]) * m;
            assert!(close(&lhs, &rhs, 24), "k={k}");
        }
    }

    #[test]
    fn partial_sums() {
        let ctx = PrecisionContext::default();
        let s = perturbation_partial_sum(deg(8), 0, &ctx);
        assert_eq!(s.partial_sum, leading_coefficient(deg(8), 256));
        let coeffs = perturbation_coeffs_closed(deg(4), 30, &ctx);
        let sums = coeffs.partial_sums();
        assert_eq!(sums.len(), 31);
        assert_eq!(sums[17], coeffs.partial_sum(17));
        let approx = coeffs.approximation(11);
        assert_eq!(approx.terms.len(), 12);
        assert_eq!(approx.resum(), approx.partial_sum);
        let x4 = solve_oracle(deg(4), &ctx).unwrap().x_m;
        assert!(relative_difference(&approx.partial_sum, &x4) < 1e-10);
    }

    #[test]
    fn fast_convergence_at_m2() {
        let ctx = PrecisionContext::new(384).unwrap();
        let s = perturbation_partial_sum(deg(2), 100, &ctx);
        let r = relative_difference(&s.partial_sum, &ctx.ratio(-1, 2)).to_f64();
        assert!(r > 5.6e-64 / 2.0 && r < 5.6e-64 * 2.0, "R = {r:e}");
    }
}
