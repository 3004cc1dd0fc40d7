//! Rising and falling factorials and the Pochhammer k-symbol.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::context::{PrecisionContext, Real};
use super::gamma::gamma;
use crate::error::Result;

/// `(s)_n = s (s+1) ... (s+n-1)`, with `(s)_0 = 1`.
pub fn rising_factorial(s: &Real, n: u32) -> Real {
    let mut acc = Float::with_val(s.prec(), 1);
    let mut factor = s.clone();
    for _ in 0..n {
        acc *= &factor;
        factor += 1u32;
    }
    acc
}

/// `(s)^(n) = s (s-1) ... (s-n+1)`, with `(s)^(0) = 1`.
pub fn falling_factorial(s: &Real, n: u32) -> Real {
    let mut acc = Float::with_val(s.prec(), 1);
    let mut factor = s.clone();
    for _ in 0..n {
        acc *= &factor;
        factor -= 1u32;
    }
    acc
}

/// Pochhammer k-symbol `(x)_{n,k} = x (x+k) ... (x+(n-1)k) = k^n (x/k)_n`.
pub fn k_pochhammer(x: &Real, n: u32, k: u32) -> Real {
    let mut acc = Float::with_val(x.prec(), 1);
    let mut factor = x.clone();
    for _ in 0..n {
        acc *= &factor;
        factor += k;
    }
    acc
}

/// k-gamma function `Γ_k(x) = k^(x/k - 1) Γ(x/k)` for `x > 0`.
pub fn k_gamma(x: &Real, k: u32, ctx: &PrecisionContext) -> Result<Real> {
    let bits = ctx.mantissa_bits();
    let scaled = Float::with_val(bits, x / k);
    let exponent = Float::with_val(bits, &scaled - 1u32);
    let power = ctx.real(k).pow(exponent);
    Ok(power * gamma(&scaled, ctx)?)
}

/// `n!` as a real at the given precision.
pub fn factorial(n: u32, prec: u32) -> Real {
    Float::with_val(prec, Integer::from(Integer::factorial(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::context::relative_difference;
    use proptest::prelude::*;

    #[test]
    fn rising_examples() {
        let ctx = PrecisionContext::default();
        assert_eq!(rising_factorial(&ctx.real(3), 2), 12);
        assert_eq!(rising_factorial(&ctx.real(-7.25), 0), 1);
        // (1/2)(3/2)(5/2), exact in binary
        assert_eq!(rising_factorial(&ctx.ratio(1, 2), 3), ctx.ratio(15, 8));
    }

    #[test]
    fn falling_examples() {
        let ctx = PrecisionContext::default();
        assert_eq!(falling_factorial(&ctx.real(5), 2), 20);
        for m in [2u32, 6, 12, 20] {
            assert_eq!(falling_factorial(&ctx.real(m), m), factorial(m, 256));
        }
        assert_eq!(falling_factorial(&ctx.real(4), 6), 0);
    }

    #[test]
    fn k_pochhammer_examples() {
        let ctx = PrecisionContext::default();
        assert_eq!(k_pochhammer(&ctx.real(1.75), 0, 4), 1);
        assert_eq!(k_pochhammer(&ctx.real(3), 2, 1), 12);
        assert_eq!(k_pochhammer(&ctx.real(5), 2, 3), 40);
    }

    #[test]
    fn k_pochhammer_matches_k_gamma_ratio() {
        let ctx = PrecisionContext::default();
        let tol = ctx.pow2_neg(256 - 16);
        for (x, n, k) in [
            (ctx.ratio(7, 3), 4u32, 2u32),
            (ctx.real(5), 3, 4),
            (ctx.ratio(1, 9), 6, 3),
        ] {
            let direct = k_pochhammer(&x, n, k);
            let shifted = Float::with_val(256, &x + n * k);
            let ratio = k_gamma(&shifted, k, &ctx).unwrap() / k_gamma(&x, k, &ctx).unwrap();
            assert!(relative_difference(&direct, &ratio) < tol);
        }
    }

    /// `(α)_{rn} = r^{rn} ∏_{j<r} ((α+j)/r)_n`.
    #[test]
    fn multiplication_identity() {
        let ctx = PrecisionContext::default();
        let tol = ctx.pow2_neg(256 - 16);
        let alphas = [
            ctx.ratio(1, 3),
            ctx.ratio(1, 2),
            ctx.real(2),
            ctx.ratio(7, 5),
        ];
        for alpha in &alphas {
            for r in [1u32, 2, 3, 5] {
                for n in 0..=6u32 {
                    let lhs = rising_factorial(alpha, r * n);
                    let mut rhs = ctx.real(Integer::from(r).pow(r * n));
                    for j in 0..r {
                        let arg = Float::with_val(256, alpha + j) / r;
                        rhs *= rising_factorial(&arg, n);
                    }
                    assert!(relative_difference(&lhs, &rhs) < tol, "r={r} n={n}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn k_pochhammer_is_step_product(num in -400i64..400, den in 1i64..50, n in 0u32..12, k in 1u32..9) {
            let ctx = PrecisionContext::default();
            let x = ctx.ratio(num, den);
            let mut product = ctx.real(1);
            for i in 0..n {
                product *= Float::with_val(256, &x + i * k);
            }
            let value = k_pochhammer(&x, n, k);
            let err = Float::with_val(256, &value - &product).abs();
            let scale = product.clone().abs().max(&ctx.real(1));
            prop_assert!(err <= scale * ctx.pow2_neg(256 - 16));
        }

        #[test]
        fn rising_and_falling_are_reflections(num in -300i64..300, n in 0u32..15) {
            // (s)_n = (-1)^n (-s)^(n)
            let ctx = PrecisionContext::default();
            let s = ctx.ratio(num, 7);
            let rising = rising_factorial(&s, n);
            let mut falling = falling_factorial(&Float::with_val(256, -&s), n);
            if n % 2 == 1 {
                falling = -falling;
            }
            let err = Float::with_val(256, &rising - &falling).abs();
            prop_assert!(err <= rising.abs().max(&ctx.real(1)) * ctx.pow2_neg(256 - 16));
        }
    }
}
