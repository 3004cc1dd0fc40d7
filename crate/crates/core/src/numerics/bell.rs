use rug::{Float, Integer};

use super::context::Real;
use crate::error::{Error, Result};

/// Partial exponential Bell polynomial `B_{n,k}(x_1, ..., x_{n-k+1})`.
///
/// Evaluated with `B_{n,k} = Σ_i C(n-1, i-1) x_i B_{n-i,k-1}` over a
/// `(n+1) x (k+1)` table. The result carries the precision of `x[0]`.
pub fn bell_partial(n: usize, k: usize, x: &[Real]) -> Result<Real> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "partial Bell polynomial needs 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let needed = n - k + 1;
    if x.len() < needed {
        return Err(Error::Dimension {
            expected: needed,
            got: x.len(),
        });
    }
    let prec = x[0].prec();
    let zero = Float::new(prec);

    // table[i][j] = B_{i,j}
    let mut table = vec![vec![zero.clone(); k + 1]; n + 1];
    table[0][0] = Float::with_val(prec, 1);
    for j in 1..=k {
        for i in j..=(n - (k - j)) {
            let mut acc = zero.clone();
            for t in 1..=(i - j + 1) {
                let lower = &table[i - t][j - 1];
                if lower.is_zero() {
                    continue;
                }
                let binom = Integer::binomial_u((i - 1) as u32, (t - 1) as u32);
                acc += Float::with_val(prec, &x[t - 1] * lower) * Integer::from(binom);
            }
            table[i][j] = acc;
        }
    }
    Ok(table[n].swap_remove(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::context::PrecisionContext;
    use rug::ops::Pow;
    use rug::Rational;

    /// Brute-force oracle: enumerate set partitions of {1..n} as restricted
    /// growth strings and multiply x_{|block|} over blocks.
    fn bell_by_enumeration(n: usize, k: usize, x: &[Rational]) -> Rational {
        fn walk(
            pos: usize,
            n: usize,
            k: usize,
            rgs: &mut Vec<usize>,
            x: &[Rational],
            total: &mut Rational,
        ) {
            if pos == n {
                let blocks = rgs.iter().max().map_or(0, |b| b + 1);
                if blocks != k {
                    return;
                }
                let mut sizes = vec![0usize; blocks];
                for &b in rgs.iter() {
                    sizes[b] += 1;
                }
                let mut prod = Rational::from(1);
                for s in sizes {
                    prod *= &x[s - 1];
                }
                *total += prod;
                return;
            }
            let next = rgs.iter().max().map_or(0, |b| b + 1);
            for b in 0..=next {
                rgs.push(b);
                walk(pos + 1, n, k, rgs, x, total);
                rgs.pop();
            }
        }
        let mut total = Rational::new();
        walk(0, n, k, &mut Vec::new(), x, &mut total);
        total
    }

    #[test]
    fn small_cases() {
        let ctx = PrecisionContext::default();
        let x1 = ctx.ratio(3, 7);
        let x2 = ctx.ratio(-5, 11);
        assert_eq!(bell_partial(1, 1, std::slice::from_ref(&x1)).unwrap(), x1);
        let b32 = bell_partial(3, 2, &[x1.clone(), x2.clone()]).unwrap();
        let expected = Float::with_val(256, &x1 * &x2) * 3u32;
        assert_eq!(b32, expected);
        let b33 = bell_partial(3, 3, std::slice::from_ref(&x1)).unwrap();
        assert_eq!(b33, Float::with_val(256, (&x1).pow(3u32)));
    }

    #[test]
    fn agrees_with_enumeration() {
        let ctx = PrecisionContext::default();
        // fixed pseudo-random rationals
        let rationals: Vec<Rational> = (1..=7i64)
            .map(|i| Rational::from(((i * 37) % 23 - 11, (i * 13) % 17 + 2)))
            .collect();
        let reals: Vec<Real> = rationals.iter().map(|r| ctx.real(r)).collect();
        for n in 1..=7 {
            for k in 1..=n {
                let exact = bell_by_enumeration(n, k, &rationals);
                let value = bell_partial(n, k, &reals[..n - k + 1]).unwrap();
                let err = Float::with_val(256, &value - &ctx.real(&exact)).abs();
                let scale = ctx.real(&exact).abs().max(&ctx.real(1));
                assert!(err <= scale * ctx.pow2_neg(256 - 16), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn counts_stirling_numbers_with_unit_inputs() {
        // B_{n,k}(1,1,...) = S(n,k)
        let ctx = PrecisionContext::default();
        let ones = vec![ctx.real(1); 8];
        assert_eq!(bell_partial(5, 2, &ones).unwrap(), 15);
        assert_eq!(bell_partial(7, 3, &ones).unwrap(), 301);
        assert_eq!(bell_partial(8, 8, &ones).unwrap(), 1);
    }

    #[test]
    fn errors() {
        let ctx = PrecisionContext::default();
        let short = vec![ctx.real(1); 2];
        assert_eq!(
            bell_partial(5, 2, &short),
            Err(Error::Dimension {
                expected: 4,
                got: 2
            })
        );
        assert!(matches!(bell_partial(3, 0, &short), Err(Error::Domain(_))));
        assert!(matches!(bell_partial(2, 3, &short), Err(Error::Domain(_))));
    }
}
