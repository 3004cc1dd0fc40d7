//! Ground-truth minimizers: safeguarded Newton iteration on `g_m` and the
//! algebraic values for `m = 2, 4`.

use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Real};
use crate::parallel::{self, Execution};
use crate::polynomial::{eval_f, eval_g, eval_g_prime, min_value_from_minimizer, EvenDegree};

const GUARD_BITS: u32 = 16;

/// How a minimizer value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    Lagrange,
    Hypergeometric,
    Perturbation,
    Algebraic,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Oracle,
        Method::Lagrange,
        Method::Hypergeometric,
        Method::Perturbation,
        Method::Algebraic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Lagrange => "lagrange",
            Method::Hypergeometric => "hypergeometric",
            Method::Perturbation => "perturbation",
            Method::Algebraic => "algebraic",
        }
    }

    /// Whether the method is a truncated series with a term count.
    pub fn is_series(self) -> bool {
        matches!(self, Method::Lagrange | Method::Perturbation)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// A minimizer estimate with its minimum value and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerResult {
    pub m: EvenDegree,
    pub x_m: Real,
    pub f_min: Real,
    pub method: Method,
    pub precision_bits: u32,
    /// Bound on `|x_m - true minimizer|` as reported by the method.
    pub error_estimate: Real,
    /// Number of series terms used, for truncated series.
    pub terms: Option<usize>,
}

impl MinimizerResult {
    /// Builds a result from an estimate `x`, taking `f_min` from the
    /// closed-form minimum when `x` is inside `[-1, -1/2]` and from `f_m(x)`
    /// otherwise.
    pub fn from_estimate(
        m: EvenDegree,
        x: Real,
        method: Method,
        error_estimate: Real,
        terms: Option<usize>,
    ) -> Self {
        let f_min = min_value_from_minimizer(m, &x).unwrap_or_else(|_| eval_f(m, &x));
        Self {
            m,
            precision_bits: x.prec(),
            x_m: x,
            f_min,
            method,
            error_estimate,
            terms,
        }
    }

    /// `|g_m(x_m)|`.
    pub fn residual(&self) -> Real {
        eval_g(self.m, &self.x_m).abs()
    }

    /// Newton distance `|g_m(x)/g'_m(x)|`, a first-order estimate of the
    /// distance from `x` to the true root.
    pub fn newton_distance(m: EvenDegree, x: &Real) -> Real {
        let g = eval_g(m, x);
        let gp = eval_g_prime(m, x);
        (g / gp).abs()
    }
}

/// Minimizer of `f_m` by Newton iteration on `g_m` from
/// `a_0 = -(1+2m)^{-1/m}`, falling back to bisection of `[-1, -1/2]`
/// whenever a Newton step leaves the current bracket.
pub fn solve_oracle(m: EvenDegree, ctx: &PrecisionContext) -> Result<MinimizerResult> {
    let bits = ctx.mantissa_bits();
    let w = bits + GUARD_BITS;
    let mm = m.get();

    // g(lo) < 0 <= g(hi) throughout
    let mut lo = Float::with_val(w, -1);
    let mut hi = Float::with_val(w, -0.5f64);
    if eval_g(m, &hi).is_zero() {
        return Ok(finish(m, hi, Float::new(bits), bits));
    }

    let tol_scale = Float::with_val(w, 1) >> (bits - 4);
    let mut x = -(Float::with_val(w, 2 * mm + 1).root(mm)).recip();
    if !(x > lo && x < hi) {
        x = Float::with_val(w, &lo + &hi) / 2u32;
    }
    let cap = 4 * bits as usize;
    for _ in 0..cap {
        let g = eval_g(m, &x);
        if g.is_zero() {
            return Ok(finish(m, x, Float::new(bits), bits));
        }
        if g < 0 {
            lo.clone_from(&x);
        } else {
            hi.clone_from(&x);
        }
        let tol = Float::with_val(w, x.abs_ref()).max(&Float::with_val(w, 1)) * &tol_scale;
        let width = Float::with_val(w, &hi - &lo);
        if width <= tol {
            let mid = Float::with_val(w, &lo + &hi) / 2u32;
            return Ok(finish(m, mid, width, bits));
        }

        let step = g / eval_g_prime(m, &x);
        let candidate = Float::with_val(w, &x - &step);
        if candidate > lo && candidate < hi {
            if Float::with_val(w, step.abs_ref()) <= tol {
                return Ok(finish(m, candidate, step.abs(), bits));
            }
            x = candidate;
        } else {
            x = Float::with_val(w, &lo + &hi) / 2u32;
        }
    }
    Err(Error::NonConvergence {
        what: "safeguarded Newton iteration",
        iterations: cap,
    })
}

fn finish(m: EvenDegree, x: Float, error: Float, bits: u32) -> MinimizerResult {
    let x = Float::with_val(bits, x);
    let error = Float::with_val(bits, error);
    MinimizerResult::from_estimate(m, x, Method::Oracle, error, None)
}

/// Oracle minimizers for several degrees, computed independently.
pub fn solve_oracle_many(
    degrees: &[EvenDegree],
    ctx: &PrecisionContext,
    exec: Execution,
) -> Result<Vec<MinimizerResult>> {
    parallel::try_map(exec, degrees, |&m| solve_oracle(m, ctx))
}

/// Exact algebraic minimizer for `m = 2` (`-1/2`) and `m = 4`
/// (`-(1 + ∛(5/9) (∛(9 + 4√6) - ∛(4√6 - 9))) / 4`).
pub fn solve_algebraic(m: EvenDegree, ctx: &PrecisionContext) -> Result<MinimizerResult> {
    let bits = ctx.mantissa_bits();
    let w = bits + GUARD_BITS;
    let x = match m.get() {
        2 => Float::with_val(w, -0.5f64),
        4 => {
            let four_root6 = Float::with_val(w, 6).sqrt() * 4u32;
            let plus = Float::with_val(w, &four_root6 + 9u32).cbrt();
            let minus = Float::with_val(w, &four_root6 - 9u32).cbrt();
            let scale = (Float::with_val(w, 5) / 9u32).cbrt();
            let inner = scale * (plus - minus) + 1u32;
            -inner / 4u32
        }
        other => return Err(Error::UnsupportedDegree(other)),
    };
    let x = Float::with_val(bits, x);
    let error = Float::with_val(bits, 1) >> (bits - 1);
    Ok(MinimizerResult::from_estimate(
        m,
        x,
        Method::Algebraic,
        error,
        None,
    ))
}
