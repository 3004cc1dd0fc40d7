use geomin_core::analysis::{
    lagrange_error_curve, relative_error_curve, sigdigits_sweep, ConvergenceRecord,
};
use geomin_core::format::{fixed, scientific};
use geomin_core::oracle::{solve_algebraic, solve_oracle, solve_oracle_many};
use geomin_core::series::{
    hypergeometric_closed_form, lagrange_partial_sum, perturbation_partial_sum,
};
use geomin_core::{
    Error, EvenDegree, Execution, Method, MinimizerResult, PrecisionContext, Result,
};

use crate::output::OutputTable;

/// Default truncation orders when `--terms` is not given.
pub const DEFAULT_LAGRANGE_TERMS: usize = 100;
pub const DEFAULT_PERTURBATION_TERMS: usize = 60;
/// Largest precision the convergence command will raise itself to.
const MAX_AUTO_BITS: u32 = 1 << 16;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Bits needed to carry `digits` decimal digits plus `extra` bits.
pub fn bits_for_digits(digits: f64, extra: u32) -> u32 {
    (digits * LOG2_10).ceil() as u32 + extra
}

fn context(bits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(bits)
}

pub fn minimize(
    m: EvenDegree,
    method: Method,
    terms: Option<usize>,
    bits: u32,
) -> Result<MinimizerResult> {
    let ctx = context(bits)?;
    match method {
        Method::Oracle => solve_oracle(m, &ctx),
        Method::Algebraic => solve_algebraic(m, &ctx),
        Method::Hypergeometric => hypergeometric_closed_form(m, &ctx),
        Method::Lagrange => {
            Ok(lagrange_partial_sum(m, terms.unwrap_or(DEFAULT_LAGRANGE_TERMS), &ctx)?.to_result())
        }
        Method::Perturbation => {
            Ok(
                perturbation_partial_sum(m, terms.unwrap_or(DEFAULT_PERTURBATION_TERMS), &ctx)
                    .to_result(),
            )
        }
    }
}

/// `key: value` lines describing a minimizer result.
pub fn describe(result: &MinimizerResult, digits: usize) -> Vec<(&'static str, String)> {
    let mut lines = vec![
        ("m", result.m.to_string()),
        ("method", result.method.to_string()),
        ("x_m", fixed(&result.x_m, digits)),
        ("f_min", fixed(&result.f_min, digits)),
        ("residual", scientific(&result.residual(), 3)),
        ("error_estimate", scientific(&result.error_estimate, 3)),
        ("precision_bits", result.precision_bits.to_string()),
    ];
    if let Some(terms) = result.terms {
        lines.push(("terms", terms.to_string()));
    }
    lines
}

pub fn table(m_max: EvenDegree, digits: usize, bits: u32) -> Result<OutputTable> {
    let bits = bits.max(bits_for_digits(digits as f64 + 6.0, 16));
    let ctx = context(bits)?;
    let degrees = EvenDegree::range(EvenDegree::new(2)?, m_max);
    let results = solve_oracle_many(&degrees, &ctx, Execution::Parallel)?;
    let mut out = OutputTable::new(vec!["m", "x_m", "f_min"]);
    for r in &results {
        out.push(vec![
            r.m.to_string(),
            fixed(&r.x_m, digits),
            fixed(&r.f_min, digits),
        ]);
    }
    out.push(vec![
        "inf".into(),
        fixed(&ctx.real(-1), digits),
        fixed(&ctx.ratio(1, 2), digits),
    ]);
    Ok(out)
}

/// Starting precision for a convergence run: enough for the fitted error
/// floor `5 × 10^{-(2 + 0.759 n_max)}` plus 64 bits.
pub fn convergence_bits(n_max: usize, bits: u32) -> u32 {
    bits.max(bits_for_digits(2.0 + 0.759 * n_max as f64, 64))
}

/// Runs `curve`, doubling the precision while the errors fall below what
/// the current precision can resolve.
fn auto_curve(
    m: EvenDegree,
    n_max: usize,
    bits: u32,
    curve: fn(EvenDegree, usize, &PrecisionContext) -> Result<Vec<ConvergenceRecord>>,
) -> Result<Vec<ConvergenceRecord>> {
    let mut bits = bits;
    loop {
        match curve(m, n_max, &context(bits)?) {
            Err(Error::Precision(_)) if bits < MAX_AUTO_BITS => bits *= 2,
            other => return other,
        }
    }
}

pub fn convergence(
    degrees: &[EvenDegree],
    n_max: usize,
    lagrange: bool,
    bits: u32,
) -> Result<OutputTable> {
    let bits = convergence_bits(n_max, bits);
    let header = if lagrange {
        vec!["m", "n", "perturbation", "lagrange"]
    } else {
        vec!["m", "n", "perturbation"]
    };
    let mut out = OutputTable::new(header);
    for &m in degrees {
        let perturbation = auto_curve(m, n_max, bits, relative_error_curve)?;
        let lagrange = if lagrange {
            Some(auto_curve(m, n_max, bits, lagrange_error_curve)?)
        } else {
            None
        };
        for (n, record) in perturbation.iter().enumerate() {
            let mut row = vec![
                m.to_string(),
                n.to_string(),
                scientific(&record.relative_error, 5),
            ];
            if let Some(l) = &lagrange {
                row.push(scientific(&l[n].relative_error, 5));
            }
            out.push(row);
        }
    }
    Ok(out)
}

pub fn sigdigits(q: u32, m_max: EvenDegree, bits: u32) -> Result<OutputTable> {
    let ctx = context(bits)?;
    let m_min = EvenDegree::new(4)?;
    if m_max < m_min {
        return Err(Error::Domain(format!(
            "--m-max must be at least 4, got {m_max}"
        )));
    }
    let mut out = OutputTable::new(vec!["m", "n_star", "p"]);
    for r in sigdigits_sweep(q, m_min, m_max, &ctx) {
        out.push(vec![r.m.to_string(), r.n_star.to_string(), r.p.to_string()]);
    }
    Ok(out)
}
