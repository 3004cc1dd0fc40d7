//! Series and closed-form representations of the minimizer `x_m`.

mod hypergeometric;
mod lagrange;
mod perturbation;

use std::fmt;

use rug::Float;

use crate::numerics::Real;
use crate::oracle::{Method, MinimizerResult};
use crate::polynomial::EvenDegree;

pub use hypergeometric::{
    hypergeometric_closed_form, hypergeometric_grouped, hypergeometric_parameters,
    hypergeometric_prefactor,
};
pub use lagrange::{lagrange_argument, lagrange_partial_sum, lagrange_term};
pub use perturbation::{
    leading_coefficient, perturbation_coeffs_closed, perturbation_coeffs_recurrence,
    perturbation_partial_sum, Construction, PerturbationCoefficients, PowerSeriesCoeffs,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesMethod {
    Lagrange,
    HypergeometricGrouped,
    Perturbation,
}

impl SeriesMethod {
    pub fn name(self) -> &'static str {
        match self {
            SeriesMethod::Lagrange => "lagrange",
            SeriesMethod::HypergeometricGrouped => "hypergeometric_grouped",
            SeriesMethod::Perturbation => "perturbation",
        }
    }

    fn method(self) -> Method {
        match self {
            SeriesMethod::Lagrange => Method::Lagrange,
            SeriesMethod::HypergeometricGrouped => Method::Hypergeometric,
            SeriesMethod::Perturbation => Method::Perturbation,
        }
    }
}

impl fmt::Display for SeriesMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A truncated series for `x_m` with its individual addends.
///
/// `order` is the index of the last term kept, so `terms.len() == order + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesApproximation {
    pub m: EvenDegree,
    pub method: SeriesMethod,
    pub order: usize,
    pub partial_sum: Real,
    pub terms: Vec<Real>,
}

impl SeriesApproximation {
    pub fn from_terms(m: EvenDegree, method: SeriesMethod, terms: Vec<Real>) -> Self {
        assert!(
            !terms.is_empty(),
            "a series approximation needs at least one term"
        );
        let partial_sum = sum(&terms);
        Self {
            m,
            method,
            order: terms.len() - 1,
            partial_sum,
            terms,
        }
    }

    /// Re-adds the stored terms.
    pub fn resum(&self) -> Real {
        sum(&self.terms)
    }

    /// Running sums `S_0, S_1, ..., S_order`.
    pub fn partial_sums(&self) -> Vec<Real> {
        let mut acc = Float::new(self.terms[0].prec());
        self.terms
            .iter()
            .map(|t| {
                acc += t;
                acc.clone()
            })
            .collect()
    }

    /// Packs the partial sum as a [`MinimizerResult`] whose error estimate is
    /// the Newton distance to the root of `g_m`.
    pub fn to_result(&self) -> MinimizerResult {
        let x = self.partial_sum.clone();
        let error = MinimizerResult::newton_distance(self.m, &x);
        MinimizerResult::from_estimate(
            self.m,
            x,
            self.method.method(),
            error,
            Some(self.terms.len()),
        )
    }
}

fn sum(terms: &[Real]) -> Real {
    let prec = terms.first().map_or(64, |t| t.prec());
    let mut acc = Float::new(prec);
    for t in terms {
        acc += t;
    }
    acc
}
