//! Bayes decision rules under 0-1 loss.
//!
//! With a uniform prior over `theta`, the posterior mode is the value with
//! the larger likelihood. Each rule is available both as an explicit
//! log-likelihood comparison and as the reduced linear threshold actually
//! used for decisions. Exact ties resolve to [`Theta::One`].

use std::fmt;

use crate::gauss::ln_pdf;
use crate::model::{AnalystConfig, Observation, Theta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorKind {
    /// Uses `y` alone.
    MarginalY,
    /// Uses `(x, y)` through the analyst's joint likelihood.
    JointXY,
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorKind::MarginalY => f.write_str("marginal"),
            EstimatorKind::JointXY => f.write_str("joint"),
        }
    }
}

/// `log phi(y - theta)`
#[inline]
pub fn loglik_marginal(y: f64, theta: Theta) -> f64 {
    ln_pdf(y - theta.as_f64())
}

/// Analyst's log-likelihood after integrating `mu` out:
/// `log phi(y - theta) + log phi((x - theta) / s) - log s`.
#[inline]
pub fn loglik_joint(obs: &Observation, theta: Theta, analyst: &AnalystConfig) -> f64 {
    let t = theta.as_f64();
    let s = analyst.s();
    ln_pdf(obs.y - t) + ln_pdf((obs.x - t) / s) - s.ln()
}

/// Picks the larger of two log-likelihoods, ties to `One`.
#[inline]
pub fn argmax_theta(loglik_zero: f64, loglik_one: f64) -> Theta {
    Theta::from(loglik_one >= loglik_zero)
}

/// `1` iff `y >= 1/2`.
#[inline]
pub fn decide_marginal(y: f64) -> Theta {
    Theta::from(y >= 0.5)
}

/// `1` iff `y + x / s^2 >= (1 / s^2 + 1) / 2`.
#[inline]
pub fn decide_joint(obs: &Observation, analyst: &AnalystConfig) -> Theta {
    let b = 1.0 / (analyst.s() * analyst.s());
    Theta::from(obs.y + b * obs.x >= 0.5 * (b + 1.0))
}

pub fn decide(kind: EstimatorKind, obs: &Observation, analyst: &AnalystConfig) -> Theta {
    match kind {
        EstimatorKind::MarginalY => decide_marginal(obs.y),
        EstimatorKind::JointXY => decide_joint(obs, analyst),
    }
}
