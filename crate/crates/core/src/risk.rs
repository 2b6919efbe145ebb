//! Closed-form Bayes risks of both decision rules.
//!
//! Writing `b = 1/s^2` and `a = -(1/s^2 + 1)/2`, the joint rule errs exactly
//! when `Z = y + b x + a` falls on the wrong side of zero. Given `theta`,
//! `Z` is normal with means `a` (theta = 0) and `1 + b + a` (theta = 1) and
//! common variance `v = 1 + b^2 sigma^2`, so
//!
//! ```text
//! R_joint = 1/2 (1 - Phi(-a / sqrt(v))) + 1/2 Phi((-1 - b - a) / sqrt(v))
//! ```
//!
//! Because `1 + b + a = -a` both error terms are equal, which collapses the
//! risk to `Phi(-(1 + b) / (2 sqrt(v)))`. The two-term form is what gets
//! reported; the one-term form is kept as a cross-check.

use crate::error::{Error, Result};
use crate::gauss::{cdf_unchecked, Probability};
use crate::model::{AnalystConfig, NatureConfig};

/// Coefficients of the reduced joint decision statistic `Z = y + b x + a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub a: f64,
    pub b: f64,
}

impl Coefficients {
    pub fn from_scale(s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::NonFinite {
                name: "s",
                value: s,
            });
        }
        if s <= 0.0 {
            return Err(Error::OutOfRange {
                name: "s",
                value: s,
                requirement: "must be positive",
            });
        }
        let b = 1.0 / (s * s);
        Ok(Self {
            a: -0.5 * (b + 1.0),
            b,
        })
    }

    /// Mean of `Z` given `theta = 1`; equals `-a`.
    pub fn upper_mean(&self) -> f64 {
        1.0 + self.b + self.a
    }

    /// Variance of `Z` given either value of `theta`.
    pub fn variance(&self, sigma: f64) -> f64 {
        1.0 + self.b * self.b * sigma * sigma
    }
}

pub fn coefficients(analyst: &AnalystConfig) -> Coefficients {
    // AnalystConfig guarantees a finite s > 0.
    Coefficients::from_scale(analyst.s()).expect("analyst scale validated at construction")
}

/// Closed-form risk of a rule at one `(s, sigma)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskEstimate {
    pub value: Probability,
    pub s: f64,
    pub sigma: f64,
}

/// One point of the risk-ratio curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub s: f64,
    pub risk_joint: Probability,
    pub risk_marginal: Probability,
    pub ratio: f64,
}

/// Grid spacing for sweeps over `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Log,
    Linear,
}

/// Risk of the rule that ignores `x`: `Phi(-1/2)`.
pub fn risk_marginal() -> Probability {
    Probability::saturating(cdf_unchecked(-0.5))
}

/// The two-term expression, evaluated term by term.
pub fn joint_risk_two_term(coef: &Coefficients, sigma: f64) -> f64 {
    let sd = coef.variance(sigma).sqrt();
    let err_theta0 = 1.0 - cdf_unchecked(-coef.a / sd);
    let err_theta1 = cdf_unchecked((-1.0 - coef.b - coef.a) / sd);
    0.5 * err_theta0 + 0.5 * err_theta1
}

/// `Phi(-(1 + b) / (2 sqrt(1 + b^2 sigma^2)))`
pub fn joint_risk_one_term(coef: &Coefficients, sigma: f64) -> f64 {
    cdf_unchecked(-(1.0 + coef.b) / (2.0 * coef.variance(sigma).sqrt()))
}

/// Exact risk of the joint rule when the analyst uses scale `s` and nature
/// uses `sigma`.
pub fn risk_joint_closed(analyst: &AnalystConfig, nature: &NatureConfig) -> RiskEstimate {
    let coef = coefficients(analyst);
    let sigma = nature.sigma();
    let value = joint_risk_two_term(&coef, sigma);
    debug_assert!(
        (value - joint_risk_one_term(&coef, sigma)).abs() <= 1e-12,
        "two-term and one-term joint risk disagree at s={}, sigma={}",
        analyst.s(),
        sigma
    );
    RiskEstimate {
        value: Probability::saturating(value),
        s: analyst.s(),
        sigma,
    }
}

/// `R_joint / R_marginal`; above one means the side datum hurt.
pub fn risk_ratio(analyst: &AnalystConfig, nature: &NatureConfig) -> f64 {
    risk_joint_closed(analyst, nature).value.value() / risk_marginal().value()
}

/// `points` values from `s_min` to `s_max` inclusive, ascending.
pub fn grid(s_min: f64, s_max: f64, points: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if !(s_min.is_finite() && s_max.is_finite()) {
        return Err(Error::Grid(format!(
            "bounds must be finite (got [{s_min}, {s_max}])"
        )));
    }
    if s_min <= 0.0 {
        return Err(Error::Grid(format!("s_min must be positive (got {s_min})")));
    }
    if s_min >= s_max {
        return Err(Error::Grid(format!(
            "s_min must be below s_max (got [{s_min}, {s_max}])"
        )));
    }
    if points < 2 {
        return Err(Error::Grid(format!(
            "need at least 2 points (got {points})"
        )));
    }
    let last = (points - 1) as f64;
    let mut values: Vec<f64> = match spacing {
        Spacing::Log => {
            let (lo, hi) = (s_min.ln(), s_max.ln());
            (0..points)
                .map(|i| (lo + (hi - lo) * i as f64 / last).exp())
                .collect()
        }
        Spacing::Linear => (0..points)
            .map(|i| s_min + (s_max - s_min) * i as f64 / last)
            .collect(),
    };
    // pin the endpoints against exp/ln rounding
    values[0] = s_min;
    values[points - 1] = s_max;
    Ok(values)
}

pub fn sweep_row(s: f64, nature: &NatureConfig) -> Result<SweepRow> {
    let analyst = AnalystConfig::permissive(s)?;
    let risk_joint = risk_joint_closed(&analyst, nature).value;
    let risk_marginal = risk_marginal();
    Ok(SweepRow {
        s,
        risk_joint,
        risk_marginal,
        ratio: risk_joint.value() / risk_marginal.value(),
    })
}

/// Closed-form risk ratio over a grid of analyst scales.
pub fn sweep(
    nature: &NatureConfig,
    s_min: f64,
    s_max: f64,
    points: usize,
    spacing: Spacing,
) -> Result<Vec<SweepRow>> {
    grid(s_min, s_max, points, spacing)?
        .into_iter()
        .map(|s| sweep_row(s, nature))
        .collect()
}

/// Grid point (log-spaced) with the smallest joint risk. The grid must
/// contain `sigma`. Ties go to the smaller `s`.
pub fn optimal_s(nature: &NatureConfig, s_min: f64, s_max: f64, points: usize) -> Result<f64> {
    let sigma = nature.sigma();
    let rows = sweep(nature, s_min, s_max, points, Spacing::Log)?;
    if !(s_min <= sigma && sigma <= s_max) {
        return Err(Error::Grid(format!(
            "grid [{s_min}, {s_max}] does not bracket sigma = {sigma}"
        )));
    }
    let best = rows
        .iter()
        .fold(None::<&SweepRow>, |best, row| match best {
            Some(b) if b.risk_joint.value() <= row.risk_joint.value() => Some(b),
            _ => Some(row),
        })
        .expect("grid has at least two points");
    Ok(best.s)
}
