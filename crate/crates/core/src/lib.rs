//! Risk of borrowing information through a shared likelihood.
//!
//! A binary parameter `theta` is observed through a primary datum
//! `y ~ N(theta, 1)` and a side datum `x ~ N(theta + mu, 1)`, where the
//! nuisance shift `mu` is integrated out under the analyst's prior. The crate
//! provides both Bayes rules under 0-1 loss, their exact risks when the
//! analyst's nuisance scale `s` differs from nature's scale `sigma`, a Monte
//! Carlo oracle for those risks, and sweep/plot tooling for the risk ratio.

pub mod cli;
pub mod error;
pub mod estimators;
pub mod gauss;
pub mod model;
pub mod montecarlo;
pub mod plot;
pub mod risk;

pub use error::{Error, Result};
pub use estimators::EstimatorKind;
pub use gauss::{Probability, SeededRng};
pub use model::{AnalystConfig, NatureConfig, Observation, Theta};
pub use montecarlo::MonteCarloResult;
pub use risk::{Coefficients, RiskEstimate, Spacing, SweepRow};
