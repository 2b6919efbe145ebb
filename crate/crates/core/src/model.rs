//! Generative model and the analyst's nuisance prior.

use crate::error::{ensure_finite, Error, Result};
use crate::gauss::{sample_normal, SeededRng};

/// The binary estimand. The prior is uniform over both values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theta {
    Zero,
    One,
}

impl Theta {
    pub const ALL: [Theta; 2] = [Theta::Zero, Theta::One];

    #[inline]
    pub fn as_f64(self) -> f64 {
        match self {
            Theta::Zero => 0.0,
            Theta::One => 1.0,
        }
    }
}

impl From<bool> for Theta {
    fn from(one: bool) -> Self {
        if one {
            Theta::One
        } else {
            Theta::Zero
        }
    }
}

/// Nature's data-generating process.
///
/// `sigma` is the marginal standard deviation of `x` given `theta`; the
/// nuisance shift is drawn as `mu ~ N(0, sigma^2 - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NatureConfig {
    sigma: f64,
}

impl NatureConfig {
    pub fn new(sigma: f64) -> Result<Self> {
        ensure_finite("sigma", sigma)?;
        if sigma < 1.0 {
            return Err(Error::OutOfRange {
                name: "sigma",
                value: sigma,
                requirement: "must be at least 1",
            });
        }
        Ok(Self { sigma })
    }

    #[inline]
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Standard deviation of nature's distribution over `mu`.
    pub fn mu_sd(&self) -> f64 {
        (self.sigma * self.sigma - 1.0).max(0.0).sqrt()
    }
}

/// The analyst's marginal scale for `x`, `s^2 = 1 + w^2` where `w^2` is the
/// prior variance placed on `mu`.
///
/// Strict configs require `s >= 1`. Permissive configs accept any `s > 0`;
/// `s < 1` then corresponds to no realizable prior (`w^2 < 0`) but the
/// decision rule and its risk are still well defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalystConfig {
    s: f64,
    strict: bool,
}

impl AnalystConfig {
    pub fn strict(s: f64) -> Result<Self> {
        Self::new(s, true)
    }

    pub fn permissive(s: f64) -> Result<Self> {
        Self::new(s, false)
    }

    pub fn new(s: f64, strict: bool) -> Result<Self> {
        ensure_finite("s", s)?;
        if s <= 0.0 {
            return Err(Error::OutOfRange {
                name: "s",
                value: s,
                requirement: "must be positive",
            });
        }
        if strict && s < 1.0 {
            return Err(Error::OutOfRange {
                name: "s",
                value: s,
                requirement: "must be at least 1 (prior variance s^2 - 1 must be nonnegative)",
            });
        }
        Ok(Self { s, strict })
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// `w^2 = s^2 - 1`; negative when the config is not a realizable prior.
    pub fn prior_variance(&self) -> f64 {
        self.s * self.s - 1.0
    }

    pub fn is_realizable(&self) -> bool {
        self.s >= 1.0
    }
}

/// One joint draw: side datum `x` and primary datum `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub x: f64,
    pub y: f64,
}

impl Observation {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        ensure_finite("x", x)?;
        ensure_finite("y", y)?;
        Ok(Self { x, y })
    }
}

/// Draws `theta` from its uniform prior, `mu` from nature's prior, then the
/// two data points given both.
pub fn draw_world(rng: &mut SeededRng, nature: &NatureConfig) -> (Theta, Observation) {
    let theta = Theta::from(rng.coin());
    let t = theta.as_f64();
    // Every argument below is finite with a nonnegative scale.
    let mu = sample_normal(rng, 0.0, nature.mu_sd()).expect("valid nature config");
    let y = t + rng.standard_normal();
    let x = t + mu + rng.standard_normal();
    (theta, Observation { x, y })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(NatureConfig::new(0.999).is_err());
        assert!(NatureConfig::new(f64::NAN).is_err());
        assert!(NatureConfig::new(1.0).is_ok());

        assert!(AnalystConfig::permissive(0.0).is_err());
        assert!(AnalystConfig::permissive(-2.0).is_err());
        assert!(AnalystConfig::permissive(0.3).is_ok());
        assert!(AnalystConfig::strict(0.3).is_err());
        assert!(AnalystConfig::strict(1.0).is_ok());
        assert!(AnalystConfig::strict(f64::INFINITY).is_err());

        assert!(Observation::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn prior_variance_from_scale() {
        let a = AnalystConfig::strict(2.0).unwrap();
        assert_eq!(a.prior_variance(), 3.0);
        assert!(a.is_realizable());
        let p = AnalystConfig::permissive(0.5).unwrap();
        assert!(p.prior_variance() < 0.0);
        assert!(!p.is_realizable());
    }

    #[test]
    fn sigma_one_means_no_shift() {
        let nature = NatureConfig::new(1.0).unwrap();
        assert_eq!(nature.mu_sd(), 0.0);

        let mut rng = SeededRng::new(11);
        let n = 1_000_000;
        let xs: Vec<f64> = (0..n)
            .map(|_| draw_world(&mut rng, &nature))
            .filter(|(t, _)| *t == Theta::Zero)
            .map(|(_, o)| o.x)
            .collect();
        let m = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / m;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn theta_frequency_and_y_mean() {
        let nature = NatureConfig::new(3.0).unwrap();
        let mut rng = SeededRng::new(12);
        let n = 1_000_000;
        let mut ones = 0usize;
        let mut y_sum = 0.0;
        for _ in 0..n {
            let (t, o) = draw_world(&mut rng, &nature);
            if t == Theta::One {
                ones += 1;
                y_sum += o.y;
            }
        }
        let freq = ones as f64 / n as f64;
        assert!((freq - 0.5).abs() < 0.0015, "freq {freq}");
        let y_mean = y_sum / ones as f64;
        assert!((y_mean - 1.0).abs() < 0.01, "mean {y_mean}");
    }

    #[test]
    fn x_variance_matches_sigma() {
        for sigma in [1.5, 3.0] {
            let nature = NatureConfig::new(sigma).unwrap();
            let mut rng = SeededRng::new(13);
            let xs: Vec<f64> = (0..1_000_000)
                .map(|_| draw_world(&mut rng, &nature))
                .filter(|(t, _)| *t == Theta::Zero)
                .map(|(_, o)| o.x)
                .collect();
            let m = xs.len() as f64;
            let mean = xs.iter().sum::<f64>() / m;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
            let target = sigma * sigma;
            // Normal data: SE of the sample variance is sigma^2 * sqrt(2 / (m - 1)).
            let se = target * (2.0 / (m - 1.0)).sqrt();
            assert!((var - target).abs() <= 3.0 * se, "sigma {sigma}: var {var}");
        }
    }
}
