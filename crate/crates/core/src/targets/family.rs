use serde::{Deserialize, Serialize};
use statrs::distribution::{
    Beta, Binomial, Continuous, Discrete, DiscreteCDF, Exp, LogNormal, Normal,
    Poisson,
};

use super::distribution::{integer_axis, TargetDistribution};
use super::digits::digit_target;
use crate::error::{invalid, Error, Result};

/// Target families the fitting loop knows how to place on a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum DistributionFamily {
    /// Terminal price `S_T` of geometric Brownian motion under the risk-neutral drift.
    LogNormal { spot: f64, sigma: f64, rate: f64, maturity: f64 },
    Beta { a: f64, b: f64 },
    Binomial { n: u64, p: f64 },
    /// `weight · N(mu1, sigma1) + (1 − weight) · N(mu2, sigma2)`.
    Bimodal { mu1: f64, sigma1: f64, mu2: f64, sigma2: f64, weight: f64 },
    Exponential { rate: f64 },
    Poisson { mean: f64 },
    /// Raw bin weights, one per grid point.
    Empirical { histogram: Vec<f64> },
    Digit { digit: u8 },
}

impl DistributionFamily {
    pub fn name(&self) -> String {
        match self {
            DistributionFamily::LogNormal { spot, sigma, rate, maturity } => {
                format!("lognormal(S={spot}, sigma={sigma}, r={rate}, T={maturity})")
            }
            DistributionFamily::Beta { a, b } => format!("beta({a}, {b})"),
            DistributionFamily::Binomial { n, p } => format!("binomial({n}, {p})"),
            DistributionFamily::Bimodal { mu1, sigma1, mu2, sigma2, weight } => {
                format!("bimodal({mu1}, {sigma1}, {mu2}, {sigma2}, {weight})")
            }
            DistributionFamily::Exponential { rate } => format!("exponential({rate})"),
            DistributionFamily::Poisson { mean } => format!("poisson({mean})"),
            DistributionFamily::Empirical { .. } => "empirical".to_string(),
            DistributionFamily::Digit { digit } => format!("digit({digit})"),
        }
    }

    pub fn is_continuous(&self) -> bool {
        matches!(
            self,
            DistributionFamily::LogNormal { .. }
                | DistributionFamily::Beta { .. }
                | DistributionFamily::Bimodal { .. }
                | DistributionFamily::Exponential { .. }
        )
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(invalid(format!("{name} must be positive and finite, got {v}")))
            }
        };
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(invalid(format!("{name} must be finite, got {v}")))
            }
        };
        match *self {
            DistributionFamily::LogNormal { spot, sigma, rate, maturity } => {
                positive("spot", spot)?;
                positive("sigma", sigma)?;
                finite("rate", rate)?;
                positive("maturity", maturity)
            }
            DistributionFamily::Beta { a, b } => {
                positive("a", a)?;
                positive("b", b)
            }
            DistributionFamily::Binomial { p, .. } => {
                if (0.0..=1.0).contains(&p) {
                    Ok(())
                } else {
                    Err(invalid(format!("binomial p must lie in [0, 1], got {p}")))
                }
            }
            DistributionFamily::Bimodal { mu1, sigma1, mu2, sigma2, weight } => {
                finite("mu1", mu1)?;
                finite("mu2", mu2)?;
                positive("sigma1", sigma1)?;
                positive("sigma2", sigma2)?;
                if (0.0..=1.0).contains(&weight) {
                    Ok(())
                } else {
                    Err(invalid(format!("bimodal weight must lie in [0, 1], got {weight}")))
                }
            }
            DistributionFamily::Exponential { rate } => positive("rate", rate),
            DistributionFamily::Poisson { mean } => positive("mean", mean),
            DistributionFamily::Empirical { ref histogram } => {
                if histogram.is_empty() || histogram.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    Err(invalid("empirical histogram must be non-empty, finite and non-negative"))
                } else if histogram.iter().sum::<f64>() <= 0.0 {
                    Err(invalid("empirical histogram has no mass"))
                } else {
                    Ok(())
                }
            }
            DistributionFamily::Digit { digit } => {
                if digit <= 9 {
                    Ok(())
                } else {
                    Err(invalid(format!("digit must be 0-9, got {digit}")))
                }
            }
        }
    }

    /// A support that covers essentially all of the family's mass.
    ///
    /// Discrete, empirical and digit families index the grid directly and
    /// return `None`.
    pub fn default_support(&self) -> Option<(f64, f64)> {
        match *self {
            DistributionFamily::LogNormal { spot, sigma, rate, maturity } => {
                let (m, s) = lognormal_moments(spot, sigma, rate, maturity);
                Some(((m - 4.0 * s).max(0.0), m + 4.0 * s))
            }
            DistributionFamily::Beta { .. } => Some((0.0, 1.0)),
            DistributionFamily::Bimodal { mu1, sigma1, mu2, sigma2, .. } => {
                Some(((mu1 - 4.0 * sigma1).min(mu2 - 4.0 * sigma2), (mu1 + 4.0 * sigma1).max(mu2 + 4.0 * sigma2)))
            }
            DistributionFamily::Exponential { rate } => Some((0.0, 8.0 / rate)),
            _ => None,
        }
    }

    fn density(&self, x: f64) -> Result<f64> {
        let err = |e: statrs::distribution::BetaError| invalid(e.to_string());
        Ok(match *self {
            DistributionFamily::LogNormal { spot, sigma, rate, maturity } => {
                if x <= 0.0 {
                    return Ok(0.0);
                }
                let location = spot.ln() + (rate - 0.5 * sigma * sigma) * maturity;
                let scale = sigma * maturity.sqrt();
                LogNormal::new(location, scale).map_err(|e| invalid(e.to_string()))?.pdf(x)
            }
            DistributionFamily::Beta { a, b } => {
                if x <= 0.0 || x >= 1.0 {
                    return Ok(0.0);
                }
                Beta::new(a, b).map_err(err)?.pdf(x)
            }
            DistributionFamily::Bimodal { mu1, sigma1, mu2, sigma2, weight } => {
                let n1 = Normal::new(mu1, sigma1).map_err(|e| invalid(e.to_string()))?;
                let n2 = Normal::new(mu2, sigma2).map_err(|e| invalid(e.to_string()))?;
                weight * n1.pdf(x) + (1.0 - weight) * n2.pdf(x)
            }
            DistributionFamily::Exponential { rate } => {
                if x < 0.0 {
                    return Ok(0.0);
                }
                Exp::new(rate).map_err(|e| invalid(e.to_string()))?.pdf(x)
            }
            _ => unreachable!("density is only defined for continuous families"),
        })
    }
}

/// Analytic mean and standard deviation of `S_T`.
pub fn lognormal_moments(spot: f64, sigma: f64, rate: f64, maturity: f64) -> (f64, f64) {
    let mean = spot * (rate * maturity).exp();
    let sd = mean * ((sigma * sigma * maturity).exp() - 1.0).sqrt();
    (mean, sd)
}

/// Places `family` on an `n_points` grid.
///
/// Continuous families are evaluated at the midpoints of `n_points` equal bins
/// on `[lo, hi]` and renormalized; `support = None` uses
/// [`DistributionFamily::default_support`]. Binomial and Poisson outcomes map
/// to indices `0..n_points`, with the upper tail folded into the last bin.
pub fn discretize(
    family: &DistributionFamily,
    n_points: usize,
    support: Option<(f64, f64)>,
) -> Result<TargetDistribution> {
    family.validate()?;
    if n_points < 2 || !n_points.is_power_of_two() {
        return Err(invalid(format!("n_points must be a power of two >= 2, got {n_points}")));
    }
    let name = family.name();
    if family.is_continuous() {
        let (lo, hi) = support
            .or_else(|| family.default_support())
            .ok_or_else(|| invalid("continuous family needs a support"))?;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(invalid(format!("support must satisfy lo < hi, got [{lo}, {hi}]")));
        }
        let width = (hi - lo) / n_points as f64;
        let centers: Vec<f64> = (0..n_points).map(|i| lo + (i as f64 + 0.5) * width).collect();
        let weights = centers.iter().map(|&x| family.density(x)).collect::<Result<Vec<_>>>()?;
        return TargetDistribution::from_weights(name, vec![n_points], vec![centers], weights);
    }

    match family {
        DistributionFamily::Binomial { n, p } => {
            let dist = Binomial::new(*p, *n).map_err(|e| invalid(e.to_string()))?;
            let weights = folded(n_points, |k| dist.pmf(k), |k| dist.sf(k));
            TargetDistribution::from_weights(name, vec![n_points], vec![integer_axis(n_points)], weights)
        }
        DistributionFamily::Poisson { mean } => {
            let dist = Poisson::new(*mean).map_err(|e| invalid(e.to_string()))?;
            let weights = folded(n_points, |k| dist.pmf(k), |k| dist.sf(k));
            TargetDistribution::from_weights(name, vec![n_points], vec![integer_axis(n_points)], weights)
        }
        DistributionFamily::Empirical { histogram } => {
            if histogram.len() != n_points {
                return Err(Error::DimensionMismatch { expected: n_points, actual: histogram.len() });
            }
            TargetDistribution::from_weights(
                name,
                vec![n_points],
                vec![integer_axis(n_points)],
                histogram.clone(),
            )
        }
        DistributionFamily::Digit { digit } => {
            if n_points != 64 {
                return Err(Error::DimensionMismatch { expected: 64, actual: n_points });
            }
            digit_target(*digit)
        }
        _ => unreachable!("continuous families handled above"),
    }
}

/// pmf on `0..n−1`, with `P(X ≥ n−1)` in the last bin.
fn folded(n: usize, pmf: impl Fn(u64) -> f64, sf: impl Fn(u64) -> f64) -> Vec<f64> {
    let last = (n - 1) as u64;
    let mut w: Vec<f64> = (0..last).map(&pmf).collect();
    // sf(k) = P(X > k)
    w.push(pmf(last) + sf(last));
    w
}
