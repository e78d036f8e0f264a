//! `name:arg,arg,...` target specifications.

use std::path::Path;

use crate::error::{invalid, Result};
use crate::targets::{discretize, empirical_from_returns, read_price_series, DistributionFamily, TargetDistribution};

/// Parses a family spec such as `binomial:15,0.5` or `empirical:prices.txt`.
///
/// `empirical:PATH` is not a [`DistributionFamily`]; use [`build_target`] for it.
pub fn parse_family(spec: &str) -> Result<DistributionFamily> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let args = || -> Result<Vec<f64>> {
        rest.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<f64>().map_err(|_| invalid(format!("bad number {s:?} in {spec:?}"))))
            .collect()
    };
    let take = |want: usize| -> Result<Vec<f64>> {
        let a = args()?;
        if a.len() != want {
            return Err(invalid(format!("{name} takes {want} arguments, got {} in {spec:?}", a.len())));
        }
        Ok(a)
    };
    let family = match name.trim().to_ascii_lowercase().as_str() {
        "lognormal" => {
            let a = take(4)?;
            DistributionFamily::LogNormal { spot: a[0], sigma: a[1], rate: a[2], maturity: a[3] }
        }
        "beta" => {
            let a = take(2)?;
            DistributionFamily::Beta { a: a[0], b: a[1] }
        }
        "binomial" => {
            let a = take(2)?;
            if a[0] < 0.0 || a[0].fract() != 0.0 {
                return Err(invalid(format!("binomial n must be a non-negative integer, got {}", a[0])));
            }
            DistributionFamily::Binomial { n: a[0] as u64, p: a[1] }
        }
        "bimodal" => {
            let a = take(5)?;
            DistributionFamily::Bimodal { mu1: a[0], sigma1: a[1], mu2: a[2], sigma2: a[3], weight: a[4] }
        }
        "exponential" => DistributionFamily::Exponential { rate: take(1)?[0] },
        "poisson" => DistributionFamily::Poisson { mean: take(1)?[0] },
        other => return Err(invalid(format!("unknown family {other:?}"))),
    };
    family.validate()?;
    Ok(family)
}

/// The discretized target on `n_points` positions.
///
/// `empirical:PATH` reads a price series from `PATH` and bins its log returns.
pub fn build_target(spec: &str, n_points: usize, support: Option<(f64, f64)>) -> Result<TargetDistribution> {
    if let Some(path) = spec.strip_prefix("empirical:") {
        if support.is_some() {
            return Err(invalid("--support does not apply to empirical targets"));
        }
        let prices = read_price_series(Path::new(path))?;
        return empirical_from_returns(&prices, n_points);
    }
    discretize(&parse_family(spec)?, n_points, support)
}
