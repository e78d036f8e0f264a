use std::path::Path;

use super::distribution::TargetDistribution;
use crate::error::{invalid, Error, Result};

/// Parses a newline-delimited price series. Blank lines and `#` comments are skipped.
pub fn parse_price_series(text: &str) -> Result<Vec<f64>> {
    let mut prices = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("not a decimal price: {line:?}"),
        })?;
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Parse { line: i + 1, message: format!("price must be positive, got {v}") });
        }
        prices.push(v);
    }
    Ok(prices)
}

pub fn read_price_series(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    parse_price_series(&std::fs::read_to_string(path)?)
}

/// `ln(p_{t+1} / p_t)` for consecutive prices.
pub fn log_returns(prices: &[f64]) -> Result<Vec<f64>> {
    if let Some((i, p)) = prices.iter().enumerate().find(|(_, p)| !p.is_finite() || **p <= 0.0) {
        return Err(invalid(format!("price #{i} is not a positive finite number: {p}")));
    }
    Ok(prices.windows(2).map(|w| (w[1] / w[0]).ln()).collect())
}

/// Histogram of the log-returns of `prices` over `n_bins` equal-width bins spanning
/// `[min, max]`. Labels are bin centers.
///
/// A series with a single distinct return gets a unit-wide span centered on it.
pub fn empirical_from_returns(prices: &[f64], n_bins: usize) -> Result<TargetDistribution> {
    if prices.is_empty() {
        return Err(invalid("price series is empty"));
    }
    if n_bins == 0 {
        return Err(invalid("n_bins must be at least 1"));
    }
    if prices.len() < n_bins {
        return Err(invalid(format!(
            "series has {} prices, fewer than the {n_bins} bins requested",
            prices.len()
        )));
    }
    let returns = log_returns(prices)?;
    if returns.is_empty() {
        return Err(invalid("need at least two prices to form a return"));
    }
    let min = returns.iter().copied().fold(f64::INFINITY, f64::min);
    let max = returns.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if max > min { (min, max) } else { (min - 0.5, min + 0.5) };
    let width = (hi - lo) / n_bins as f64;

    let mut counts = vec![0.0; n_bins];
    for r in &returns {
        let bin = (((r - lo) / width).floor() as usize).min(n_bins - 1);
        counts[bin] += 1.0;
    }
    let centers = (0..n_bins).map(|i| lo + (i as f64 + 0.5) * width).collect();
    TargetDistribution::from_weights("empirical log-returns", vec![n_bins], vec![centers], counts)
}
