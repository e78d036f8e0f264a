//! European call pricing from a distribution on a discrete price grid, with
//! the closed-form Black–Scholes value as benchmark.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{invalid, Error, Result};
use crate::targets::{discretize, lognormal_moments, DistributionFamily, TargetDistribution};

/// Below this Black–Scholes price a relative error is not reported.
pub const MIN_PRICE_FOR_ERROR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptionContract {
    pub spot: f64,
    pub strike: f64,
    pub rate: f64,
    pub volatility: f64,
    /// Years.
    pub maturity: f64,
}

impl OptionContract {
    pub fn new(spot: f64, strike: f64, rate: f64, volatility: f64, maturity: f64) -> Result<Self> {
        let c = Self { spot, strike, rate, volatility, maturity };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("spot", self.spot),
            ("strike", self.strike),
            ("volatility", self.volatility),
            ("maturity", self.maturity),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if !self.rate.is_finite() {
            return Err(invalid("rate must be finite"));
        }
        Ok(())
    }

    pub fn with_strike(self, strike: f64) -> Result<Self> {
        Self::new(self.spot, strike, self.rate, self.volatility, self.maturity)
    }

    pub fn discount(&self) -> f64 {
        (-self.rate * self.maturity).exp()
    }

    /// Risk-neutral log-normal law of `S_T`.
    pub fn terminal_family(&self) -> DistributionFamily {
        DistributionFamily::LogNormal {
            spot: self.spot,
            sigma: self.volatility,
            rate: self.rate,
            maturity: self.maturity,
        }
    }
}

/// Closed-form Black–Scholes price of a European call.
pub fn black_scholes_call(c: &OptionContract) -> Result<f64> {
    c.validate()?;
    let vol_t = c.volatility * c.maturity.sqrt();
    let d1 = ((c.spot / c.strike).ln() + (c.rate + 0.5 * c.volatility * c.volatility) * c.maturity) / vol_t;
    let d2 = d1 - vol_t;
    let n = Normal::standard();
    Ok(c.spot * n.cdf(d1) - c.strike * c.discount() * n.cdf(d2))
}

/// Strictly increasing, non-negative price levels `S_i`; walk position `i` maps to `S_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PriceGrid {
    levels: Vec<f64>,
}

impl PriceGrid {
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(invalid("a price grid needs at least two levels"));
        }
        if levels.iter().any(|l| !l.is_finite() || *l < 0.0) {
            return Err(invalid("price levels must be finite and non-negative"));
        }
        if levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("price levels must be strictly increasing"));
        }
        Ok(Self { levels })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.levels[1] - self.levels[0]
    }
}

/// `n_points` equally spaced levels from `max(0, m − 4s)` to `m + 4s`, where `m`
/// and `s` are the mean and standard deviation of `S_T`.
pub fn build_price_grid(contract: &OptionContract, n_points: usize) -> Result<PriceGrid> {
    contract.validate()?;
    if n_points < 2 {
        return Err(invalid(format!("n_points must be at least 2, got {n_points}")));
    }
    let (m, s) = lognormal_moments(contract.spot, contract.volatility, contract.rate, contract.maturity);
    let lo = (m - 4.0 * s).max(0.0);
    let hi = m + 4.0 * s;
    let step = (hi - lo) / (n_points - 1) as f64;
    let levels = (0..n_points)
        .map(|i| if i == n_points - 1 { hi } else { lo + i as f64 * step })
        .collect();
    PriceGrid::new(levels)
}

/// The log-normal density of `S_T` evaluated at the grid levels and renormalized.
///
/// Bins of width `spacing` are centered on the levels, so each bin midpoint is
/// exactly a price level.
pub fn lognormal_target(contract: &OptionContract, grid: &PriceGrid) -> Result<TargetDistribution> {
    let h = grid.spacing();
    let lo = grid.levels[0] - 0.5 * h;
    let hi = grid.levels[grid.len() - 1] + 0.5 * h;
    let mut target = discretize(&contract.terminal_family(), grid.len(), Some((lo, hi)))?;
    target.axes = vec![grid.levels.clone()];
    Ok(target)
}

/// `Σ P(S_i) · max(S_i − K, 0) · e^{−rT}`.
pub fn expected_call_payoff(dist: &[f64], grid: &PriceGrid, strike: f64, rate: f64, maturity: f64) -> Result<f64> {
    if dist.len() != grid.len() {
        return Err(Error::DimensionMismatch { expected: grid.len(), actual: dist.len() });
    }
    if dist.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(invalid("probabilities must be finite and non-negative"));
    }
    let total: f64 = dist.iter().sum();
    if (total - 1.0).abs() > 1e-8 {
        return Err(Error::NotNormalized(total));
    }
    let undiscounted: f64 = dist.iter().zip(&grid.levels).map(|(p, s)| p * (s - strike).max(0.0)).sum();
    Ok(undiscounted * (-rate * maturity).exp())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PriceRow {
    pub strike: f64,
    pub black_scholes: f64,
    pub simulated: f64,
    /// `100 · |BS − sim| / BS`; `None` when the analytic price is negligible.
    pub error_pct: Option<f64>,
}

/// Analytic and estimated call prices at each strike.
pub fn price_table(fitted: &[f64], grid: &PriceGrid, contract: &OptionContract, strikes: &[f64]) -> Result<Vec<PriceRow>> {
    if strikes.is_empty() {
        return Err(invalid("no strikes requested"));
    }
    strikes
        .iter()
        .map(|&k| {
            let bs = black_scholes_call(&contract.with_strike(k)?)?;
            let sim = expected_call_payoff(fitted, grid, k, contract.rate, contract.maturity)?;
            let error_pct = (bs >= MIN_PRICE_FOR_ERROR).then(|| 100.0 * (bs - sim).abs() / bs);
            Ok(PriceRow { strike: k, black_scholes: bs, simulated: sim, error_pct })
        })
        .collect()
}

pub const CSV_HEADER: &str = "strike,black_scholes,simulated,error_pct";

/// CSV with header `strike,black_scholes,simulated,error_pct`; `NA` marks a missing error.
pub fn table_to_csv(rows: &[PriceRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        let err = r.error_pct.map_or_else(|| "NA".to_string(), |e| format!("{e:.4}"));
        out.push_str(&format!("{},{:.6},{:.6},{}\n", r.strike, r.black_scholes, r.simulated, err));
    }
    out
}

/// CSV of the analytic column only, same header, empty estimator columns.
pub fn analytic_csv(contract: &OptionContract, strikes: &[f64]) -> Result<String> {
    let mut out = format!("{CSV_HEADER}\n");
    for &k in strikes {
        let bs = black_scholes_call(&contract.with_strike(k)?)?;
        out.push_str(&format!("{k},{bs:.6},,\n"));
    }
    Ok(out)
}
