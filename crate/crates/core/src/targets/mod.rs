//! Target distributions on the walk's position grid.

mod digits;
mod distribution;
mod empirical;
mod family;

pub use digits::{digit_bitmap, digit_target, GRID as DIGIT_GRID};
pub use distribution::{total_variation, TargetDistribution, TARGET_SUM_TOLERANCE};
pub use empirical::{empirical_from_returns, log_returns, parse_price_series, read_price_series};
pub use family::{discretize, lognormal_moments, DistributionFamily};
