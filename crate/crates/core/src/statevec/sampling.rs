use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{invalid, Error, Result};

/// Draws `shots` measurements from `probabilities` as a multinomial sample.
///
/// Counts come from a chain of conditional binomials on a ChaCha8 stream, so a
/// fixed seed gives identical counts on every platform.
pub fn sample_shots(probabilities: &[f64], shots: u64, seed: u64) -> Result<Vec<u64>> {
    if shots == 0 {
        return Err(invalid("shots must be at least 1"));
    }
    if probabilities.is_empty() || probabilities.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(invalid("probabilities must be finite and non-negative"));
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > 1e-8 {
        return Err(Error::NotNormalized(total));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; probabilities.len()];
    let mut remaining = shots;
    let mut mass_left = 1.0;
    let last = probabilities.len() - 1;
    for (i, &p) in probabilities.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i == last {
            counts[i] = remaining;
            break;
        }
        let q = if mass_left > 0.0 { (p / mass_left).clamp(0.0, 1.0) } else { 0.0 };
        let k = Binomial::new(remaining, q)
            .map_err(|e| invalid(format!("binomial draw: {e}")))?
            .sample(&mut rng);
        counts[i] = k;
        remaining -= k;
        mass_left -= p;
    }
    Ok(counts)
}
