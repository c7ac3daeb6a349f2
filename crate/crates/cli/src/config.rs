//! Run configuration shared by every command.

use std::path::PathBuf;

use hypred::field::{is_prime, PRIME_LIMIT};
use hypred::poly::{Budget, DEFAULT_PAIR_BUDGET};
use serde::Serialize;

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_PRIME: u64 = 10007;
/// The second prime used for cross-prime checks.
pub const SECOND_PRIME: u64 = 31991;
/// Smallest accepted prime: the normalizations divide by 2 and the
/// sampled families need more than three field elements to be generic.
pub const MIN_PRIME: u64 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub prime: u64,
    pub format: Format,
    /// Maximum pair reductions per Gröbner computation.
    pub budget: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: DEFAULT_SEED, prime: DEFAULT_PRIME, format: Format::Json, budget: DEFAULT_PAIR_BUDGET, out: None }
    }
}

impl RunConfig {
    pub fn groebner_budget(&self) -> Budget {
        Budget::pairs(self.budget)
    }
}

/// Accept only primes in `[MIN_PRIME, 2^62)`.
pub fn validate_prime(p: u64) -> Result<u64, CliError> {
    if p < MIN_PRIME {
        return Err(CliError::Usage(format!(
            "prime {p} is too small: characteristic must be at least {MIN_PRIME} for the 1/2 normalizations"
        )));
    }
    if p >= PRIME_LIMIT {
        return Err(CliError::Usage(format!("prime {p} must be below 2^62")));
    }
    if !is_prime(p) {
        return Err(CliError::Usage(format!("{p} is not prime")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(validate_prime(10007).is_ok());
        assert!(validate_prime(5).is_ok());
        assert!(matches!(validate_prime(3), Err(CliError::Usage(_))));
        assert!(matches!(validate_prime(2), Err(CliError::Usage(_))));
        assert!(matches!(validate_prime(10005), Err(CliError::Usage(_))));
        assert!(matches!(validate_prime(1 << 62), Err(CliError::Usage(_))));
    }
}
