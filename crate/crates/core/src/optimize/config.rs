use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::nelder_mead::SimplexOptions;
use crate::error::{Error, Result};

/// Multi-start settings shared by every optimizer entry point.
///
/// Read from TOML with every key optional:
///
/// ```toml
/// restarts = 32
/// max_iterations = 5000
/// tolerance = 1e-13
/// symmetric_parties = true
/// seed = 20240101
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizationConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub symmetric_parties: bool,
    pub seed: u64,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        OptimizationConfig {
            restarts: 32,
            max_iterations: 5000,
            tolerance: 1e-13,
            symmetric_parties: true,
            seed: 0x5eed,
        }
    }
}

impl OptimizationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Invalid("restarts must be at least 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Invalid(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: OptimizationConfig =
            toml::from_str(text).map_err(|e| Error::Invalid(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain struct serializes")
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_symmetric(mut self, symmetric: bool) -> Self {
        self.symmetric_parties = symmetric;
        self
    }

    pub(crate) fn simplex(&self) -> SimplexOptions {
        SimplexOptions {
            max_iterations: self.max_iterations,
            ftol: self.tolerance,
            ..SimplexOptions::default()
        }
    }

    /// Independent stream per restart, so results do not depend on scheduling.
    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip_and_defaults() {
        let c = OptimizationConfig::default().with_seed(9);
        assert_eq!(OptimizationConfig::from_toml(&c.to_toml()).unwrap(), c);
        let partial = OptimizationConfig::from_toml("restarts = 4\n").unwrap();
        assert_eq!(partial.restarts, 4);
        assert_eq!(partial.seed, OptimizationConfig::default().seed);
    }

    #[test]
    fn invalid_configs() {
        assert!(OptimizationConfig::from_toml("restarts = 0").is_err());
        assert!(OptimizationConfig::from_toml("tolerance = -1.0").is_err());
        assert!(OptimizationConfig::from_toml("restart = 3").is_err());
    }
}
