//! The stochastic environment: one noisy reward per coalition query.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{Coalition, GameSpec};

/// Reward distribution around `mu(S)`. Both variants have mean exactly
/// `mu(S)` and support inside `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum NoiseModel {
    /// Reward in `{0, 1}` with `P(1) = mu(S)`.
    #[default]
    Bernoulli,
    /// `mu(S) + Unif[−radius, radius]`; radius 0 gives a noise-free oracle.
    BoundedUniform { radius: f64 },
}

impl NoiseModel {
    /// Rejects uniform noise whose support leaves `[0, 1]` for some
    /// nonempty coalition.
    pub(crate) fn check_support(&self, mu: &[f64]) -> Result<()> {
        let NoiseModel::BoundedUniform { radius } = *self else {
            return Ok(());
        };
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::Config(format!("uniform radius {radius} must be finite and ≥ 0")));
        }
        for (mask, &mean) in mu.iter().enumerate().skip(1) {
            if mean - radius < 0.0 || mean + radius > 1.0 {
                return Err(Error::NoiseSupport {
                    radius,
                    mask: mask as u32,
                    mean,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseModel::Bernoulli => write!(f, "bernoulli"),
            NoiseModel::BoundedUniform { radius } => write!(f, "uniform:{radius}"),
        }
    }
}

impl FromStr for NoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "bernoulli" {
            return Ok(NoiseModel::Bernoulli);
        }
        if let Some(radius) = s.strip_prefix("uniform:") {
            let radius: f64 = radius
                .parse()
                .map_err(|e| Error::Config(format!("bad uniform radius {radius:?}: {e}")))?;
            if !(radius >= 0.0 && radius.is_finite()) {
                return Err(Error::Config(format!("uniform radius {radius} must be finite and ≥ 0")));
            }
            return Ok(NoiseModel::BoundedUniform { radius });
        }
        Err(Error::Config(format!(
            "unknown noise model {s:?} (expected `bernoulli` or `uniform:<a>`)"
        )))
    }
}

/// Answers coalition queries with independent draws and counts them.
#[derive(Debug, Clone)]
pub struct BanditOracle<'a> {
    game: &'a GameSpec,
    rng: ChaCha8Rng,
    total_queries: u64,
}

impl<'a> BanditOracle<'a> {
    pub fn new(game: &'a GameSpec, seed: u64) -> Self {
        Self {
            game,
            rng: ChaCha8Rng::seed_from_u64(seed),
            total_queries: 0,
        }
    }

    pub fn game(&self) -> &'a GameSpec {
        self.game
    }

    pub fn n(&self) -> usize {
        self.game.n()
    }

    /// `mu(N)`, which the learner is allowed to know.
    pub fn grand_value(&self) -> f64 {
        self.game.grand_value()
    }

    /// One reward for `s`. The empty coalition returns 0 without sampling.
    pub fn query(&mut self, s: Coalition) -> Result<f64> {
        if !s.fits(self.game.n()) {
            return Err(Error::CoalitionOutOfRange {
                mask: s.mask(),
                n: self.game.n(),
            });
        }
        Ok(self.draw(s))
    }

    #[inline]
    pub(crate) fn draw(&mut self, s: Coalition) -> f64 {
        if s.is_empty() {
            return 0.0;
        }
        self.total_queries += 1;
        let mean = self.game.value(s);
        match self.game.noise() {
            NoiseModel::Bernoulli => {
                if self.rng.random::<f64>() < mean {
                    1.0
                } else {
                    0.0
                }
            }
            NoiseModel::BoundedUniform { radius } => {
                if radius == 0.0 {
                    mean
                } else {
                    mean + radius * (2.0 * self.rng.random::<f64>() - 1.0)
                }
            }
        }
    }

    pub fn sample_count(&self) -> u64 {
        self.total_queries
    }
}
