use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{GameSpec, Permutation, MAX_PLAYERS};
use crate::oracle::NoiseModel;

/// Strictly convex game with pairwise interactions, evaluated lazily:
///
/// `f(S) = |S|(|S|+1)/2 + Σ_{i<j ∈ S} θ_ij`, `θ_ij ~ coef·Unif[−1, 1]`,
/// normalized by `f(N)`.
///
/// Every second difference equals `1 + θ_ij`, so the strict convexity margin
/// is `(1 + min θ) / f(N)` in closed form. Marginal contributions
/// `|S| + 1 + Σ_{j∈S} θ_ij` stay positive for `coef ≤ 1`, keeping values in
/// `[0, 1]`. Unlike [`GameSpec`] this needs no `2^n` table, so it serves
/// experiments with hundreds of players.
#[derive(Debug, Clone)]
pub struct PairwiseGame {
    n: usize,
    theta: Vec<f64>,
    total: f64,
}

impl PairwiseGame {
    pub fn generate(n: usize, coef: f64, seed: u64) -> Self {
        assert!(n >= 2, "need at least two players");
        assert!((0.0..=1.0).contains(&coef), "coef must lie in [0, 1]");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut theta = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let t = coef * (2.0 * rng.random::<f64>() - 1.0);
                theta[i * n + j] = t;
                theta[j * n + i] = t;
            }
        }
        let mut game = Self { n, theta, total: 1.0 };
        game.total = game.raw_value(0..n);
        game
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn raw_value(&self, members: impl IntoIterator<Item = usize>) -> f64 {
        let members: Vec<usize> = members.into_iter().collect();
        let k = members.len();
        let mut v = (k * (k + 1) / 2) as f64;
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                v += self.theta[i * self.n + j];
            }
        }
        v
    }

    /// Normalized `mu(S)` for an explicit member list (no duplicates).
    pub fn value(&self, members: impl IntoIterator<Item = usize>) -> f64 {
        self.raw_value(members) / self.total
    }

    pub fn marginal_vector(&self, w: &Permutation) -> Vec<f64> {
        assert_eq!(w.len(), self.n, "permutation size");
        let mut out = vec![0.0; self.n];
        let order = w.order();
        for (k, &i) in order.iter().enumerate() {
            let row = &self.theta[i * self.n..(i + 1) * self.n];
            let inter: f64 = order[..k].iter().map(|&j| row[j]).sum();
            out[i] = ((k + 1) as f64 + inter) / self.total;
        }
        out
    }

    pub fn strict_convexity_margin(&self) -> f64 {
        let mut min_theta = f64::INFINITY;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                min_theta = min_theta.min(self.theta[i * self.n + j]);
            }
        }
        (1.0 + min_theta) / self.total
    }

    /// Materializes the full reward table.
    pub fn to_table(&self) -> Result<GameSpec> {
        if self.n > MAX_PLAYERS {
            return Err(Error::PlayerCount(self.n));
        }
        let full = 1usize << self.n;
        let mut mu = vec![0.0; full];
        for mask in 1..full {
            // add the highest member to the coalition without it
            let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let rest = mask & !(1 << top);
            let row = &self.theta[top * self.n..(top + 1) * self.n];
            let inter: f64 = (0..top).filter(|j| rest >> j & 1 == 1).map(|j| row[j]).sum();
            let k = rest.count_ones() as f64;
            mu[mask] = mu[rest] + (k + 1.0 + inter) / self.total;
        }
        mu[full - 1] = 1.0;
        GameSpec::new(self.n, mu, NoiseModel::Bernoulli)
    }
}
