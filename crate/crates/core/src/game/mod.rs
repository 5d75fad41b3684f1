//! Cooperative games given by explicit expected-reward tables.

mod format;
mod generators;
mod pairwise;
mod permutation;

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::NoiseModel;

pub use generators::{
    gen_convex_boundary, gen_permutahedron, gen_strictly_convex, gen_unit_game, gen_with_draws,
    CONVEX_BOUNDARY_COEF, STRICT_COEF,
};
pub use pairwise::PairwiseGame;
pub use permutation::{all_permutations, cyclic_permutations, Permutation};

/// Largest supported player count; the table holds `2^n` entries.
pub const MAX_PLAYERS: usize = 20;

/// A set of players stored as a bit mask (bit `i` ⇔ player `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_mask(mask: u32) -> Self {
        Coalition(mask)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        Coalition(members.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn grand(n: usize) -> Self {
        Coalition(((1u64 << n) - 1) as u32)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, player: usize) -> bool {
        self.0 >> player & 1 == 1
    }

    pub fn with(self, player: usize) -> Self {
        Coalition(self.0 | 1 << player)
    }

    pub fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1 << player))
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |&i| mask >> i & 1 == 1)
    }

    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Coalition::grand(n))
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Expected rewards `mu(S)` for every coalition of `n` players, plus the
/// noise model the environment uses around them.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec {
    n: usize,
    mu: Vec<f64>,
    noise: NoiseModel,
}

impl GameSpec {
    pub fn new(n: usize, mu: Vec<f64>, noise: NoiseModel) -> Result<Self> {
        if !(2..=MAX_PLAYERS).contains(&n) {
            return Err(Error::PlayerCount(n));
        }
        if mu.len() != 1 << n {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                1usize << n,
                mu.len()
            )));
        }
        if mu[0] != 0.0 {
            return Err(Error::InvalidTable(format!(
                "empty coalition must have reward 0, found {}",
                mu[0]
            )));
        }
        if let Some((mask, v)) = mu
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::InvalidTable(format!(
                "reward {v} of coalition {mask:#x} outside [0, 1]"
            )));
        }
        noise.check_support(&mu)?;
        Ok(Self { n, mu, noise })
    }

    /// Same table under a different noise model.
    pub fn with_noise(self, noise: NoiseModel) -> Result<Self> {
        Self::new(self.n, self.mu, noise)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn noise(&self) -> NoiseModel {
        self.noise
    }

    pub fn table(&self) -> &[f64] {
        &self.mu
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n)
    }

    /// `mu(N)`.
    pub fn grand_value(&self) -> f64 {
        self.mu[self.mu.len() - 1]
    }

    /// `mu(S)`; rejects coalitions naming players outside `0..n`.
    pub fn expected_reward(&self, s: Coalition) -> Result<f64> {
        if !s.fits(self.n) {
            return Err(Error::CoalitionOutOfRange {
                mask: s.mask(),
                n: self.n,
            });
        }
        Ok(self.mu[s.mask() as usize])
    }

    /// Unchecked lookup for hot loops; `s` must fit the game.
    #[inline]
    pub(crate) fn value(&self, s: Coalition) -> f64 {
        self.mu[s.mask() as usize]
    }

    /// Largest `ς` with `mu(S∪i) − mu(S) ≥ mu(C∪i) − mu(C) + ς` for all
    /// `C ⊆ S`, `i ∉ S`.
    ///
    /// Scans the pairwise form
    /// `min_{i≠j, S ⊆ N∖{i,j}} mu(S∪{i,j}) − mu(S∪j) − mu(S∪i) + mu(S)`,
    /// which is `O(n² 2^n)`. Positive certifies strict convexity, zero plain
    /// convexity, negative a violation.
    pub fn strict_convexity_margin(&self) -> f64 {
        let full = self.grand().mask();
        let mut best = f64::INFINITY;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let (bi, bj) = (1u32 << i, 1u32 << j);
                let rest = full & !bi & !bj;
                // every submask of `rest`, including 0
                let mut s = rest;
                loop {
                    let idx = s as usize;
                    let d = self.mu[idx | (bi | bj) as usize]
                        - self.mu[idx | bj as usize]
                        - self.mu[idx | bi as usize]
                        + self.mu[idx];
                    best = best.min(d);
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & rest;
                }
            }
        }
        best
    }

    /// `φ^ω_i = mu(P^ω(i)) − mu(P^ω(i) ∖ i)`.
    pub fn marginal_vector(&self, w: &Permutation) -> Result<MarginalVector> {
        if w.len() != self.n {
            return Err(Error::Dimension(format!(
                "permutation of {} players for a {}-player game",
                w.len(),
                self.n
            )));
        }
        let mut values = vec![0.0; self.n];
        let mut prefix = Coalition::EMPTY;
        for player in w.order() {
            let next = prefix.with(player);
            values[player] = self.value(next) - self.value(prefix);
            prefix = next;
        }
        Ok(MarginalVector {
            values,
            source: w.clone(),
        })
    }
}

/// The marginal vector of a permutation; a core vertex in convex games.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalVector {
    pub values: Vec<f64>,
    pub source: Permutation,
}

impl MarginalVector {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}
