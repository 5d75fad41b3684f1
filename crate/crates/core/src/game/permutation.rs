use std::fmt;

use crate::error::{Error, Result};
use crate::game::Coalition;

/// A bijection of the players onto arrival ranks.
///
/// `rank(i)` is the 0-based position of player `i` in the arrival order, so
/// the prefix coalition of player `i` is `{ j : rank(j) <= rank(i) }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    rank: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            rank: (0..n).collect(),
        }
    }

    /// Builds from the rank of each player.
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        check_bijection(&rank)?;
        Ok(Self { rank })
    }

    /// Builds from the players listed in arrival order.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        check_bijection(order)?;
        let mut rank = vec![0; order.len()];
        for (r, &player) in order.iter().enumerate() {
            rank[player] = r;
        }
        Ok(Self { rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, player: usize) -> usize {
        self.rank[player]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Players sorted by rank.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.rank.len()];
        for (player, &r) in self.rank.iter().enumerate() {
            order[r] = player;
        }
        order
    }

    /// The nested chain `S_1 ⊂ … ⊂ S_n = N`, `S_k` holding the `k` earliest
    /// arrivals.
    pub fn prefix_coalitions(&self) -> Vec<Coalition> {
        let mut acc = Coalition::EMPTY;
        self.order()
            .into_iter()
            .map(|player| {
                acc = acc.with(player);
                acc
            })
            .collect()
    }

    /// Swaps the players holding ranks `index` and `index + 1`.
    pub fn adjacent_transpose(&self, index: usize) -> Result<Self> {
        let n = self.rank.len();
        if index + 1 >= n {
            return Err(Error::RankOutOfRange { index, n });
        }
        let mut rank = self.rank.clone();
        for r in rank.iter_mut() {
            if *r == index {
                *r = index + 1;
            } else if *r == index + 1 {
                *r = index;
            }
        }
        Ok(Self { rank })
    }

    /// `ω` followed by its `n - 1` adjacent transpositions.
    pub fn with_adjacent_neighbours(&self) -> Vec<Self> {
        let mut out = Vec::with_capacity(self.len());
        out.push(self.clone());
        for i in 0..self.len().saturating_sub(1) {
            out.push(self.adjacent_transpose(i).expect("index < n - 1"));
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, r) in self.rank.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", r + 1)?;
        }
        write!(f, ")")
    }
}

fn check_bijection(values: &[usize]) -> Result<()> {
    let n = values.len();
    let mut seen = vec![false; n];
    for &v in values {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidPermutation(format!(
                "{values:?} is not a bijection on 0..{n}"
            )));
        }
    }
    Ok(())
}

/// The `n` rotations; rotation `k` puts player `i` at rank `(i + k) mod n`.
pub fn cyclic_permutations(n: usize) -> Vec<Permutation> {
    (0..n)
        .map(|k| Permutation {
            rank: (0..n).map(|i| (i + k) % n).collect(),
        })
        .collect()
}

/// All `n!` permutations in lexicographic order of their rank vectors.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation {
        rank: current.clone(),
    }];
    // next-permutation in lexicographic order
    while let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) {
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(Permutation {
            rank: current.clone(),
        });
    }
    out
}
