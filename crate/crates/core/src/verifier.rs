//! Exhaustive ground truth for small games.

use crate::error::{Error, Result};
use crate::game::{all_permutations, Coalition, GameSpec};

/// Largest `n` for the factorial enumerations.
pub const MAX_ENUMERATION_PLAYERS: usize = 8;

/// Vertices closer than this in L∞ are merged.
pub const DEDUP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub is_member: bool,
    /// `max_{∅≠S⊊N} mu(S) − x(S)`.
    pub max_violation: f64,
    pub argmax: Coalition,
    /// `|x(N) − mu(N)|`.
    pub efficiency_gap: f64,
}

/// Scans all `2^n − 2` proper nonempty coalitions.
pub fn core_membership(game: &GameSpec, x: &[f64], tol: f64) -> MembershipReport {
    let n = game.n();
    assert_eq!(x.len(), n, "allocation length");
    let full = 1usize << n;
    let mu = game.table();
    let mut partial = vec![0.0f64; full];
    let mut max_violation = f64::NEG_INFINITY;
    let mut argmax = Coalition::EMPTY;
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        partial[mask] = partial[mask & (mask - 1)] + x[low];
        if mask == full - 1 {
            break;
        }
        let violation = mu[mask] - partial[mask];
        if violation > max_violation {
            max_violation = violation;
            argmax = Coalition::from_mask(mask as u32);
        }
    }
    let efficiency_gap = (partial[full - 1] - game.grand_value()).abs();
    MembershipReport {
        is_member: max_violation <= tol && efficiency_gap <= tol,
        max_violation,
        argmax,
        efficiency_gap,
    }
}

fn check_enumerable(game: &GameSpec) -> Result<()> {
    if game.n() > MAX_ENUMERATION_PLAYERS {
        return Err(Error::Config(format!(
            "enumeration limited to {MAX_ENUMERATION_PLAYERS} players, game has {}",
            game.n()
        )));
    }
    Ok(())
}

/// Distinct marginal vectors over all `n!` permutations.
pub fn core_vertices(game: &GameSpec) -> Result<Vec<Vec<f64>>> {
    check_enumerable(game)?;
    let mut out: Vec<Vec<f64>> = Vec::new();
    for w in all_permutations(game.n()) {
        let phi = game.marginal_vector(&w)?.values;
        let duplicate = out.iter().any(|v| {
            v.iter()
                .zip(&phi)
                .all(|(a, b)| (a - b).abs() <= DEDUP_TOL)
        });
        if !duplicate {
            out.push(phi);
        }
    }
    Ok(out)
}

/// Average of all `n!` marginal vectors.
pub fn shapley_value(game: &GameSpec) -> Result<Vec<f64>> {
    check_enumerable(game)?;
    let n = game.n();
    let perms = all_permutations(n);
    let mut acc = vec![0.0; n];
    for w in &perms {
        for (a, v) in acc.iter_mut().zip(game.marginal_vector(w)?.values) {
            *a += v;
        }
    }
    let count = perms.len() as f64;
    acc.iter_mut().for_each(|a| *a /= count);
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{gen_permutahedron, gen_strictly_convex, gen_unit_game};

    #[test]
    fn unit_game_equal_split_is_member() {
        let g = gen_unit_game(5);
        let r = core_membership(&g, &[0.2; 5], 1e-12);
        assert!(r.is_member);
        assert!(r.max_violation.abs() < 1e-15);
    }

    #[test]
    fn unit_game_tilted_split_violates_singleton() {
        let eps = 0.01;
        let g = gen_unit_game(4);
        let x = [0.25 + eps, 0.25 - eps, 0.25, 0.25];
        let r = core_membership(&g, &x, 1e-12);
        assert!(!r.is_member);
        assert!((r.max_violation - eps).abs() < 1e-15);
        assert!(r.argmax.contains(1) && !r.argmax.contains(0));
        assert!(r.efficiency_gap < 1e-15);
    }

    #[test]
    fn efficiency_gap_alone_fails() {
        let g = gen_unit_game(3);
        let r = core_membership(&g, &[0.5, 0.5, 0.5], 1e-12);
        assert!(!r.is_member);
        assert!((r.efficiency_gap - 0.5).abs() < 1e-15);
    }

    #[test]
    fn marginal_vectors_are_members() {
        let g = gen_strictly_convex(5, 4);
        for w in all_permutations(5) {
            let phi = g.marginal_vector(&w).unwrap();
            assert!(core_membership(&g, &phi.values, 1e-12).is_member);
        }
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(core_vertices(&gen_unit_game(4)).unwrap().len(), 1);
        let unit = &core_vertices(&gen_unit_game(4)).unwrap()[0];
        assert!(unit.iter().all(|v| (v - 0.25).abs() < 1e-15));
        assert_eq!(core_vertices(&gen_permutahedron(3)).unwrap().len(), 6);
        assert_eq!(core_vertices(&gen_strictly_convex(5, 8)).unwrap().len(), 120);
    }

    #[test]
    fn enumeration_is_capped() {
        let g = gen_unit_game(9);
        assert!(core_vertices(&g).is_err());
        assert!(shapley_value(&g).is_err());
    }

    #[test]
    fn shapley_of_symmetric_games() {
        let unit = shapley_value(&gen_unit_game(4)).unwrap();
        assert!(unit.iter().all(|v| (v - 0.25).abs() < 1e-15));
        let perm = shapley_value(&gen_permutahedron(3)).unwrap();
        assert!(perm.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15));
    }

    #[test]
    fn shapley_is_efficient_and_stable() {
        for seed in 0..5 {
            let g = gen_strictly_convex(6, seed);
            let phi = shapley_value(&g).unwrap();
            assert!((phi.iter().sum::<f64>() - 1.0).abs() < 1e-13);
            let r = core_membership(&g, &phi, 1e-12);
            assert!(r.is_member, "violation {}", r.max_violation);
        }
    }
}
