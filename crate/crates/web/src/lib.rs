//! wasm-bindgen exports behind `www/index.html`.
//!
//! Three operations: step a learner on a random three-player game and read
//! back a planar picture of the core, the confidence boxes and the candidate
//! point; histogram the width constant `c_W`; and compare the widths of the
//! cyclic and adjacent permutahedron vertex sets.

use core_picker::experiments::{cw_trial, derive_seed, median, CwSource};
use core_picker::game::{
    all_permutations, cyclic_permutations, gen_permutahedron, gen_strictly_convex,
};
use core_picker::geometry::{mean_point, simplex_width};
use core_picker::learner::{run_epoch, EpochState, StoppingRule};
use core_picker::verifier::core_membership;
use core_picker::{BanditOracle, GameSpec, Permutation};
use wasm_bindgen::prelude::*;

const N: usize = 3;

/// Orthonormal basis of `{x : x₁ + x₂ + x₃ = 0}`.
fn to_plane(x: &[f64]) -> [f64; 2] {
    let s2 = std::f64::consts::SQRT_2;
    let s6 = 6f64.sqrt();
    [(x[0] - x[1]) / s2, (x[0] + x[1] - 2.0 * x[2]) / s6]
}

fn flatten(points: impl IntoIterator<Item = [f64; 2]>) -> Vec<f64> {
    points.into_iter().flatten().collect()
}

/// Vertices of the hexagon `{u : Σu = 0, |u_i| ≤ b}` around `center`.
fn box_polygon(center: &[f64], b: f64) -> Vec<[f64; 2]> {
    [[1.0, -1.0, 0.0], [1.0, 0.0, -1.0], [0.0, 1.0, -1.0], [-1.0, 1.0, 0.0], [-1.0, 0.0, 1.0], [0.0, -1.0, 1.0]]
        .iter()
        .map(|d| {
            let p: Vec<f64> = center.iter().zip(d).map(|(c, s)| c + b * s).collect();
            to_plane(&p)
        })
        .collect()
}

/// Learner on a strictly convex three-player game, advanced in chunks of
/// epochs so the page can animate it.
#[wasm_bindgen]
pub struct Session {
    game: GameSpec,
    perms: Vec<Permutation>,
    state: EpochState,
    rule: StoppingRule,
    seed: u64,
    chunk: u64,
    stopped: bool,
}

#[wasm_bindgen]
impl Session {
    #[wasm_bindgen(constructor)]
    pub fn new(seed: u64, cyclic: bool) -> Session {
        let game = gen_strictly_convex(N, seed);
        let perms = if cyclic {
            cyclic_permutations(N)
        } else {
            Permutation::identity(N).with_adjacent_neighbours()
        };
        let state = EpochState::new(N, 0.1, game.grand_value(), true);
        Session {
            game,
            perms,
            state,
            rule: StoppingRule::new(),
            seed,
            chunk: 0,
            stopped: false,
        }
    }

    /// Runs up to `epochs` more epochs; returns whether the learner stopped.
    pub fn step(&mut self, epochs: u32) -> bool {
        if self.stopped {
            return true;
        }
        // one oracle stream per chunk keeps replays deterministic
        let mut oracle = BanditOracle::new(&self.game, derive_seed(self.seed, N, self.chunk, 2));
        self.chunk += 1;
        for _ in 0..epochs {
            run_epoch(&mut self.state, &mut oracle, &self.perms).expect("three permutations");
            if self.rule.check(&self.state.q, self.state.b) {
                self.stopped = true;
                break;
            }
        }
        self.stopped
    }

    pub fn epochs(&self) -> f64 {
        self.state.ep as f64
    }

    pub fn samples(&self) -> f64 {
        (self.state.ep * (N * N) as u64) as f64
    }

    pub fn radius(&self) -> f64 {
        self.state.b
    }

    pub fn stopped(&self) -> bool {
        self.stopped
    }

    /// The six core vertices ordered around the hexagon, as flat
    /// `[x0, y0, x1, y1, …]`.
    pub fn core_polygon(&self) -> Vec<f64> {
        let mut pts: Vec<[f64; 2]> = all_permutations(N)
            .iter()
            .map(|w| to_plane(&self.game.marginal_vector(w).unwrap().values))
            .collect();
        let c = [
            pts.iter().map(|p| p[0]).sum::<f64>() / 6.0,
            pts.iter().map(|p| p[1]).sum::<f64>() / 6.0,
        ];
        let angle = |p: &[f64; 2]| (p[1] - c[1]).atan2(p[0] - c[0]);
        pts.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
        flatten(pts)
    }

    /// True vertices targeted by the chosen permutations.
    pub fn targets(&self) -> Vec<f64> {
        flatten(
            self.perms
                .iter()
                .map(|w| to_plane(&self.game.marginal_vector(w).unwrap().values)),
        )
    }

    /// Current estimates; empty before the first epoch.
    pub fn estimates(&self) -> Vec<f64> {
        flatten(self.state.q.iter().map(|q| to_plane(q)))
    }

    /// Six planar vertices per confidence box, boxes concatenated.
    pub fn boxes(&self) -> Vec<f64> {
        self.state
            .q
            .iter()
            .flat_map(|q| box_polygon(q, self.state.b))
            .flatten()
            .collect()
    }

    /// Mean of the estimates; empty before the first epoch.
    pub fn candidate(&self) -> Vec<f64> {
        if self.state.q.is_empty() {
            return Vec::new();
        }
        to_plane(&mean_point(&self.state.q)).to_vec()
    }

    /// Largest core violation of the candidate (≤ 0 means inside).
    pub fn violation(&self) -> f64 {
        if self.state.q.is_empty() {
            return f64::NAN;
        }
        core_membership(&self.game, &mean_point(&self.state.q), 0.0).max_violation
    }
}

/// Counts of `c_W` values in `bins` equal bins over `[0, max)`, followed by
/// the median and the number of trials falling outside.
#[wasm_bindgen]
pub fn cw_histogram(n: usize, trials: u32, seed: u64, bins: usize, max: f64) -> Vec<f64> {
    let mut counts = vec![0.0; bins + 2];
    let mut values = Vec::with_capacity(trials as usize);
    for t in 0..trials as u64 {
        let row = cw_trial(n.max(2), t, seed, CwSource::Pairwise).expect("pairwise game");
        let k = (row.c_w / max * bins as f64).floor();
        if row.c_w >= 0.0 && k < bins as f64 {
            counts[k as usize] += 1.0;
        } else {
            counts[bins + 1] += 1.0;
        }
        values.push(row.c_w);
    }
    counts[bins] = median(&mut values).unwrap_or(f64::NAN);
    counts
}

/// `[cyclic, adjacent, n/2, 3/n]` widths of the unnormalized permutahedron.
#[wasm_bindgen]
pub fn permutahedron_widths(n: usize) -> Vec<f64> {
    let n = n.clamp(3, 12);
    let g = gen_permutahedron(n);
    let scale = (n * (n + 1) / 2) as f64;
    let width = |perms: Vec<Permutation>| {
        let pts: Vec<Vec<f64>> = perms
            .iter()
            .map(|w| g.marginal_vector(w).unwrap().values.iter().map(|v| v * scale).collect())
            .collect();
        simplex_width(&pts)
    };
    vec![
        width(cyclic_permutations(n)),
        width(Permutation::identity(n).with_adjacent_neighbours()),
        n as f64 / 2.0,
        3.0 / n as f64,
    ]
}
