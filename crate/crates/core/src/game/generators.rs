//! Game instances used by the experiments and as test fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{GameSpec, MAX_PLAYERS};
use crate::oracle::NoiseModel;

/// Coefficient on the uniform draw for the strictly convex generator.
pub const STRICT_COEF: f64 = 0.9;
/// Coefficient on the uniform draw for the merely convex generator.
pub const CONVEX_BOUNDARY_COEF: f64 = 1.0;

fn check_n(n: usize) {
    assert!(
        (2..=MAX_PLAYERS).contains(&n),
        "player count {n} outside 2..={MAX_PLAYERS}"
    );
}

fn triangular(k: usize) -> f64 {
    (k * (k + 1) / 2) as f64
}

/// Random game whose every marginal contribution has the form
/// `f(S ∪ i) − f(S) = |S| + 1 + coef·ω` with `ω ∈ [0, 1]`.
///
/// Writes `f(S) = |S|(|S|+1)/2 + coef·r(S)` and fills `r` in ascending mask
/// order. For each nonempty `S` the admissible range keeping every increment
/// `r(S) − r(S∖i)` in `[0, 1]` is `[max_i r(S∖i), min_i r(S∖i) + 1]`, which
/// is never empty; one draw from `draw` (expected in `[0, 1]`) picks the point
/// inside it. The second difference of `f` is then at least `1 − coef`.
///
/// The table is normalized by `f(N)` so that `mu(N) = 1`.
pub fn gen_with_draws(n: usize, coef: f64, mut draw: impl FnMut() -> f64) -> GameSpec {
    check_n(n);
    let size = 1usize << n;
    let mut r = vec![0.0f64; size];
    let mut f = vec![0.0f64; size];
    for mask in 1..size {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let mut bits = mask;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            let prev = r[mask ^ low];
            lo = lo.max(prev);
            hi = hi.min(prev + 1.0);
            bits ^= low;
        }
        r[mask] = lo + draw() * (hi - lo);
        f[mask] = triangular(mask.count_ones() as usize) + coef * r[mask];
    }
    let total = f[size - 1];
    for v in f.iter_mut() {
        *v /= total;
    }
    f[size - 1] = 1.0;
    GameSpec::new(n, f, NoiseModel::Bernoulli).expect("generator output is a valid table")
}

fn seeded(n: usize, coef: f64, seed: u64) -> GameSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_with_draws(n, coef, || rng.random::<f64>())
}

/// Strictly convex game with uniform draws weighted by 0.9.
pub fn gen_strictly_convex(n: usize, seed: u64) -> GameSpec {
    seeded(n, STRICT_COEF, seed)
}

/// Convex game on the boundary of strict convexity (draw weight 1.0).
pub fn gen_convex_boundary(n: usize, seed: u64) -> GameSpec {
    seeded(n, CONVEX_BOUNDARY_COEF, seed)
}

/// `mu(S) = |S| / n`: convex with a one-point core.
pub fn gen_unit_game(n: usize) -> GameSpec {
    check_n(n);
    let mu = (0..1u32 << n)
        .map(|m| m.count_ones() as f64 / n as f64)
        .collect();
    GameSpec::new(n, mu, NoiseModel::Bernoulli).expect("valid table")
}

/// `mu(S) = g(|S|) / g(n)` with `g(k) = k(k+1)/2`; the core is the
/// permutahedron scaled by `1/g(n)`.
pub fn gen_permutahedron(n: usize) -> GameSpec {
    check_n(n);
    let g_n = triangular(n);
    let mu = (0..1u32 << n)
        .map(|m| triangular(m.count_ones() as usize) / g_n)
        .collect();
    GameSpec::new(n, mu, NoiseModel::Bernoulli).expect("valid table")
}
