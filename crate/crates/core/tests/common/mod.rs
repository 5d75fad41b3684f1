#![allow(dead_code)]

use core_picker::geometry::{fit_separating_hyperplane, simplex_width, NormalScreen};
use rand::seq::SliceRandom;
use rand::Rng;

/// `n` uniform points of `[0,1]^n`, each shifted onto `x(N) = 1`.
pub fn random_simplex_hn(rng: &mut impl Rng, n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let shift = (1.0 - x.iter().sum::<f64>()) / n as f64;
            x.iter_mut().for_each(|a| *a += shift);
            x
        })
        .collect()
}

/// A corner of the L∞ box of radius `b` with as many `+b` as `−b`
/// coordinates (one zero when `n` is odd), so it stays on `x(N) = const`.
pub fn balanced_corner(rng: &mut impl Rng, center: &[f64], b: f64) -> Vec<f64> {
    let n = center.len();
    let mut signs: Vec<f64> = (0..n)
        .map(|i| {
            if i < n / 2 {
                1.0
            } else if i < 2 * (n / 2) {
                -1.0
            } else {
                0.0
            }
        })
        .collect();
    signs.shuffle(rng);
    center.iter().zip(signs).map(|(c, s)| c + b * s).collect()
}

/// Centers plus a common box radius for which every box clears the
/// hyperplane through the other centers by more than `2n` box diameters.
pub fn clearance_config(rng: &mut impl Rng, n: usize) -> (Vec<Vec<f64>>, f64) {
    loop {
        let q = random_simplex_hn(rng, n);
        if simplex_width(&q) < 1e-3 {
            continue;
        }
        let mut screen = NormalScreen::new();
        let nf = n as f64;
        let limit = (0..n)
            .map(|p| {
                let s = screen.separation(&q, p).expect("full-dimensional simplex");
                s.gap / (s.normal_l1 + 4.0 * nf * nf.sqrt())
            })
            .fold(f64::INFINITY, f64::min);
        let b = limit * rng.random_range(0.05..0.999);
        return (q, b);
    }
}

/// Whether `(q, b)` meets the clearance premise through the SVD fit.
pub fn meets_clearance_premise(q: &[Vec<f64>], b: f64) -> bool {
    let n = q.len() as f64;
    let diam = 2.0 * b * n.sqrt();
    (0..q.len()).all(|p| {
        let h = fit_separating_hyperplane(q, p, 0.0).expect("separable");
        let clearance = h.c - h.level(&q[p]) - b * h.normal_l1();
        clearance > 2.0 * n * diam
    })
}

/// Perturbs every coordinate by at most `half_eps` in magnitude.
pub fn perturb(rng: &mut impl Rng, points: &[Vec<f64>], half_eps: f64) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|x| {
            x.iter()
                .map(|a| a + half_eps * (2.0 * rng.random::<f64>() - 1.0) * 0.999_999)
                .collect()
        })
        .collect()
}
