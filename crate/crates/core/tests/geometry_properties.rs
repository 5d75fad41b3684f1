mod common;

use core_picker::geometry::{
    altitudes, box_hyperplane_clearance, fit_separating_hyperplane, in_simplex, mean_point,
    simplex_width, ConfidenceBox,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_unit_in_hn(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut u: Vec<f64> = (0..n).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect();
    let m = u.iter().sum::<f64>() / n as f64;
    u.iter_mut().for_each(|a| *a -= m);
    let norm = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    u.iter_mut().for_each(|a| *a /= norm);
    u
}

#[test]
fn perturbed_altitudes_stay_above_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    for k in 0..200 {
        let n = 3 + k % 4;
        let nf = n as f64;
        let pts = common::random_simplex_hn(&mut rng, n);
        let sigma = simplex_width(&pts);
        let eps = rng.random_range(0.0..1.0) * sigma * sigma / (6.0 * nf.powi(3));
        let bound = (sigma * sigma - 6.0 * nf.powi(3) * eps).sqrt();
        for a in altitudes(&common::perturb(&mut rng, &pts, eps / 2.0)) {
            assert!(a >= bound - 1e-9, "altitude {a} < {bound}");
        }
    }
}

/// Whether the L∞ box might meet `{⟨u, x⟩ = c}`.
fn probe_hits(u: &[f64], c: f64, center: &[f64], b: f64) -> bool {
    let level: f64 = u.iter().zip(center).map(|(a, x)| a * x).sum();
    let l1: f64 = u.iter().map(|a| a.abs()).sum();
    (level - c).abs() <= b * l1
}

#[test]
fn unpierceable_boxes_are_separated() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let mut accepted = 0;
    let mut rejected = 0;
    for k in 0..200 {
        let n = 3 + k % 2;
        let centers = common::random_simplex_hn(&mut rng, n);
        if simplex_width(&centers) < 1e-3 {
            continue;
        }
        let b = rng.random_range(0.005..0.08);
        // probes: random directions in H_N through a random point of a random box
        let pierced = (0..10_000).any(|_| {
            let u = random_unit_in_hn(&mut rng, n);
            let which = rng.random_range(0..n);
            let radius = b * rng.random::<f64>();
            let anchor = common::balanced_corner(&mut rng, &centers[which], radius);
            let c: f64 = u.iter().zip(&anchor).map(|(a, x)| a * x).sum();
            centers.iter().all(|x| probe_hits(&u, c, x, b))
        }) || (0..n).any(|p| {
            // the hyperplane through the other centers is itself a probe
            let h = fit_separating_hyperplane(&centers, p, 0.0).unwrap();
            probe_hits(&h.v, h.c, &centers[p], b)
        });
        if pierced {
            rejected += 1;
            continue;
        }
        accepted += 1;
        for p in 0..n {
            let h = fit_separating_hyperplane(&centers, p, 0.0).unwrap();
            let clearance = box_hyperplane_clearance(&h, &ConfidenceBox::new(centers[p].clone(), b));
            assert!(clearance > 0.0);
        }
    }
    assert!(accepted > 20 && rejected > 0, "accepted {accepted}, rejected {rejected}");
}

#[test]
fn mean_of_centers_is_common_under_clearance() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for n in 3..=5 {
        for _ in 0..30 {
            let (q, b) = common::clearance_config(&mut rng, n);
            assert!(common::meets_clearance_premise(&q, b));
            let x = mean_point(&q);
            for _ in 0..500 {
                let corners: Vec<Vec<f64>> =
                    q.iter().map(|c| common::balanced_corner(&mut rng, c, b)).collect();
                assert!(in_simplex(&x, &corners).unwrap());
            }
        }
    }
}

#[test]
fn pierced_boxes_have_no_common_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for n in 3..=5 {
        for _ in 0..20 {
            // centers on one (n−2)-dim hyperplane of H_N
            let u = random_unit_in_hn(&mut rng, n);
            let centers: Vec<Vec<f64>> = common::random_simplex_hn(&mut rng, n)
                .into_iter()
                .map(|x| {
                    let t: f64 = u.iter().zip(&x).map(|(a, b)| a * b).sum();
                    x.iter().zip(&u).map(|(a, d)| a - t * d).collect()
                })
                .collect();
            let b = 0.05;
            let x = mean_point(&centers);
            let shift = b / (2.0 * u.iter().fold(0.0f64, |m, a| m.max(a.abs())));
            // push every corner to one side of the hyperplane, jittered so the
            // simplex stays full dimensional: |⟨u, jitter⟩| ≤ b/(2√n) < shift
            let mut side = |s: f64| -> Vec<Vec<f64>> {
                centers
                    .iter()
                    .map(|c| {
                        let pushed: Vec<f64> =
                            c.iter().zip(&u).map(|(a, d)| a + s * shift * d).collect();
                        common::balanced_corner(&mut rng, &pushed, b / (2.0 * n as f64))
                    })
                    .collect()
            };
            for s in [1.0, -1.0] {
                let corners = side(s);
                for (corner, c) in corners.iter().zip(&centers) {
                    assert!(corner.iter().zip(c).all(|(a, z)| (a - z).abs() <= b));
                }
                assert!(!in_simplex(&x, &corners).unwrap());
            }
        }
    }
}
