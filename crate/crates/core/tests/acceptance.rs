//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use core_picker::experiments::{
    cw, learn_once, learn_trial, loglog_exponent, median, median_samples, sweep, CwSource,
    CwSpec, Generator, LearnSpec, PermSet, SweepSpec,
};
use core_picker::game::{cyclic_permutations, gen_permutahedron};
use core_picker::geometry::{altitudes, in_simplex, mean_point, simplex_width};
use core_picker::Permutation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn soundness() -> Outcome {
    let start = Instant::now();
    let mut good = 0;
    let mut stopped = 0;
    for seed in 0..100u64 {
        let n = 3 + (seed % 3) as usize;
        let out = learn_once(&LearnSpec::new(n, Generator::Strict, seed)).expect("learn");
        if out.report.stopped_naturally {
            stopped += 1;
            if out.membership.max_violation <= 0.0 && out.membership.efficiency_gap <= 1e-10 {
                good += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        good >= 90 && elapsed < Duration::from_secs(600),
        format!("{good}/100 stopped inside the core ({stopped} stopped), {elapsed:.1?}"),
    )
}

fn sample_growth() -> Outcome {
    let rows = sweep(&SweepSpec::new(2, 6, 20, Generator::Strict, 0)).expect("sweep");
    let medians = median_samples(&rows);
    let increasing = medians.windows(2).all(|w| w[1].1 > w[0].1);
    let exponent = loglog_exponent(&medians).unwrap_or(f64::INFINITY);
    let shown: Vec<String> = medians.iter().map(|(n, m)| format!("{n}:{m:.3e}")).collect();
    outcome(
        increasing && exponent < 15.0,
        format!("medians [{}], log-log exponent {exponent:.2}", shown.join(" ")),
    )
}

fn convex_boundary() -> Outcome {
    let mut spec = SweepSpec::new(2, 6, 20, Generator::Convex, 0);
    spec.perms = PermSet::Cyclic;
    let rows = sweep(&spec).expect("sweep");
    let stopped: Vec<_> = rows.iter().filter(|r| r.stopped).collect();
    let sound = stopped.iter().all(|r| r.is_member);
    let logs: Vec<(usize, f64)> = median_samples(&rows)
        .into_iter()
        .map(|(n, m)| (n, m.ln()))
        .collect();
    // concave in n: the late slope (n 4..6) is below the early one (n 2..4)
    let at = |n: usize| logs.iter().find(|p| p.0 == n).map(|p| p.1).unwrap();
    let early = (at(4) - at(2)) / 2.0;
    let late = (at(6) - at(4)) / 2.0;
    outcome(
        sound && late < early,
        format!(
            "{}/{} stopped, all members: {sound}; log-median slope {early:.2} (n 2..4) vs {late:.2} (n 4..6)",
            stopped.len(),
            rows.len()
        ),
    )
}

fn cw_concentration() -> Outcome {
    let start = Instant::now();
    let spec = CwSpec {
        ns: vec![10, 50],
        trials: 500,
        seed: 0,
        source: CwSource::Pairwise,
    };
    let rows = cw(&spec).expect("cw");
    let elapsed = start.elapsed();
    let mut parts = Vec::new();
    let mut pass = elapsed < Duration::from_secs(300);
    let mut medians = Vec::new();
    for &n in &spec.ns {
        let mut vals: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.c_w).collect();
        let inside = vals.iter().filter(|&&c| c > 0.0 && c < 30.0).count() as f64 / vals.len() as f64;
        pass &= inside >= 0.90;
        let m = median(&mut vals).unwrap();
        medians.push(m);
        parts.push(format!("n={n}: {:.1}% in (0,30), median {m:.3}", inside * 100.0));
    }
    let ratio = medians[0].max(medians[1]) / medians[0].min(medians[1]);
    outcome(pass, format!("{}; median ratio {ratio:.2}; {elapsed:.1?}", parts.join("; ")))
}

fn width_bounds() -> Outcome {
    let mut pass = true;
    let mut worst = (f64::INFINITY, 0.0f64);
    for n in 3..=10 {
        let g = gen_permutahedron(n);
        let scale = (n * (n + 1) / 2) as f64;
        let points = |perms: Vec<Permutation>| -> Vec<Vec<f64>> {
            perms
                .iter()
                .map(|w| {
                    let phi = g.marginal_vector(w).unwrap().values;
                    phi.iter().map(|v| v * scale).collect()
                })
                .collect()
        };
        let cyc = simplex_width(&points(cyclic_permutations(n)));
        let adj = simplex_width(&points(Permutation::identity(n).with_adjacent_neighbours()));
        pass &= cyc >= n as f64 / 2.0 - 1e-9 && adj <= 3.0 / n as f64 + 1e-9;
        worst.0 = worst.0.min(cyc - n as f64 / 2.0);
        worst.1 = worst.1.max(adj - 3.0 / n as f64);
    }
    outcome(
        pass,
        format!(
            "min(cyclic − n/2) = {:.3}, max(adjacent − 3/n) = {:.3}",
            worst.0, worst.1
        ),
    )
}

fn perturbation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = 0;
    let mut strong_failures = 0;
    for k in 0..200 {
        let n = 3 + k % 4;
        let nf = n as f64;
        let points = common::random_simplex_hn(&mut rng, n);
        let sigma = simplex_width(&points);
        // bound collapses to zero at the stated epsilon
        let eps = sigma * sigma / (6.0 * nf.powi(3));
        let perturbed = common::perturb(&mut rng, &points, eps / 2.0);
        let bound = (sigma * sigma - 6.0 * nf.powi(3) * eps).max(0.0).sqrt();
        failures += altitudes(&perturbed).iter().filter(|&&a| a < bound - 1e-9).count();
        // half the epsilon leaves a bound of sigma/sqrt(2)
        let eps = sigma * sigma / (12.0 * nf.powi(3));
        let perturbed = common::perturb(&mut rng, &points, eps / 2.0);
        let bound = (sigma * sigma - 6.0 * nf.powi(3) * eps).sqrt();
        strong_failures += altitudes(&perturbed).iter().filter(|&&a| a < bound - 1e-9).count();
    }
    outcome(
        failures == 0 && strong_failures == 0,
        format!("altitude violations: {failures} at ε=σ²/(6n³), {strong_failures} at ε=σ²/(12n³)"),
    )
}

fn common_point() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = 0;
    let mut checks = 0;
    for n in 3..=5 {
        for _ in 0..100 {
            let (q, b) = common::clearance_config(&mut rng, n);
            assert!(common::meets_clearance_premise(&q, b));
            let x = mean_point(&q);
            for _ in 0..500 {
                let corners: Vec<Vec<f64>> =
                    q.iter().map(|c| common::balanced_corner(&mut rng, c, b)).collect();
                checks += 1;
                if !in_simplex(&x, &corners).expect("non-degenerate corners") {
                    failures += 1;
                }
            }
        }
    }
    outcome(failures == 0, format!("{failures} failures in {checks} corner selections"))
}

fn coverage() -> Outcome {
    let delta = 0.1;
    let mut covered = 0;
    let mut stopped = 0;
    let spec = LearnSpec::new(3, Generator::Strict, 8);
    for trial in 0..500 {
        let out = learn_trial(&spec, trial).expect("learn");
        if !out.report.stopped_naturally {
            continue;
        }
        stopped += 1;
        let inside = out.report.perms.iter().zip(&out.report.estimates).all(|(w, q)| {
            let phi = out.game.marginal_vector(w).unwrap().values;
            phi.iter().zip(q).all(|(a, b)| (a - b).abs() <= out.report.radius)
        });
        covered += inside as usize;
    }
    let frac = covered as f64 / stopped.max(1) as f64;
    outcome(
        stopped == 500 && frac >= 1.0 - delta,
        format!("all vertices in their boxes in {covered}/{stopped} stopped runs ({:.1}%)", frac * 100.0),
    )
}

fn degenerate_control() -> Outcome {
    let cap = 100_000;
    let mut runs = 0;
    let mut stops = 0;
    for n in 3..=6 {
        for seed in 0..5 {
            let mut spec = LearnSpec::new(n, Generator::Unit, seed);
            spec.max_epochs = Some(cap);
            let out = learn_once(&spec).expect("learn");
            runs += 1;
            stops += out.report.stopped_naturally as usize;
        }
    }
    outcome(stops == 0, format!("{stops}/{runs} unit-game runs stopped within {cap} epochs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("soundness", soundness),
        ("sample-count growth", sample_growth),
        ("convex-boundary robustness", convex_boundary),
        ("c_W concentration", cw_concentration),
        ("permutahedron width bounds", width_bounds),
        ("perturbed altitudes", perturbation),
        ("common point under clearance", common_point),
        ("confidence-box coverage", coverage),
        ("degenerate core never stops", degenerate_control),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "acceptance {}: {verdict} {name} — {} [{:.1?}]",
            i + 1,
            o.detail,
            start.elapsed()
        );
        failed += !o.pass as usize;
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
