//! Common-points picking: estimate `n` core vertices from bandit feedback
//! until a separating-hyperplane test certifies that their average lies in
//! the expected core.

use crate::error::{Error, Result};
use crate::game::{cyclic_permutations, Permutation};
use crate::geometry::{
    box_hyperplane_clearance, fit_separating_hyperplane, mean_point, ConfidenceBox, NormalScreen,
};
use crate::oracle::BanditOracle;

/// Sample budget behind the default epoch cap.
pub const DEFAULT_SAMPLE_BUDGET: u64 = 1_000_000_000;

/// The screen may only reject epochs failing by more than this.
const SCREEN_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum PermChoice {
    /// `{ω, ω s_1, …, ω s_{n−1}}`.
    Adjacent(Permutation),
    /// The `n` rotations.
    Cyclic,
    Explicit(Vec<Permutation>),
}

impl PermChoice {
    pub fn resolve(&self, n: usize) -> Result<Vec<Permutation>> {
        let perms = match self {
            PermChoice::Adjacent(base) => {
                if base.len() != n {
                    return Err(Error::Config(format!(
                        "base permutation has {} players, game has {n}",
                        base.len()
                    )));
                }
                base.with_adjacent_neighbours()
            }
            PermChoice::Cyclic => cyclic_permutations(n),
            PermChoice::Explicit(list) => {
                if list.len() != n || list.iter().any(|w| w.len() != n) {
                    return Err(Error::Config(format!(
                        "explicit list needs exactly {n} permutations of {n} players"
                    )));
                }
                list.clone()
            }
        };
        Ok(perms)
    }

    pub fn label(&self) -> &'static str {
        match self {
            PermChoice::Adjacent(_) => "adjacent",
            PermChoice::Cyclic => "cyclic",
            PermChoice::Explicit(_) => "explicit",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LearnerConfig {
    pub delta: f64,
    pub perm_choice: PermChoice,
    /// `None` selects [`default_max_epochs`].
    pub max_epochs: Option<u64>,
    pub project_to_hn: bool,
}

impl LearnerConfig {
    pub fn new(delta: f64, perm_choice: PermChoice) -> Self {
        Self {
            delta,
            perm_choice,
            max_epochs: None,
            project_to_hn: true,
        }
    }

    pub fn with_max_epochs(mut self, max_epochs: u64) -> Self {
        self.max_epochs = Some(max_epochs);
        self
    }

    pub fn epoch_cap(&self, n: usize) -> u64 {
        self.max_epochs.unwrap_or_else(|| default_max_epochs(n))
    }

    fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config(format!("delta {} must lie in (0, 1)", self.delta)));
        }
        if self.max_epochs == Some(0) {
            return Err(Error::Config("max_epochs must be positive".into()));
        }
        Ok(())
    }
}

pub fn default_max_epochs(n: usize) -> u64 {
    DEFAULT_SAMPLE_BUDGET / (n * n) as u64
}

/// `b_ep = sqrt(2 ln(n·ep/δ) / ep)`, clamped at zero.
pub fn confidence_bonus(ep: u64, n: usize, delta: f64) -> f64 {
    let ep = ep as f64;
    let log = (n as f64 * ep / delta).ln();
    (2.0 * log / ep).max(0.0).sqrt()
}

/// Running estimates of the `n` marginal vectors.
#[derive(Debug, Clone)]
pub struct EpochState {
    pub ep: u64,
    /// Per permutation, the summed telescoped samples.
    pub sums: Vec<Vec<f64>>,
    /// Current estimates `sums / ep`, shifted onto `H_N` when projecting.
    /// Empty before the first epoch.
    pub q: Vec<Vec<f64>>,
    pub b: f64,
    n: usize,
    delta: f64,
    grand: f64,
    project: bool,
}

impl EpochState {
    pub fn new(n: usize, delta: f64, grand_value: f64, project_to_hn: bool) -> Self {
        Self {
            ep: 0,
            sums: vec![vec![0.0; n]; n],
            q: Vec::new(),
            b: f64::INFINITY,
            n,
            delta,
            grand: grand_value,
            project: project_to_hn,
        }
    }

    pub fn boxes(&self) -> Vec<ConfidenceBox> {
        self.q
            .iter()
            .map(|c| ConfidenceBox::new(c.clone(), self.b))
            .collect()
    }

    fn refresh(&mut self) {
        let n = self.n;
        if self.q.is_empty() {
            self.q = vec![vec![0.0; n]; n];
        }
        let inv = 1.0 / self.ep as f64;
        for (q, s) in self.q.iter_mut().zip(&self.sums) {
            for (a, b) in q.iter_mut().zip(s) {
                *a = b * inv;
            }
            if self.project {
                let shift = (self.grand - q.iter().sum::<f64>()) / n as f64;
                q.iter_mut().for_each(|a| *a += shift);
            }
        }
        self.b = confidence_bonus(self.ep, n, self.delta);
    }
}

/// One epoch: query the `n` prefix coalitions of every permutation once
/// (`n²` samples) and fold the telescoped marginals into the estimates.
pub fn run_epoch(
    state: &mut EpochState,
    oracle: &mut BanditOracle<'_>,
    perms: &[Permutation],
) -> Result<()> {
    let orders = arrival_orders(state.n, perms)?;
    epoch_with_orders(state, oracle, &orders);
    Ok(())
}

fn arrival_orders(n: usize, perms: &[Permutation]) -> Result<Vec<Vec<usize>>> {
    if perms.len() != n || perms.iter().any(|w| w.len() != n) {
        return Err(Error::Config(format!(
            "need {n} permutations of {n} players, got {}",
            perms.len()
        )));
    }
    Ok(perms.iter().map(Permutation::order).collect())
}

fn epoch_with_orders(state: &mut EpochState, oracle: &mut BanditOracle<'_>, orders: &[Vec<usize>]) {
    state.ep += 1;
    for (sums, order) in state.sums.iter_mut().zip(orders) {
        let mut prefix = crate::game::Coalition::EMPTY;
        let mut previous = 0.0;
        for &player in order {
            prefix = prefix.with(player);
            let reward = oracle.draw(prefix);
            sums[player] += reward - previous;
            previous = reward;
        }
    }
    state.refresh();
}

/// Whether every estimate's box clears its separating hyperplane by
/// `n·ε_ep`, with `ε_ep = 2√n·b_ep`. Empty `Q` or a degenerate fit is
/// `false`.
pub fn stopping_condition(q: &[Vec<f64>], b: f64) -> bool {
    if q.is_empty() {
        return false;
    }
    let n = q.len();
    let eps = 2.0 * (n as f64).sqrt() * b;
    for p in 0..n {
        let Some(h) = fit_separating_hyperplane(q, p, eps) else {
            return false;
        };
        let clearance = box_hyperplane_clearance(&h, &ConfidenceBox::new(q[p].clone(), b));
        if clearance < n as f64 * eps {
            return false;
        }
    }
    true
}

/// [`stopping_condition`] behind a Gram–Schmidt pre-check that discards
/// clearly failing epochs without an SVD.
#[derive(Debug, Default)]
pub struct StoppingRule {
    screen: NormalScreen,
}

impl StoppingRule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, q: &[Vec<f64>], b: f64) -> bool {
        if q.is_empty() {
            return false;
        }
        let n = q.len() as f64;
        let eps = 2.0 * n.sqrt() * b;
        for p in 0..q.len() {
            if let Some(sep) = self.screen.separation(q, p) {
                let clearance = sep.gap - eps - b * sep.normal_l1;
                if clearance < n * eps - SCREEN_SLACK {
                    return false;
                }
            }
        }
        stopping_condition(q, b)
    }
}

/// Candidate payoff vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    pub x: Vec<f64>,
}

impl Allocation {
    pub fn total(&self) -> f64 {
        self.x.iter().sum()
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub allocation: Allocation,
    pub epochs: u64,
    pub samples: u64,
    pub stopped_naturally: bool,
    pub perms: Vec<Permutation>,
    /// Estimates and radius at the final epoch.
    pub estimates: Vec<Vec<f64>>,
    pub radius: f64,
}

/// Runs epochs until the stopping rule passes or the epoch cap is reached,
/// then returns the mean of the current estimates.
pub fn common_points_picking(oracle: &mut BanditOracle<'_>, config: &LearnerConfig) -> Result<RunReport> {
    config.validate()?;
    let n = oracle.n();
    let perms = config.perm_choice.resolve(n)?;
    let orders = arrival_orders(n, &perms)?;
    let cap = config.epoch_cap(n);
    let start = oracle.sample_count();

    let mut state = EpochState::new(n, config.delta, oracle.grand_value(), config.project_to_hn);
    let mut rule = StoppingRule::new();
    let mut stopped = false;
    while state.ep < cap {
        epoch_with_orders(&mut state, oracle, &orders);
        if rule.check(&state.q, state.b) {
            stopped = true;
            break;
        }
    }
    Ok(RunReport {
        allocation: Allocation {
            x: mean_point(&state.q),
        },
        epochs: state.ep,
        samples: oracle.sample_count() - start,
        stopped_naturally: stopped,
        perms,
        estimates: state.q,
        radius: state.b,
    })
}
