//! Seeded drivers behind the `core-picker` subcommands, plus the CSV and
//! gnuplot writers.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{
    cyclic_permutations, gen_convex_boundary, gen_permutahedron, gen_strictly_convex,
    gen_unit_game, GameSpec, PairwiseGame, Permutation, STRICT_COEF,
};
use crate::geometry::simplex_width;
use crate::learner::{common_points_picking, LearnerConfig, PermChoice, RunReport};
use crate::oracle::{BanditOracle, NoiseModel};
use crate::verifier::{core_membership, MembershipReport};

/// Membership tolerance applied to learned allocations.
pub const VERIFY_TOL: f64 = 1e-9;

/// Environment variable capping sweep workers.
pub const THREADS_ENV: &str = "CORE_PICKER_THREADS";

const GAME_STREAM: u64 = 0;
const ORACLE_STREAM: u64 = 1;

/// Mixes a base seed with the trial coordinates (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, n: usize, trial: u64, stream: u64) -> u64 {
    let mut z = seed;
    for word in [n as u64, trial, stream] {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(word);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
    }
    z
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Strict,
    Convex,
    Unit,
    Permutahedron,
}

impl Generator {
    pub fn build(self, n: usize, seed: u64) -> GameSpec {
        match self {
            Generator::Strict => gen_strictly_convex(n, seed),
            Generator::Convex => gen_convex_boundary(n, seed),
            Generator::Unit => gen_unit_game(n),
            Generator::Permutahedron => gen_permutahedron(n),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Strict => "strict",
            Generator::Convex => "convex",
            Generator::Unit => "unit",
            Generator::Permutahedron => "permutahedron",
        })
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Generator::Strict),
            "convex" => Ok(Generator::Convex),
            "unit" => Ok(Generator::Unit),
            "permutahedron" => Ok(Generator::Permutahedron),
            other => Err(Error::Config(format!("unknown generator {other:?}"))),
        }
    }
}

/// Vertex set queried by the learner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PermSet {
    /// Identity plus its adjacent transpositions.
    Adjacent,
    #[default]
    Cyclic,
}

impl PermSet {
    pub fn choice(self, n: usize) -> PermChoice {
        match self {
            PermSet::Adjacent => PermChoice::Adjacent(Permutation::identity(n)),
            PermSet::Cyclic => PermChoice::Cyclic,
        }
    }
}

impl fmt::Display for PermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PermSet::Adjacent => "adjacent",
            PermSet::Cyclic => "cyclic",
        })
    }
}

impl FromStr for PermSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacent" => Ok(PermSet::Adjacent),
            "cyclic" => Ok(PermSet::Cyclic),
            other => Err(Error::Config(format!("unknown permutation set {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LearnSpec {
    pub n: usize,
    pub generator: Generator,
    pub perms: PermSet,
    pub delta: f64,
    pub seed: u64,
    pub noise: NoiseModel,
    pub max_epochs: Option<u64>,
}

impl LearnSpec {
    pub fn new(n: usize, generator: Generator, seed: u64) -> Self {
        Self {
            n,
            generator,
            perms: PermSet::Cyclic,
            delta: 0.1,
            seed,
            noise: NoiseModel::Bernoulli,
            max_epochs: None,
        }
    }

    fn config(&self) -> LearnerConfig {
        let config = LearnerConfig::new(self.delta, self.perms.choice(self.n));
        match self.max_epochs {
            Some(cap) => config.with_max_epochs(cap),
            None => config,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LearnOutcome {
    pub game: GameSpec,
    pub report: RunReport,
    pub membership: MembershipReport,
}

impl LearnOutcome {
    /// Stopped runs must land in the core; capped runs carry no claim.
    pub fn accepted(&self) -> bool {
        self.membership.is_member || !self.report.stopped_naturally
    }
}

fn check_players(n: usize) -> Result<()> {
    if !(2..=crate::game::MAX_PLAYERS).contains(&n) {
        return Err(Error::PlayerCount(n));
    }
    Ok(())
}

/// Builds the game from `(seed, n, trial)`, runs the learner on an oracle
/// seeded from the same coordinates and verifies the result.
pub fn learn_trial(spec: &LearnSpec, trial: u64) -> Result<LearnOutcome> {
    check_players(spec.n)?;
    let game = spec
        .generator
        .build(spec.n, derive_seed(spec.seed, spec.n, trial, GAME_STREAM))
        .with_noise(spec.noise)?;
    let mut oracle = BanditOracle::new(&game, derive_seed(spec.seed, spec.n, trial, ORACLE_STREAM));
    let report = common_points_picking(&mut oracle, &spec.config())?;
    let membership = core_membership(&game, &report.allocation.x, VERIFY_TOL);
    Ok(LearnOutcome {
        game,
        report,
        membership,
    })
}

pub fn learn_once(spec: &LearnSpec) -> Result<LearnOutcome> {
    learn_trial(spec, 0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRow {
    pub n: usize,
    pub delta: f64,
    pub perm_choice: String,
    pub seed: u64,
    pub epochs: u64,
    pub samples: u64,
    pub stopped: bool,
    pub violation_max: f64,
}

impl RunRow {
    pub fn new(spec: &LearnSpec, outcome: &LearnOutcome) -> Self {
        Self {
            n: spec.n,
            delta: spec.delta,
            perm_choice: spec.perms.to_string(),
            seed: spec.seed,
            epochs: outcome.report.epochs,
            samples: outcome.report.samples,
            stopped: outcome.report.stopped_naturally,
            violation_max: outcome.membership.max_violation,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub n_min: usize,
    pub n_max: usize,
    pub trials: u64,
    pub generator: Generator,
    pub perms: PermSet,
    pub delta: f64,
    pub seed: u64,
    pub noise: NoiseModel,
    pub max_epochs: Option<u64>,
}

impl SweepSpec {
    pub fn new(n_min: usize, n_max: usize, trials: u64, generator: Generator, seed: u64) -> Self {
        Self {
            n_min,
            n_max,
            trials,
            generator,
            perms: PermSet::Cyclic,
            delta: 0.1,
            seed,
            noise: NoiseModel::Bernoulli,
            max_epochs: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(2 <= self.n_min && self.n_min <= self.n_max && self.n_max <= 10) {
            return Err(Error::Config(format!(
                "sweep needs 2 <= n-min <= n-max <= 10, got {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        Ok(())
    }

    fn learn_spec(&self, n: usize) -> LearnSpec {
        LearnSpec {
            n,
            generator: self.generator,
            perms: self.perms,
            delta: self.delta,
            seed: self.seed,
            noise: self.noise,
            max_epochs: self.max_epochs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub trial: u64,
    pub samples: u64,
    pub stopped: bool,
    pub violation_max: f64,
    /// Full membership verdict at [`VERIFY_TOL`], efficiency included.
    #[serde(skip)]
    pub is_member: bool,
}

/// Worker count from [`THREADS_ENV`], falling back to rayon's default.
pub fn worker_count() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

fn run_parallel<T, F>(jobs: Vec<(usize, u64)>, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync + Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = worker_count() {
        builder = builder.num_threads(threads);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| jobs.into_par_iter().map(|(n, t)| job(n, t)).collect())
}

/// Every `(n, trial)` pair of the sweep, rows sorted by `(n, trial)`.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let jobs: Vec<(usize, u64)> = (spec.n_min..=spec.n_max)
        .flat_map(|n| (0..spec.trials).map(move |t| (n, t)))
        .collect();
    let mut rows = run_parallel(jobs, |n, trial| {
        let outcome = learn_trial(&spec.learn_spec(n), trial)?;
        Ok(SweepRow {
            n,
            trial,
            samples: outcome.report.samples,
            stopped: outcome.report.stopped_naturally,
            violation_max: outcome.membership.max_violation,
            is_member: outcome.membership.is_member,
        })
    })?;
    rows.sort_by_key(|r| (r.n, r.trial));
    Ok(rows)
}

/// Game family behind the width experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CwSource {
    /// [`PairwiseGame`]; no table, so any `n`.
    #[default]
    Pairwise,
    /// Table games from the strictly convex generator, `n ≤ 20`.
    Strict,
}

impl FromStr for CwSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pairwise" => Ok(CwSource::Pairwise),
            "strict" => Ok(CwSource::Strict),
            other => Err(Error::Config(format!("unknown width-experiment game {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CwSpec {
    pub ns: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub source: CwSource,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CwRow {
    pub n: usize,
    pub trial: u64,
    pub width: f64,
    pub c_w: f64,
}

/// Width of the cyclic marginal vectors of one generated game and
/// `c_W = n·ς / width`.
pub fn cw_trial(n: usize, trial: u64, seed: u64, source: CwSource) -> Result<CwRow> {
    let game_seed = derive_seed(seed, n, trial, GAME_STREAM);
    let (points, margin) = match source {
        CwSource::Pairwise => {
            let game = PairwiseGame::generate(n, STRICT_COEF, game_seed);
            let points = cyclic_permutations(n)
                .iter()
                .map(|w| game.marginal_vector(w))
                .collect::<Vec<_>>();
            (points, game.strict_convexity_margin())
        }
        CwSource::Strict => {
            check_players(n)?;
            let game = gen_strictly_convex(n, game_seed);
            let points = cyclic_permutations(n)
                .iter()
                .map(|w| game.marginal_vector(w).map(|m| m.values))
                .collect::<Result<Vec<_>>>()?;
            (points, game.strict_convexity_margin())
        }
    };
    let width = simplex_width(&points);
    Ok(CwRow {
        n,
        trial,
        width,
        c_w: n as f64 * margin / width,
    })
}

pub fn cw(spec: &CwSpec) -> Result<Vec<CwRow>> {
    if spec.ns.is_empty() || spec.trials == 0 {
        return Err(Error::Config("width experiment needs players and trials".into()));
    }
    if let Some(&bad) = spec.ns.iter().find(|&&n| n < 2) {
        return Err(Error::PlayerCount(bad));
    }
    let jobs: Vec<(usize, u64)> = spec
        .ns
        .iter()
        .flat_map(|&n| (0..spec.trials).map(move |t| (n, t)))
        .collect();
    let mut rows = run_parallel(jobs, |n, trial| cw_trial(n, trial, spec.seed, spec.source))?;
    rows.sort_by_key(|r| (r.n, r.trial));
    Ok(rows)
}

/// Writes rows with a header line.
pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    })
}

/// `(n, median samples)` for each `n` in the sweep, ascending.
pub fn median_samples(rows: &[SweepRow]) -> Vec<(usize, f64)> {
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.dedup();
    ns.into_iter()
        .filter_map(|n| {
            let mut s: Vec<f64> = rows
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.samples as f64)
                .collect();
            median(&mut s).map(|m| (n, m))
        })
        .collect()
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Exponent of a power-law fit `median ≈ C·n^k`.
pub fn loglog_exponent(medians: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = medians
        .iter()
        .map(|&(n, m)| ((n as f64).ln(), m.ln()))
        .collect();
    ls_slope(&pts)
}

/// Two-column `n median` data for gnuplot.
pub fn medians_dat(medians: &[(usize, f64)]) -> String {
    let mut s = String::from("# n median_samples\n");
    for (n, m) in medians {
        s.push_str(&format!("{n} {m}\n"));
    }
    s
}

/// Log-scale plot of the medians file next to the CSV.
pub fn sweep_gnuplot(dat_file: &str, title: &str) -> String {
    format!(
        "set terminal pngcairo size 800,600\n\
         set output '{dat_file}.png'\n\
         set title '{title}'\n\
         set xlabel 'n'\n\
         set ylabel 'median samples'\n\
         set logscale y\n\
         plot '{dat_file}' using 1:2 with linespoints title 'median'\n"
    )
}

/// Histogram of `c_W` per `n`, read straight from the CSV.
pub fn cw_gnuplot(csv_file: &str, ns: &[usize]) -> String {
    let mut s = format!(
        "set terminal pngcairo size 800,600\n\
         set output '{csv_file}.png'\n\
         set datafile separator ','\n\
         set xlabel 'c_W'\n\
         set ylabel 'count'\n\
         set xrange [0:30]\n\
         binwidth = 0.25\n\
         bin(x) = binwidth * floor(x / binwidth)\n\
         set style fill transparent solid 0.5\n\
         plot"
    );
    for (i, n) in ns.iter().enumerate() {
        let sep = if i == 0 { " " } else { ", \\\n     " };
        s.push_str(&format!(
            "{sep}'{csv_file}' every ::1 using ($1 == {n} ? bin($4) : 1/0):(1.0) smooth freq with boxes title 'n={n}'"
        ));
    }
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_across_coordinates() {
        let a = derive_seed(7, 3, 0, 0);
        assert_ne!(a, derive_seed(7, 3, 1, 0));
        assert_ne!(a, derive_seed(7, 4, 0, 0));
        assert_ne!(a, derive_seed(7, 3, 0, 1));
        assert_ne!(a, derive_seed(8, 3, 0, 0));
        assert_eq!(a, derive_seed(7, 3, 0, 0));
    }

    #[test]
    fn parse_round_trips() {
        for g in [Generator::Strict, Generator::Convex, Generator::Unit, Generator::Permutahedron] {
            assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
        }
        for p in [PermSet::Adjacent, PermSet::Cyclic] {
            assert_eq!(p.to_string().parse::<PermSet>().unwrap(), p);
        }
        assert!("concave".parse::<Generator>().is_err());
    }

    #[test]
    fn median_handles_parity() {
        assert_eq!(median(&mut []), None);
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }

    #[test]
    fn power_law_exponent_recovered() {
        let medians: Vec<(usize, f64)> = (2..7).map(|n| (n, 5.0 * (n as f64).powi(3))).collect();
        assert!((loglog_exponent(&medians).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(ls_slope(&[(1.0, 1.0)]), None);
    }

    #[test]
    fn run_row_csv_header() {
        let row = RunRow {
            n: 3,
            delta: 0.1,
            perm_choice: "cyclic".into(),
            seed: 1,
            epochs: 10,
            samples: 90,
            stopped: false,
            violation_max: -0.5,
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, &[row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "n,delta,perm_choice,seed,epochs,samples,stopped,violation_max\n3,0.1,cyclic,1,10,90,false,-0.5\n"
        );
    }

    #[test]
    fn capped_unit_game_is_accepted_without_stopping() {
        let mut spec = LearnSpec::new(4, Generator::Unit, 0);
        spec.max_epochs = Some(100);
        let out = learn_once(&spec).unwrap();
        assert!(!out.report.stopped_naturally);
        assert_eq!(out.report.epochs, 100);
        assert_eq!(out.report.samples, 1600);
        assert!(out.accepted());
    }

    #[test]
    fn sweep_rejects_out_of_range() {
        assert!(sweep(&SweepSpec::new(1, 3, 1, Generator::Strict, 0)).is_err());
        assert!(sweep(&SweepSpec::new(4, 3, 1, Generator::Strict, 0)).is_err());
        assert!(sweep(&SweepSpec::new(2, 11, 1, Generator::Strict, 0)).is_err());
        assert!(sweep(&SweepSpec::new(2, 3, 0, Generator::Strict, 0)).is_err());
    }

    #[test]
    fn cw_widths_positive_and_sources_agree_in_scale() {
        for source in [CwSource::Pairwise, CwSource::Strict] {
            for trial in 0..5 {
                let row = cw_trial(6, trial, 3, source).unwrap();
                assert!(row.width > 0.0);
                assert!(row.c_w > 0.0 && row.c_w < 30.0, "{row:?}");
            }
        }
    }

    #[test]
    fn gnuplot_scripts_reference_their_data() {
        assert!(sweep_gnuplot("m.dat", "t").contains("plot 'm.dat'"));
        let s = cw_gnuplot("cw.csv", &[10, 50]);
        assert!(s.contains("$1 == 10") && s.contains("$1 == 50"));
    }
}
