use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use core_picker::experiments::{
    cw, cw_gnuplot, learn_once, median_samples, medians_dat, sweep, sweep_gnuplot, write_csv,
    CwSource, CwSpec, Generator, LearnSpec, PermSet, RunRow, SweepSpec,
};
use core_picker::NoiseModel;

#[derive(Parser)]
#[command(name = "core-picker", version, about = "Learn expected-core allocations from bandit feedback")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the learner once and verify the allocation.
    Learn(LearnArgs),
    /// Sample counts over a range of player counts.
    Sweep(SweepArgs),
    /// Width constant of the cyclic vertex simplex.
    Cw(CwArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "cyclic")]
    perms: PermSet,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `bernoulli` or `uniform:<radius>`.
    #[arg(long, default_value = "bernoulli")]
    noise: NoiseModel,
    #[arg(long)]
    max_epochs: Option<u64>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LearnArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "gen", default_value = "strict")]
    generator: Generator,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, default_value_t = 20)]
    trials: u64,
    #[arg(long = "gen", default_value = "strict")]
    generator: Generator,
    #[command(flatten)]
    common: Common,
    /// Also write `<out>.dat` medians and a `<out>.gp` script (needs --out).
    #[arg(long)]
    gnuplot: bool,
}

#[derive(Args)]
struct CwArgs {
    /// Comma-separated player counts.
    #[arg(long, value_delimiter = ',', default_value = "10,50")]
    ns: Vec<usize>,
    #[arg(long, default_value_t = 500)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `pairwise` (any n) or `strict` (n ≤ 20).
    #[arg(long = "gen", default_value = "pairwise")]
    source: CwSource,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    gnuplot: bool,
}

fn sink(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn learn(args: LearnArgs) -> core_picker::Result<bool> {
    let c = args.common;
    let spec = LearnSpec {
        n: args.n,
        generator: args.generator,
        perms: c.perms,
        delta: c.delta,
        seed: c.seed,
        noise: c.noise,
        max_epochs: c.max_epochs,
    };
    let outcome = learn_once(&spec)?;
    let mut out = sink(&c.out)?;
    write_csv(&mut out, &[RunRow::new(&spec, &outcome)])?;
    let x: Vec<String> = outcome.report.allocation.x.iter().map(|v| format!("{v:.12}")).collect();
    writeln!(out, "# allocation {}", x.join(" "))?;
    writeln!(
        out,
        "# efficiency_gap {:.3e} worst_coalition {}",
        outcome.membership.efficiency_gap, outcome.membership.argmax
    )?;
    out.flush()?;
    Ok(outcome.accepted())
}

fn run_sweep(args: SweepArgs) -> core_picker::Result<bool> {
    let c = args.common;
    let spec = SweepSpec {
        n_min: args.n_min,
        n_max: args.n_max,
        trials: args.trials,
        generator: args.generator,
        perms: c.perms,
        delta: c.delta,
        seed: c.seed,
        noise: c.noise,
        max_epochs: c.max_epochs,
    };
    let rows = sweep(&spec)?;
    let mut out = sink(&c.out)?;
    write_csv(&mut out, &rows)?;
    out.flush()?;
    if args.gnuplot {
        if let Some(path) = &c.out {
            let dat = sibling(path, ".dat");
            std::fs::write(&dat, medians_dat(&median_samples(&rows)))?;
            let title = format!("{} games, {} perms", spec.generator, spec.perms);
            std::fs::write(sibling(path, ".gp"), sweep_gnuplot(&file_name(&dat), &title))?;
        }
    }
    Ok(rows.iter().all(|r| !r.stopped || r.is_member))
}

fn run_cw(args: CwArgs) -> core_picker::Result<bool> {
    let spec = CwSpec {
        ns: args.ns,
        trials: args.trials,
        seed: args.seed,
        source: args.source,
    };
    let rows = cw(&spec)?;
    let mut out = sink(&args.out)?;
    write_csv(&mut out, &rows)?;
    out.flush()?;
    if args.gnuplot {
        if let Some(path) = &args.out {
            std::fs::write(sibling(path, ".gp"), cw_gnuplot(&file_name(path), &spec.ns))?;
        }
    }
    Ok(rows.iter().all(|r| r.width > 0.0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Learn(a) => learn(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Cw(a) => run_cw(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (core_picker::Error::Config(_) | core_picker::Error::PlayerCount(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
