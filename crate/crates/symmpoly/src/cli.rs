//! `symmpoly` command line.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on a
//! usage or domain error (with a one-line diagnostic on stderr).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use symmpoly_core::bounds::{bound_table, segment_bound};
use symmpoly_core::lab::{self, estimate_tv, run_ensemble, EnsembleSpec, Observable};
use symmpoly_core::Space;

use crate::io::{bounds_csv, checks_csv, grid_csv, polygon_record, summary_csv};
use crate::verify::{density_checks, Check, Level, Suite, DEFAULT_SEED};
use crate::Parallel;

#[derive(Parser, Debug)]
#[command(name = "symmpoly", version, about = "Random polygons under the symmetric measure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample polygons and write them as JSONL.
    Sample(Opts),
    /// Summary statistics of curvature and torsion over an ensemble.
    Stats(Opts),
    /// Binned TV between the first k edges of a space and its open-arm counterpart.
    Tv(Opts),
    /// Evaluate the closed-form segment bounds.
    Bounds(Opts),
    /// Run the full verification suite.
    Verify(Opts),
    /// Check the random-matrix densities.
    DensityCheck(Opts),
}

#[derive(Args, Debug)]
struct Opts {
    #[arg(long, default_value = "pol2", value_parser = parse_space)]
    space: Space,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 12)]
    bins: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "desk", value_parser = parse_level)]
    level: Level,
    #[arg(long, default_value_t = 2)]
    dim: usize,
}

fn parse_space(s: &str) -> Result<Space, String> {
    Space::parse(s).ok_or_else(|| format!("unknown space '{s}' (expected arm2, pol2, arm3 or pol3)"))
}

fn parse_level(s: &str) -> Result<Level, String> {
    Level::parse(s).ok_or_else(|| format!("unknown level '{s}' (expected desk or deep)"))
}

enum Failure {
    Usage(String),
    Verification,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            eprintln!("error: {line}");
            return 2;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg.lines().next().unwrap_or(""));
            2
        }
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Sample(o) => sample(&o),
        Command::Stats(o) => stats(&o),
        Command::Tv(o) => tv(&o),
        Command::Bounds(o) => bounds(&o),
        Command::Verify(o) => verify(&o),
        Command::DensityCheck(o) => density(&o),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pool(o: &Opts) -> Result<Parallel, Failure> {
    if o.workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    Ok(Parallel::new(o.workers)?)
}

fn check_n(o: &Opts) -> Outcome {
    if o.n < 3 {
        return Err(Failure::Usage(format!("--n must be at least 3, got {}", o.n)));
    }
    Ok(())
}

fn sample(o: &Opts) -> Outcome {
    check_n(o)?;
    if o.count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let spec = EnsembleSpec::new(o.space, o.n, o.count, o.seed);
    let (records, _) = lab::collect(&spec, &pool(o)?, |p| Ok(polygon_record(p)))?;
    let mut text = String::with_capacity(records.iter().map(|r| r.len() + 1).sum());
    for r in records {
        text.push_str(&r);
        text.push('\n');
    }
    emit(&o.out, &text)
}

fn stats(o: &Opts) -> Outcome {
    check_n(o)?;
    let mut obs = vec![Observable::TotalCurvature, Observable::TurningAngle(0)];
    if o.space.dim() == 3 {
        obs.extend([Observable::TotalTorsion, Observable::TorsionAngle(0)]);
    }
    let ens = run_ensemble(o.space, o.n, o.count, &obs, o.seed, &pool(o)?)?;
    emit(&o.out, &summary_csv(&ens.summary()))
}

fn tv(o: &Opts) -> Outcome {
    check_n(o)?;
    let k = o.k.unwrap_or(1);
    let arm = if o.space.dim() == 2 { Space::Arm2 } else { Space::Arm3 };
    let g = estimate_tv(o.space, arm, o.n, k, o.count, o.bins, o.seed, &pool(o)?)?;
    let bound = if o.space.closed() { segment_bound(o.space.dim(), k as u64, o.n as u64).map(|b| b.to_string()).unwrap_or_default() } else { String::new() };
    let line = format!(
        "space_a,space_b,n,k,count,bins,tv_estimate,null_calibration,tv_std_error,bound\n{},{},{},{},{},{},{},{},{},{}\n",
        o.space, arm, o.n, k, o.count, o.bins, g.tv_estimate, g.null_calibration, g.tv_std_error, bound
    );
    match &o.out {
        Some(path) => {
            fs::write(path, grid_csv(&g))?;
            emit(&None, &line)
        }
        None => emit(&None, &line),
    }
}

fn bounds(o: &Opts) -> Outcome {
    if o.dim != 2 && o.dim != 3 {
        return Err(Failure::Usage(format!("--dim must be 2 or 3, got {}", o.dim)));
    }
    let n = o.n as u64;
    let ks: Vec<u64> = match o.k {
        Some(k) => vec![k as u64],
        None => (1..=n.saturating_sub(5).min(10)).collect(),
    };
    let rows = bound_table(o.dim, &ks, n);
    if let [only] = rows.as_slice() {
        if !only.valid {
            return Err(Failure::Usage(format!("bound undefined for k={} n={} (need 1 <= k <= n - 5)", only.params.k, n)));
        }
    }
    emit(&o.out, &bounds_csv(&rows))
}

fn finish(o: &Opts, checks: &[Check]) -> Outcome {
    emit(&o.out, &checks_csv(checks))?;
    if checks.iter().all(|c| c.pass) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify(o: &Opts) -> Outcome {
    let exec = pool(o)?;
    let checks = Suite::new(o.seed, o.level, &exec).run()?;
    finish(o, &checks)
}

fn density(o: &Opts) -> Outcome {
    finish(o, &density_checks()?)
}
