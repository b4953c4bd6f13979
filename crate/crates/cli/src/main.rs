//! `rivote`: accountability and selection under rationally inattentive voting.
//!
//! Subcommands: `solve` (one voter's optimal signal), `xi` (societal
//! incentive power and the accountability verdict), `sweep` (comparative
//! statics to CSV), `lp` (correlated-recommendation design), `continuous`
//! (continuous performance states), and `benchmark` (full information).
//! Scenarios come from a `--config` file, inline flags, or both; flags win.

mod commands;
mod config;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{run, CliError};
use config::{parse_config, CostKind, Mode, ScenarioConfig, SweepParameter, UnitsArg};

#[derive(Parser)]
#[command(
    name = "rivote",
    version,
    about = "Electoral accountability and selection with rationally inattentive voters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one voter's optimal personalized signal (uses v1 and i1)
    Solve(CommonArgs),
    /// Societal incentive power of an electorate, with the accountability
    /// verdict when primitives are given
    Xi(CommonArgs),
    /// Sweep one parameter across a range and write equilibrium quantities
    /// to CSV
    Sweep(SweepArgs),
    /// Maximize the societal incentive power over correlated recommendation
    /// distributions with fixed marginals
    Lp(CommonArgs),
    /// Single voter over continuous performance states under a mutual-
    /// information cap
    Continuous(ContinuousArgs),
    /// Full-information benchmark from model primitives
    Benchmark(CommonArgs),
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Scenario configuration file
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// CSV output path
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Extreme voters' preference parameter
    #[arg(long)]
    v1: Option<f64>,
    /// Centrist bandwidth
    #[arg(long)]
    i0: Option<f64>,
    /// Extreme voters' bandwidth
    #[arg(long)]
    i1: Option<f64>,
    /// Centrist population mass
    #[arg(long)]
    f0: Option<f64>,
    /// Attention cost curve
    #[arg(long, value_enum)]
    cost: Option<CostKind>,
    /// Prior probability of high ability
    #[arg(long)]
    alpha: Option<f64>,
    /// High ability value
    #[arg(long = "h-ability")]
    h_ability: Option<f64>,
    /// Effort cost
    #[arg(long)]
    c: Option<f64>,
    /// State grid size for the continuous solver
    #[arg(long = "grid-points")]
    grid_points: Option<usize>,
    /// Entropy scale for the entropy cost and the capacity cap
    #[arg(long, value_enum)]
    units: Option<UnitsArg>,
}

#[derive(Args, Clone, Default)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Parameter to sweep
    #[arg(long, value_enum)]
    param: Option<SweepParameter>,
    /// Sweep start
    #[arg(long)]
    from: Option<f64>,
    /// Sweep end (inclusive)
    #[arg(long)]
    to: Option<f64>,
    /// Number of sweep points
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct ContinuousArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Voter preference parameter
    #[arg(long)]
    v: Option<f64>,
    /// Attention capacity (in --units)
    #[arg(long)]
    capacity: Option<f64>,
}

fn merge_common(cfg: &mut ScenarioConfig, args: &CommonArgs) {
    if args.v1.is_some() {
        cfg.v1 = args.v1;
    }
    if args.i0.is_some() {
        cfg.i0 = args.i0;
    }
    if args.i1.is_some() {
        cfg.i1 = args.i1;
    }
    if args.f0.is_some() {
        cfg.f0 = args.f0;
    }
    if args.cost.is_some() {
        cfg.cost_kind = args.cost;
    }
    if args.alpha.is_some() {
        cfg.alpha = args.alpha;
    }
    if args.h_ability.is_some() {
        cfg.h_ability = args.h_ability;
    }
    if args.c.is_some() {
        cfg.c = args.c;
    }
    if args.grid_points.is_some() {
        cfg.grid_points = args.grid_points;
    }
    if let Some(units) = args.units {
        cfg.units = Some(units.into());
    }
    if args.out.is_some() {
        cfg.out = args.out.clone();
    }
}

fn load(args: &CommonArgs) -> Result<ScenarioConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
            let (cfg, errors) = parse_config(&text);
            if !errors.is_empty() {
                return Err(CliError::Validation(errors));
            }
            cfg
        }
        None => ScenarioConfig::default(),
    };
    merge_common(&mut cfg, args);
    Ok(cfg)
}

fn dispatch(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Solve(args) => run(Mode::Solve, &load(args)?),
        Command::Xi(args) => run(Mode::Xi, &load(args)?),
        Command::Lp(args) => run(Mode::Lp, &load(args)?),
        Command::Benchmark(args) => run(Mode::Benchmark, &load(args)?),
        Command::Sweep(args) => {
            let mut cfg = load(&args.common)?;
            if args.param.is_some() {
                cfg.sweep_parameter = args.param;
            }
            if args.from.is_some() {
                cfg.sweep_from = args.from;
            }
            if args.to.is_some() {
                cfg.sweep_to = args.to;
            }
            if args.steps.is_some() {
                cfg.sweep_steps = args.steps;
            }
            run(Mode::Sweep, &cfg)
        }
        Command::Continuous(args) => {
            let mut cfg = load(&args.common)?;
            if args.v.is_some() {
                cfg.cont_v = args.v;
            }
            if args.capacity.is_some() {
                cfg.cont_capacity = args.capacity;
            }
            run(Mode::Continuous, &cfg)
        }
    }
}

fn main() -> ExitCode {
    // die quietly when stdout is a closed pipe (e.g. `rivote ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            // flag and usage problems are validation errors
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            e.report();
            ExitCode::from(e.exit_code())
        }
    }
}
