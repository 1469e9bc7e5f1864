//! Command-line front end. The `kerrlab` binary is a thin wrapper around
//! [`run`].
//!
//! Exit codes: `0` success, `1` numerical or validation failure, `2` usage
//! error (bad flags, bad config, invalid parameters).

mod commands;
mod config;
mod presets;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_phasedist, cmd_phasevar, cmd_quaddist, cmd_sweep, cmd_validate, cmd_wigner, CommandOutput};
pub use config::{
    merge_json, overlay_config, parse_grid, parse_range, OutputFormat, ParamSpec, RunConfig, Suite, SweepColumn,
    TimeRange,
};
pub use presets::{preset, PRESET_NAMES};

use crate::error::{KerrError, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "kerrlab", version, about = "Single-mode statistics of the Kerr nonlinear coupler")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CommandKind {
    Sweep,
    Wigner,
    Quaddist,
    Phasedist,
    Phasevar,
    Validate,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// S, Q and η (or the phase variance) against time.
    Sweep(CommonArgs),
    /// s-parameterized quasiprobability on a phase-space grid.
    Wigner(CommonArgs),
    /// Quadrature distribution P(x).
    Quaddist(CommonArgs),
    /// Phase distribution P(Θ) on [-π, π].
    Phasedist(CommonArgs),
    /// Phase variance against time.
    Phasevar(CommonArgs),
    /// Compare the analytic results against the Fock-space simulation.
    Validate(CommonArgs),
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Figure preset, e.g. fig1a or fig5b-long.
    #[arg(long)]
    preset: Option<String>,
    /// JSON config file overlaid on the preset.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Ordering parameter s < 1.
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    /// Evaluation time for wigner, quaddist and phasedist.
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    tmin: Option<f64>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    tsteps: Option<usize>,
    /// "xmin,xmax,ymin,ymax,nx,ny".
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// "xmin,xmax" for quaddist.
    #[arg(long, allow_hyphen_values = true)]
    xrange: Option<String>,
    /// Node count for quaddist and phasedist.
    #[arg(long)]
    nodes: Option<usize>,
    /// Parameter assignments, e.g. "alpha1=2 alpha2=0 delta=0".
    #[arg(long, allow_hyphen_values = true)]
    set: Option<String>,
    /// Tolerance override for validate.
    #[arg(long)]
    tol: Option<f64>,
    /// Print the resolved config as JSON and exit.
    #[arg(long)]
    dump_config: bool,
}

impl Command {
    fn split(self) -> (CommandKind, CommonArgs) {
        match self {
            Self::Sweep(a) => (CommandKind::Sweep, a),
            Self::Wigner(a) => (CommandKind::Wigner, a),
            Self::Quaddist(a) => (CommandKind::Quaddist, a),
            Self::Phasedist(a) => (CommandKind::Phasedist, a),
            Self::Phasevar(a) => (CommandKind::Phasevar, a),
            Self::Validate(a) => (CommandKind::Validate, a),
        }
    }
}

/// Preset, then config file, then flags.
fn resolve(args: &CommonArgs) -> Result<RunConfig> {
    let mut cfg = match &args.preset {
        Some(name) => preset(name).ok_or_else(|| {
            KerrError::Config(format!("unknown preset {name:?}; known: {}", PRESET_NAMES.join(", ")))
        })?,
        None => RunConfig::default(),
    };
    if let Some(path) = &args.config {
        let doc = std::fs::read_to_string(path)
            .map_err(|e| KerrError::Config(format!("cannot read {}: {e}", path.display())))?;
        cfg = overlay_config(&cfg, &doc)?;
    }
    if let Some(f) = &args.format {
        cfg.format = f.parse()?;
    }
    if args.out.is_some() {
        cfg.out = args.out.clone();
    }
    if args.s.is_some() {
        cfg.s = args.s;
    }
    if let Some(t) = args.t {
        cfg.t = t;
    }
    if let Some(v) = args.tmin {
        cfg.times.tmin = v;
    }
    if let Some(v) = args.tmax {
        cfg.times.tmax = v;
    }
    if let Some(v) = args.tsteps {
        cfg.times.tsteps = v;
    }
    if let Some(g) = &args.grid {
        cfg.grid = parse_grid(g)?;
    }
    if let Some(r) = &args.xrange {
        cfg.x_range = parse_range(r)?;
    }
    if let Some(n) = args.nodes {
        cfg.nodes = n;
    }
    if let Some(tol) = args.tol {
        cfg.tolerance = Some(tol);
    }
    if let Some(set) = &args.set {
        cfg.apply_set(set)?;
        cfg.suite = Suite::Params;
    }
    if args.preset.is_some() {
        cfg.suite = Suite::Params;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("KERRLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| KerrError::Config(format!("KERRLAB_THREADS={raw:?} must be a positive integer")))?;
    // a pool built earlier in the same process is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(kind: CommandKind, cfg: &RunConfig) -> Result<CommandOutput> {
    match kind {
        CommandKind::Sweep => cmd_sweep(cfg),
        CommandKind::Wigner => cmd_wigner(cfg),
        CommandKind::Quaddist => cmd_quaddist(cfg),
        CommandKind::Phasedist => cmd_phasedist(cfg),
        CommandKind::Phasevar => cmd_phasevar(cfg),
        CommandKind::Validate => cmd_validate(cfg),
    }
}

fn emit(body: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn exit_code(err: &KerrError) -> i32 {
    match err {
        KerrError::Config(_) | KerrError::InvalidParams(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn report(err: &KerrError) -> i32 {
    eprintln!("{}", commands::describe_failure(err));
    exit_code(err)
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        return report(&e);
    }
    let (kind, args) = cli.command.split();
    let cfg = match resolve(&args) {
        Ok(cfg) => cfg,
        Err(e) => return report(&e),
    };
    if args.dump_config {
        return match cfg.to_json().and_then(|s| emit(&(s + "\n"), cfg.out.as_ref())) {
            Ok(()) => EXIT_OK,
            Err(e) => report(&e),
        };
    }
    match execute(kind, &cfg) {
        Ok(output) => {
            if let Err(e) = emit(&output.body, cfg.out.as_ref()) {
                return report(&e);
            }
            if output.failed {
                eprintln!("error: validation failed");
                EXIT_FAILURE
            } else {
                EXIT_OK
            }
        }
        Err(e) => report(&e),
    }
}
