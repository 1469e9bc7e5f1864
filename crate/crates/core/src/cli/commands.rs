use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{OutputFormat, RunConfig, Suite, SweepColumn};
use crate::error::{KerrError, Result};
use crate::numerics::trapezoid_samples;
use crate::oracle::{run_validation, ParameterSet, ValidationConfig};
use crate::phase_space::{quadrature_distribution, quasiprob_grid, OrderingParam, SeriesControl};
use crate::phase_stats::{default_phase_control, PhaseSeries, DEFAULT_MOMENT_NODES};
use crate::squeezing::squeezing_sample;

/// Rendered command output and whether the command judged its own result a
/// failure (only `validate` does).
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub body: String,
    pub failed: bool,
}

impl CommandOutput {
    fn ok(body: String) -> Self {
        Self { body, failed: false }
    }
}

fn ordering(cfg: &RunConfig, default: f64) -> Result<OrderingParam> {
    OrderingParam::new(cfg.s.unwrap_or(default))
}

fn header(out: &mut String, command: &str, cfg: &RunConfig) {
    let p = &cfg.params;
    let _ = writeln!(
        out,
        "# kerrlab {command} preset={} kappa={} chi={} delta={} alpha1={} alpha2={}",
        cfg.preset.as_deref().unwrap_or("none"),
        p.kappa,
        p.chi,
        p.delta,
        p.alpha1,
        p.alpha2
    );
}

#[derive(Serialize)]
struct Table<'a> {
    command: &'a str,
    config: &'a RunConfig,
    columns: Vec<&'a str>,
    rows: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalization: Option<f64>,
}

fn render_table(
    command: &str,
    cfg: &RunConfig,
    columns: Vec<&str>,
    rows: Vec<Vec<f64>>,
    normalization: Option<f64>,
) -> Result<String> {
    match cfg.format {
        OutputFormat::Json => {
            // the output path is not part of the result
            let config = RunConfig { out: None, ..cfg.clone() };
            let table = Table { command, config: &config, columns, rows, normalization };
            Ok(serde_json::to_string_pretty(&table)? + "\n")
        }
        OutputFormat::Csv => {
            let mut out = String::new();
            header(&mut out, command, cfg);
            if let Some(n) = normalization {
                let _ = writeln!(out, "# normalization={n:.16e}");
            }
            out.push_str(&columns.join(","));
            out.push('\n');
            for row in rows {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Time sweep of the configured columns.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<CommandOutput> {
    let params = cfg.params.to_params()?;
    let times = cfg.times.times();
    let wants_phase = cfg.columns.contains(&SweepColumn::PhaseVariance);
    let s = ordering(cfg, -1.0)?;
    let rows = times
        .par_iter()
        .map(|&t| {
            let sample = squeezing_sample(&params, t);
            let variance = if wants_phase {
                PhaseSeries::new(&params, t, s, &default_phase_control())?.variance(DEFAULT_MOMENT_NODES)?
            } else {
                f64::NAN
            };
            let mut row = vec![t];
            row.extend(cfg.columns.iter().map(|c| match c {
                SweepColumn::S => sample.s_factor,
                SweepColumn::Q => sample.q_factor,
                SweepColumn::Eta => sample.eta,
                SweepColumn::PhaseVariance => variance,
            }));
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut columns = vec!["t"];
    columns.extend(cfg.columns.iter().map(|c| c.label()));
    render_table("sweep", cfg, columns, rows, None).map(CommandOutput::ok)
}

/// Phase variance against time.
pub fn cmd_phasevar(cfg: &RunConfig) -> Result<CommandOutput> {
    let cfg = RunConfig { columns: vec![SweepColumn::PhaseVariance], ..cfg.clone() };
    cmd_sweep(&cfg)
}

/// Quasiprobability grid at time `t`.
pub fn cmd_wigner(cfg: &RunConfig) -> Result<CommandOutput> {
    let params = cfg.params.to_params()?;
    let grid = quasiprob_grid(&params, cfg.t, ordering(cfg, 0.0)?, &cfg.grid, &SeriesControl::default())?;
    let body = match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::new();
            header(&mut out, "wigner", cfg);
            out + &grid.to_csv()
        }
        OutputFormat::Json => grid.to_json()? + "\n",
    };
    Ok(CommandOutput::ok(body))
}

fn uniform_nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + i as f64 * h).collect()
}

/// Quadrature distribution `P(x)` at time `t`.
pub fn cmd_quaddist(cfg: &RunConfig) -> Result<CommandOutput> {
    let params = cfg.params.to_params()?;
    let xs = uniform_nodes(cfg.x_range[0], cfg.x_range[1], cfg.nodes);
    let ctrl = SeriesControl::default();
    let values = xs
        .par_iter()
        .map(|&x| quadrature_distribution(&params, cfg.t, x, &ctrl))
        .collect::<Result<Vec<f64>>>()?;
    let norm = trapezoid_samples(&values, xs[1] - xs[0]);
    let rows = xs.iter().zip(&values).map(|(&x, &v)| vec![x, v]).collect();
    render_table("quaddist", cfg, vec!["x", "P"], rows, Some(norm)).map(CommandOutput::ok)
}

/// Phase distribution `P(Θ)` on `[-π, π]` at time `t`.
pub fn cmd_phasedist(cfg: &RunConfig) -> Result<CommandOutput> {
    let params = cfg.params.to_params()?;
    let series = PhaseSeries::new(&params, cfg.t, ordering(cfg, -1.0)?, &default_phase_control())?;
    let dist = series.sample(cfg.nodes)?;
    let norm = dist.normalization();
    let rows = dist.theta_nodes.iter().zip(&dist.values).map(|(&th, &v)| vec![th, v]).collect();
    render_table("phasedist", cfg, vec!["theta", "P"], rows, Some(norm)).map(CommandOutput::ok)
}

/// Analytic-vs-oracle comparison. The report is always JSON, whatever
/// `format` says, and is emitted even when comparisons fail.
pub fn cmd_validate(cfg: &RunConfig) -> Result<CommandOutput> {
    let mut vc = ValidationConfig::default();
    if cfg.suite == Suite::Params {
        let name = cfg.preset.clone().unwrap_or_else(|| {
            let p = &cfg.params;
            format!("kappa={} chi={} alpha1={} alpha2={} delta={}", p.kappa, p.chi, p.alpha1, p.alpha2, p.delta)
        });
        vc.sets = vec![ParameterSet::new(name, cfg.params.to_params()?)];
    }
    if cfg.times != RunConfig::default().times {
        vc.times = cfg.times.times();
    }
    if let Some(tol) = cfg.tolerance {
        vc.moment_tol = tol;
        vc.distribution_tol = tol;
    }
    let report = run_validation(&vc)?;
    let body = report.to_json()? + "\n";
    Ok(CommandOutput { body, failed: !report.passed })
}

/// Summary line for stderr after `validate`.
pub fn describe_failure(err: &KerrError) -> String {
    let mut msg = format!("error: {err}");
    let mut source = std::error::Error::source(err);
    while let Some(s) = source {
        let _ = write!(msg, "\n  caused by: {s}");
        source = s.source();
    }
    msg
}
