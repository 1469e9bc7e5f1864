use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::density::{oracle_moment, oracle_phase_distribution, oracle_wigner, reduce_mode1};
use super::fock::{coherent_product_state, FockPropagator, TwoModeFockState};
use crate::coupler::{moment, CouplerParams};
use crate::error::Result;
use crate::phase_space::{quasiprob, OrderingParam, SeriesControl};
use crate::phase_stats::{default_phase_control, PhaseSeries};
use crate::squeezing::squeezing_sample;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterSet {
    pub name: String,
    pub params: CouplerParams,
}

impl ParameterSet {
    pub fn new(name: impl Into<String>, params: CouplerParams) -> Self {
        Self { name: name.into(), params }
    }
}

/// What to compare and how strictly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationConfig {
    pub sets: Vec<ParameterSet>,
    pub times: Vec<f64>,
    /// Moments `⟨A†ᵐAⁿ⟩` are compared for `m + n ≤ max_order`.
    pub max_order: usize,
    pub moment_tol: f64,
    pub distribution_tol: f64,
    /// Wigner probe points `(x, y)`, compared at `s = 0`.
    pub wigner_probes: Vec<[f64; 2]>,
    /// Phase probe angles, compared at `s = -1`.
    pub phase_probes: Vec<f64>,
    pub tail_tol: f64,
}

impl Default for ValidationConfig {
    /// Four parameter sets with `κ = 1`, `χ = 0.5` at 25 times in `[0, 4π]`.
    fn default() -> Self {
        let set = |a1: f64, a2: f64, delta: f64| {
            let p = CouplerParams::new(1.0, 0.5, delta, a1, a2).expect("valid preset");
            ParameterSet::new(format!("alpha1={a1} alpha2={a2} delta={delta}"), p)
        };
        let axis = [-1.5, 0.0, 1.5];
        Self {
            sets: vec![set(0.2, 0.2, 0.0), set(2.0, 0.0, 0.0), set(2.0, 0.0, 50.0), set(2.0, 2.0, 0.0)],
            times: (0..25).map(|i| 4.0 * PI * i as f64 / 24.0).collect(),
            max_order: 4,
            moment_tol: 1e-7,
            distribution_tol: 1e-5,
            wigner_probes: axis.iter().flat_map(|&y| axis.iter().map(move |&x| [x, y])).collect(),
            phase_probes: (0..9).map(|k| -PI + 2.0 * PI * k as f64 / 9.0).collect(),
            tail_tol: 1e-10,
        }
    }
}

impl ValidationConfig {
    /// Keeps only the sets matching `(α₁, α₂, Δ)`.
    pub fn restrict_to(&mut self, alpha1: f64, alpha2: f64, delta: f64) {
        self.sets.retain(|s| s.params.alpha1 == alpha1 && s.params.alpha2 == alpha2 && s.params.delta() == delta);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Compared {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl Compared {
    fn distance(self, other: Self) -> f64 {
        (self.as_complex() - other.as_complex()).norm()
    }

    fn as_complex(self) -> C64 {
        match self {
            Self::Real(v) => C64::new(v, 0.0),
            Self::Complex { re, im } => C64::new(re, im),
        }
    }
}

impl From<C64> for Compared {
    fn from(z: C64) -> Self {
        Self::Complex { re: z.re, im: z.im }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub set: String,
    pub quantity: String,
    pub t: f64,
    pub analytic: Compared,
    pub oracle: Compared,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ComparisonEntry {
    fn new(set: &str, quantity: String, t: f64, analytic: Compared, oracle: Compared, tolerance: f64) -> Self {
        let abs_err = analytic.distance(oracle);
        let scale = analytic.as_complex().norm();
        let rel_err = if scale > 0.0 { abs_err / scale } else { abs_err };
        Self { set: set.to_string(), quantity, t, analytic, oracle, abs_err, rel_err, tolerance, pass: abs_err <= tolerance }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetSummary {
    pub set: String,
    pub cutoff: usize,
    pub trunc_loss: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub n_compared: usize,
    pub n_failed: usize,
    pub max_abs_err_moments: f64,
    pub max_abs_err_distributions: f64,
    pub max_trunc_loss: f64,
    pub sets: Vec<SetSummary>,
    pub entries: Vec<ComparisonEntry>,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &ComparisonEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn compare_at(
    set: &ParameterSet,
    prop: &FockPropagator,
    initial: &TwoModeFockState,
    t: f64,
    cfg: &ValidationConfig,
) -> Result<Vec<ComparisonEntry>> {
    let p = &set.params;
    let name = set.name.as_str();
    let rho = reduce_mode1(&prop.evolve(initial, t)?);
    let mut out = Vec::new();

    for order in 0..=cfg.max_order {
        for m in 0..=order {
            let n = order - m;
            let a = moment(p, t, m, n);
            let o = oracle_moment(&rho, p, t, m, n)?;
            out.push(ComparisonEntry::new(name, format!("moment({m},{n})"), t, a.into(), o.into(), cfg.moment_tol));
        }
    }

    let a1 = oracle_moment(&rho, p, t, 0, 1)?;
    let a2 = oracle_moment(&rho, p, t, 0, 2)?;
    let nn = oracle_moment(&rho, p, t, 1, 1)?.re;
    let s = 2.0 * a2.re + 2.0 * nn - 4.0 * a1.re * a1.re;
    let q = -2.0 * a2.re + 2.0 * nn - 4.0 * a1.im * a1.im;
    let eta = 2.0 * (nn - a1.norm_sqr() - (a2 - a1 * a1).norm());
    let sample = squeezing_sample(p, t);
    for (label, an, or) in [("S", sample.s_factor, s), ("Q", sample.q_factor, q), ("eta", sample.eta, eta)] {
        out.push(ComparisonEntry::new(name, label.into(), t, Compared::Real(an), Compared::Real(or), cfg.moment_tol));
    }

    let framed = rho.in_rotating_frame(p, t);
    let ctrl = SeriesControl::default();
    for &[x, y] in &cfg.wigner_probes {
        let beta = C64::new(x, y);
        let an = quasiprob(p, t, OrderingParam::WIGNER, beta, &ctrl)?;
        let or = oracle_wigner(&framed, beta, 0.0)?;
        out.push(ComparisonEntry::new(
            name,
            format!("wigner({x},{y})"),
            t,
            Compared::Real(an),
            Compared::Real(or),
            cfg.distribution_tol,
        ));
    }

    let series = PhaseSeries::new(p, t, OrderingParam::HUSIMI, &default_phase_control())?;
    for &theta in &cfg.phase_probes {
        let an = series.density(theta);
        let or = oracle_phase_distribution(&framed, theta);
        out.push(ComparisonEntry::new(
            name,
            format!("phase({theta:.6})"),
            t,
            Compared::Real(an),
            Compared::Real(or),
            cfg.distribution_tol,
        ));
    }
    Ok(out)
}

/// Runs every comparison of `cfg`. Entries are ordered by set, then time.
pub fn run_validation(cfg: &ValidationConfig) -> Result<ValidationReport> {
    let mut entries = Vec::new();
    let mut sets = Vec::new();
    for set in &cfg.sets {
        let initial = coherent_product_state(set.params.alpha1, set.params.alpha2, cfg.tail_tol)?;
        let prop = FockPropagator::new(&set.params, initial.n_max())?;
        let per_time = cfg
            .times
            .par_iter()
            .map(|&t| compare_at(set, &prop, &initial, t, cfg))
            .collect::<Result<Vec<_>>>()?;
        entries.extend(per_time.into_iter().flatten());
        sets.push(SetSummary { set: set.name.clone(), cutoff: initial.n_max(), trunc_loss: initial.trunc_loss() });
    }
    let is_moment = |e: &&ComparisonEntry| {
        e.quantity.starts_with("moment") || matches!(e.quantity.as_str(), "S" | "Q" | "eta")
    };
    let max_abs_err_moments = entries.iter().filter(is_moment).map(|e| e.abs_err).fold(0.0, f64::max);
    let max_abs_err_distributions =
        entries.iter().filter(|e| !is_moment(e)).map(|e| e.abs_err).fold(0.0, f64::max);
    let n_failed = entries.iter().filter(|e| !e.pass).count();
    let max_trunc_loss = sets.iter().map(|s| s.trunc_loss).fold(0.0, f64::max);
    Ok(ValidationReport {
        passed: n_failed == 0 && max_trunc_loss <= cfg.tail_tol,
        n_compared: entries.len(),
        n_failed,
        max_abs_err_moments,
        max_abs_err_distributions,
        max_trunc_loss,
        sets,
        entries,
    })
}
