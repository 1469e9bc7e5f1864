//! Phase distribution of mode 1, its moments and the phase variance.
//!
//! The distribution is a Fourier series in `Θ`,
//! `P(Θ) = (1/2π)[1 + 2 Re Σ_{k≥1} c_k e^{-ikΘ}]`, whose coefficients depend
//! only on `(t, s)`. [`PhaseSeries`] computes them once so a distribution can
//! be sampled at any number of angles.
//!
//! The phase window is fixed to `[-π, π]`; no unwrapping is applied, so
//! `⟨Θ⟩` of a distribution peaked at `±π` is window-dependent.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coupler::{evolve_amplitude, CouplerParams, KerrFactors};
use crate::error::{KerrError, Result};
use crate::numerics::{simpson_samples, trapezoid_richardson, trapezoid_samples};
use crate::phase_space::{quasiprob, OrderingParam, SeriesControl};
use crate::special::{ln_factorial, log_gamma};

/// Default number of trapezoid nodes for phase moments.
pub const DEFAULT_MOMENT_NODES: usize = 2048;
/// Richardson stopping tolerance for phase moments.
pub const MOMENT_TOL: f64 = 1e-8;

/// Truncation used for the phase series when the caller does not supply one.
pub fn default_phase_control() -> SeriesControl {
    SeriesControl::with_tol(1e-13)
}

/// Fourier coefficients `c_k` of the phase distribution at one `(t, s)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhaseSeries {
    pub t: f64,
    pub s: f64,
    /// `coeffs[k - 1]` is `c_k`.
    pub coeffs: Vec<C64>,
}

impl PhaseSeries {
    /// Sums `c_k = Σ_{n₁} Σ_{m ≤ n₁} (-1)^{n₁+m} (√c|ᾱ₁|)^{2n₁+k} Γ(m + k/2 + 1)
    /// / ((n₁-m)! (k+m)! m!) · e^{ikφ̄} Z(n₁, n₁+k)` over `n₁ + k ≤ N`.
    pub fn new(params: &CouplerParams, t: f64, s: OrderingParam, ctrl: &SeriesControl) -> Result<Self> {
        let a = evolve_amplitude(params, t);
        if a.modulus_sq == 0.0 {
            return Ok(Self { t, s: s.value(), coeffs: Vec::new() });
        }
        let ln_r = 0.5 * (s.width_factor() * a.modulus_sq).ln();
        let coeffs = ctrl.converge(|n_max| {
            let kerr = KerrFactors::new(params, t, n_max);
            // ln Γ(j/2 + 1) for j = 0..=3 n_max, all exact
            let ln_gamma_half: Vec<f64> =
                (0..=3 * n_max).map(|j| log_gamma(0.5 * j as f64 + 1.0).unwrap_or(f64::NAN)).collect();
            let mut coeffs = Vec::with_capacity(n_max);
            let mut shell = 0.0;
            for k in 1..=n_max {
                let base = C64::from_polar(1.0, k as f64 * a.phi_bar);
                let mut ck = C64::new(0.0, 0.0);
                for n1 in 0..=(n_max - k) {
                    let lead = (2 * n1 + k) as f64 * ln_r;
                    let mut inner = 0.0;
                    for m in 0..=n1 {
                        let ln_term = lead + ln_gamma_half[2 * m + k]
                            - ln_factorial(n1 - m)
                            - ln_factorial(k + m)
                            - ln_factorial(m);
                        let sign = if (n1 + m) % 2 == 0 { 1.0 } else { -1.0 };
                        inner += sign * ln_term.exp();
                    }
                    let term = base * kerr.get(n1, n1 + k) * inner;
                    ck += term;
                    if n1 + k == n_max {
                        shell += term.norm();
                    }
                }
                coeffs.push(ck);
            }
            (coeffs, shell)
        })?;
        Ok(Self { t, s: s.value(), coeffs })
    }

    pub fn density(&self, theta: f64) -> f64 {
        let step = C64::from_polar(1.0, -theta);
        let mut rot = step;
        let mut sum = 0.0;
        for c in &self.coeffs {
            sum += (c * rot).re;
            rot *= step;
        }
        (1.0 + 2.0 * sum) / (2.0 * PI)
    }

    /// `∫_{-π}^{π} Θ^l P(Θ) dΘ`: trapezoid from `n_nodes` intervals with
    /// doubling and Richardson extrapolation until the change is below `1e-8`.
    pub fn moment(&self, l: u32, n_nodes: usize) -> Result<f64> {
        if l == 0 {
            return Err(KerrError::domain("phase_moment", "order l must be >= 1"));
        }
        if n_nodes < 256 {
            return Err(KerrError::domain("phase_moment", format!("n_nodes = {n_nodes} < 256")));
        }
        Ok(trapezoid_richardson(|th| th.powi(l as i32) * self.density(th), -PI, PI, n_nodes, MOMENT_TOL, 10))
    }

    /// `⟨Θ²⟩ - ⟨Θ⟩²`.
    pub fn variance(&self, n_nodes: usize) -> Result<f64> {
        let m1 = self.moment(1, n_nodes)?;
        let m2 = self.moment(2, n_nodes)?;
        Ok(m2 - m1 * m1)
    }

    pub fn sample(&self, n_nodes: usize) -> Result<PhaseDistribution> {
        if n_nodes < 2 {
            return Err(KerrError::InvalidParams(format!("need at least 2 phase nodes, got {n_nodes}")));
        }
        let h = 2.0 * PI / (n_nodes - 1) as f64;
        let theta_nodes: Vec<f64> = (0..n_nodes).map(|i| -PI + i as f64 * h).collect();
        let values = theta_nodes.par_iter().map(|&th| self.density(th)).collect();
        Ok(PhaseDistribution { theta_nodes, values, s: self.s, t: self.t })
    }
}

/// Phase distribution sampled on uniform nodes spanning `[-π, π]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhaseDistribution {
    pub theta_nodes: Vec<f64>,
    pub values: Vec<f64>,
    pub s: f64,
    pub t: f64,
}

impl PhaseDistribution {
    /// Trapezoid integral over the nodes.
    pub fn normalization(&self) -> f64 {
        let n = self.values.len();
        let h = (self.theta_nodes[n - 1] - self.theta_nodes[0]) / (n - 1) as f64;
        trapezoid_samples(&self.values, h)
    }

    /// Indices of strict local maxima, wrapping around the window, sorted by
    /// decreasing value. The duplicated endpoint `Θ = π` is skipped.
    pub fn local_maxima(&self) -> Vec<usize> {
        let n = self.values.len() - 1;
        let v = &self.values[..n];
        let mut idx: Vec<usize> =
            (0..n).filter(|&i| v[i] > v[(i + n - 1) % n] && v[i] >= v[(i + 1) % n]).collect();
        idx.sort_by(|&a, &b| v[b].total_cmp(&v[a]));
        idx
    }

    pub fn argmax(&self) -> usize {
        (0..self.values.len()).max_by(|&a, &b| self.values[a].total_cmp(&self.values[b])).unwrap_or(0)
    }
}

pub fn phase_distribution(
    params: &CouplerParams,
    t: f64,
    s: OrderingParam,
    theta: f64,
    ctrl: &SeriesControl,
) -> Result<f64> {
    Ok(PhaseSeries::new(params, t, s, ctrl)?.density(theta))
}

pub fn phase_distribution_nodes(
    params: &CouplerParams,
    t: f64,
    s: OrderingParam,
    n_nodes: usize,
    ctrl: &SeriesControl,
) -> Result<PhaseDistribution> {
    PhaseSeries::new(params, t, s, ctrl)?.sample(n_nodes)
}

/// Radial integral of a numerical estimate, with a warning when the range is
/// too short for the state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialEstimate {
    pub value: f64,
    pub warning: Option<String>,
}

/// `∫₀^R r W(r e^{iθ}) dr` by composite Simpson on `nr` intervals.
pub fn phase_from_wigner(
    params: &CouplerParams,
    t: f64,
    s: OrderingParam,
    theta: f64,
    r_extent: f64,
    nr: usize,
    ctrl: &SeriesControl,
) -> Result<RadialEstimate> {
    if !(r_extent > 0.0) || nr < 2 {
        return Err(KerrError::InvalidParams(format!("bad radial window: extent {r_extent}, nr {nr}")));
    }
    let needed = params.epsilon_total().sqrt() + 5.0;
    let warning = (r_extent < needed)
        .then(|| format!("radial extent {r_extent} below sqrt(eps) + 5 = {needed:.4}; tail may be cut"));
    let dir = C64::from_polar(1.0, theta);
    let n = (nr.max(2) + 1) & !1;
    let h = r_extent / n as f64;
    let samples = (0..=n)
        .into_par_iter()
        .map(|i| {
            let r = i as f64 * h;
            quasiprob(params, t, s, dir * r, ctrl).map(|w| r * w)
        })
        .collect::<Result<Vec<f64>>>()?;
    let value = simpson_samples(&samples, h);
    Ok(RadialEstimate { value, warning })
}

pub fn phase_moment(params: &CouplerParams, t: f64, s: OrderingParam, l: u32, n_nodes: usize) -> Result<f64> {
    PhaseSeries::new(params, t, s, &default_phase_control())?.moment(l, n_nodes)
}

pub fn phase_variance(params: &CouplerParams, t: f64, s: OrderingParam) -> Result<f64> {
    PhaseSeries::new(params, t, s, &default_phase_control())?.variance(DEFAULT_MOMENT_NODES)
}

/// `(t, variance)` pairs, evaluated in parallel.
pub fn phase_variance_sweep(params: &CouplerParams, s: OrderingParam, times: &[f64]) -> Result<Vec<(f64, f64)>> {
    times.par_iter().map(|&t| phase_variance(params, t, s).map(|v| (t, v))).collect()
}
