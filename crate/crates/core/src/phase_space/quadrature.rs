use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{compute_D, is_cat_time, OrderingParam, QuasiprobSeries, SeriesControl};
use crate::coupler::{evolve_amplitude, CouplerParams, KerrFactors};
use crate::error::{KerrError, Result};
use crate::numerics::trapezoid_samples;
use crate::special::hermite_scaled;

/// Distribution of the quadrature `x = Re β` from the Hermite triple series.
///
/// With `g_a = H_a(√2 x) 2^{-a/2} / a!` and `p_a = ᾱ₁^a g_a`, the density is
/// `√(2/π) e^{-2x²} Σ_{n₁,n₂} Σ_r (-|ᾱ₁|²)^r/r! · p*_{n₁-r} p_{n₂-r} · Z(n₁, n₂)`,
/// summed as the real diagonal plus twice the real upper triangle.
pub fn quadrature_distribution(params: &CouplerParams, t: f64, x: f64, ctrl: &SeriesControl) -> Result<f64> {
    let abar = evolve_amplitude(params, t).as_complex();
    let m2 = abar.norm_sqr();
    let pref = (2.0 / PI).sqrt() * (-2.0 * x * x).exp();
    let y = std::f64::consts::SQRT_2 * x;
    ctrl.converge(|n_max| {
        let kerr = KerrFactors::new(params, t, n_max);
        let g = hermite_scaled(n_max, y);
        let mut p = Vec::with_capacity(n_max + 1);
        let mut pow = C64::new(1.0, 0.0);
        for ga in &g {
            p.push(pow * ga);
            pow *= abar;
        }
        let mut q = Vec::with_capacity(n_max + 1);
        let mut cur = 1.0;
        q.push(cur);
        for r in 1..=n_max {
            cur *= -m2 / r as f64;
            q.push(cur);
        }
        let mut diag = 0.0;
        let mut upper = C64::new(0.0, 0.0);
        let mut shell = 0.0;
        for n1 in 0..=n_max {
            for n2 in n1..=n_max {
                let mut inner = C64::new(0.0, 0.0);
                for r in 0..=n1 {
                    inner += q[r] * p[n1 - r].conj() * p[n2 - r];
                }
                let term = inner * kerr.get(n1, n2);
                if n1 == n2 {
                    diag += term.re;
                } else {
                    upper += term;
                }
                if n2 == n_max {
                    shell += if n1 == n2 { term.norm() } else { 2.0 * term.norm() };
                }
            }
        }
        (pref * (diag + 2.0 * upper.re), pref * shell)
    })
}

/// Closed-form quadrature distribution at the cat times (Wigner marginal of
/// the cat closed form).
pub fn quadrature_distribution_cat(params: &CouplerParams, t: f64, x: f64) -> Result<f64> {
    if !is_cat_time(params, t) {
        return Err(KerrError::NotCatTime { chi_t: params.chi * t });
    }
    let a = evolve_amplitude(params, t);
    let d = compute_D(params, t);
    let (ax, ay) = (a.alpha_x, a.alpha_y);
    let g = (-2.0 * (x + ay).powi(2)).exp() + (-2.0 * (x - ay).powi(2)).exp();
    let interference = 2.0 * (-2.0 * (x * x + ay * ay + d)).exp() * (4.0 * x * ax).sin();
    Ok((g + interference) / (2.0 * PI).sqrt())
}

/// Result of a numerical marginal, with a warning when the integration
/// window is too narrow for the state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginalEstimate {
    pub value: f64,
    pub warning: Option<String>,
}

/// `∫ W(x + iy) dy` over `[-y_extent, y_extent]` with `ny` trapezoid intervals.
///
/// The integrand is analytic with Gaussian tails, so the trapezoid rule
/// converges geometrically once the window covers the state.
pub fn quadrature_from_wigner(
    params: &CouplerParams,
    t: f64,
    x: f64,
    y_extent: f64,
    ny: usize,
    ctrl: &SeriesControl,
) -> Result<MarginalEstimate> {
    if !(y_extent > 0.0) || ny < 2 {
        return Err(KerrError::InvalidParams(format!("bad marginal window: extent {y_extent}, ny {ny}")));
    }
    let a = evolve_amplitude(params, t);
    let needed = a.modulus() + 3.0;
    let warning = (y_extent < needed)
        .then(|| format!("y extent {y_extent} below |ᾱ₁| + 3 = {needed:.4}; marginal may be truncated"));
    let series = QuasiprobSeries::new(params, t, OrderingParam::WIGNER, a.as_complex());
    let h = 2.0 * y_extent / ny as f64;
    let samples = (0..=ny)
        .map(|j| series.eval(C64::new(x, -y_extent + j as f64 * h), ctrl))
        .collect::<Result<Vec<f64>>>()?;
    let value = trapezoid_samples(&samples, h);
    Ok(MarginalEstimate { value, warning })
}
