//! Quadrature squeezing factors `S(t)`, `Q(t)`, the homodyne-phase quadrature
//! variance and principal squeezing `η(t)`.
//!
//! Factors are normalized so that a coherent state gives exactly zero:
//! `S = 2⟨(ΔX)²⟩ - 1`, `Q = 2⟨(ΔY)²⟩ - 1`. Negative values signal squeezing.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coupler::{envelope, evolve_amplitude, moment, phase_drift, CouplerParams};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezingSample {
    pub t: f64,
    pub s_factor: f64,
    pub q_factor: f64,
    pub eta: f64,
}

/// `(S, Q)` from the `G₁, G₂, G₃` decomposition.
pub fn squeeze_factors(params: &CouplerParams, t: f64) -> (f64, f64) {
    let a = evolve_amplitude(params, t);
    let (x, y) = (a.alpha_x, a.alpha_y);
    let d1 = phase_drift(params, 1, t);
    let d2 = phase_drift(params, 2, t);
    let f1 = envelope(params, 1, t);
    let f2 = envelope(params, 2, t);

    let g1 = 2.0 * ((x * x - y * y) * d2.cos() + 2.0 * x * y * d2.sin()) * f2;
    let g2 = 4.0 * (x * d1.cos() + y * d1.sin()).powi(2) * f1 * f1;
    let g3 = 4.0 * (x * d1.sin() - y * d1.cos()).powi(2) * f1 * f1;

    let base = 2.0 * a.modulus_sq;
    (base + g1 - g2, base - g1 - g3)
}

/// Variance of `V_φ = [A e^{-iφ} + A† e^{iφ}]/√2`.
pub fn quadrature_variance(params: &CouplerParams, t: f64, phi: f64) -> f64 {
    let a1 = moment(params, t, 0, 1);
    let a2 = moment(params, t, 0, 2);
    let n = moment(params, t, 1, 1).re;
    let rot = num_complex::Complex64::from_polar(1.0, -phi);
    let mean = (a1 * rot).re;
    0.5 + (a2 * rot * rot).re + n - 2.0 * mean * mean
}

/// Principal squeezing `η = 2[⟨A†A⟩ - |⟨A⟩|² - |⟨A²⟩ - ⟨A⟩²|]`.
pub fn principal_squeezing(params: &CouplerParams, t: f64) -> f64 {
    let a1 = moment(params, t, 0, 1);
    let a2 = moment(params, t, 0, 2);
    let n = moment(params, t, 1, 1).re;
    2.0 * (n - a1.norm_sqr() - (a2 - a1 * a1).norm())
}

/// Closed form of `η` in terms of `|ᾱ₁|²`, `ε` and `χt` only.
pub fn principal_squeezing_closed_form(params: &CouplerParams, t: f64) -> f64 {
    let a = evolve_amplitude(params, t);
    let eps = params.epsilon_total();
    let chi_t = params.chi * t;
    let s2 = chi_t.sin().powi(2);
    let c2 = (2.0 * chi_t).cos();
    let e4 = (-4.0 * eps * s2).exp();
    let inner = 1.0 + (-8.0 * eps * s2 * c2).exp()
        - 2.0 * (-4.0 * eps * s2 * c2).exp() * (2.0 * chi_t - 4.0 * eps * s2 * (2.0 * chi_t).sin()).cos();
    2.0 * a.modulus_sq * (1.0 - e4 - e4 * inner.max(0.0).sqrt())
}

pub fn squeezing_sample(params: &CouplerParams, t: f64) -> SqueezingSample {
    let (s_factor, q_factor) = squeeze_factors(params, t);
    SqueezingSample { t, s_factor, q_factor, eta: principal_squeezing(params, t) }
}

/// Evaluates [`squeezing_sample`] on every time in `times`, in parallel.
pub fn sweep(params: &CouplerParams, times: &[f64]) -> Vec<SqueezingSample> {
    times.par_iter().map(|&t| squeezing_sample(params, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn weak() -> CouplerParams {
        CouplerParams::new(1.0, 0.5, 0.0, 0.2, 0.2).unwrap()
    }

    fn grid(t_max: f64, lambda: f64) -> Vec<f64> {
        // step ≤ π/(40λ)
        let step = PI / (40.0 * lambda.max(1.0));
        let n = (t_max / step).ceil() as usize;
        (0..=n).map(|i| i as f64 * t_max / n as f64).collect()
    }

    #[test]
    fn coherent_baseline() {
        for p in [
            weak(),
            CouplerParams::new(1.0, 0.5, 50.0, 2.0, 0.0).unwrap(),
            CouplerParams::new(0.3, 1.1, -4.0, 1.0, 2.5).unwrap(),
        ] {
            let (s, q) = squeeze_factors(&p, 0.0);
            assert!(s.abs() < 1e-12 && q.abs() < 1e-12);
            assert!(principal_squeezing(&p, 0.0).abs() < 1e-12);
            assert!((quadrature_variance(&p, 0.0, 0.77) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_coupler_keeps_coherence() {
        let p = CouplerParams::new(0.8, 0.0, 3.0, 1.7, -0.4).unwrap();
        for t in [0.4, 2.2, 7.9] {
            let (s, q) = squeeze_factors(&p, t);
            assert!(s.abs() < 1e-12 && q.abs() < 1e-12);
        }
    }

    #[test]
    fn special_time_values() {
        let p = weak();
        let (s, q) = squeeze_factors(&p, 2.0 * PI);
        assert!(s.abs() < 1e-10 && q.abs() < 1e-10);
        assert!(principal_squeezing(&p, 2.0 * PI).abs() < 1e-10);

        let want = -0.16 * (-0.32f64).exp();
        assert!((want + 0.11618).abs() < 1e-5);
        let (s, _) = squeeze_factors(&p, PI);
        assert!((s - want).abs() < 1e-12);
        assert!((principal_squeezing(&p, PI) - want).abs() < 1e-12);
        assert!((quadrature_variance(&p, PI, 0.0) - (s + 1.0) / 2.0).abs() < 1e-14);
        assert!((quadrature_variance(&p, PI, 0.0) - 0.44191).abs() < 1e-5);
    }

    #[test]
    fn variance_matches_factors_at_axes() {
        let p = CouplerParams::new(1.0, 0.5, 50.0, 2.0, 0.0).unwrap();
        for t in [0.3, 1.1, 5.0] {
            let (s, q) = squeeze_factors(&p, t);
            assert!((2.0 * quadrature_variance(&p, t, 0.0) - 1.0 - s).abs() < 1e-11);
            assert!((2.0 * quadrature_variance(&p, t, PI / 2.0) - 1.0 - q).abs() < 1e-11);
        }
    }

    #[test]
    fn principal_squeezing_is_phase_minimum() {
        for p in [weak(), CouplerParams::new(1.0, 0.5, 50.0, 2.0, 0.0).unwrap()] {
            for t in [0.7, PI, 4.1] {
                let n = 20_000;
                let min = (0..n)
                    .map(|i| 2.0 * quadrature_variance(&p, t, PI * i as f64 / n as f64) - 1.0)
                    .fold(f64::INFINITY, f64::min);
                // refine around the best grid point with golden section
                let f = |phi: f64| 2.0 * quadrature_variance(&p, t, phi) - 1.0;
                let best = (0..n)
                    .min_by(|&a, &b| {
                        f(PI * a as f64 / n as f64).total_cmp(&f(PI * b as f64 / n as f64))
                    })
                    .unwrap() as f64
                    * PI
                    / n as f64;
                let (mut lo, mut hi) = (best - PI / n as f64, best + PI / n as f64);
                let g = 0.5 * (5f64.sqrt() - 1.0);
                for _ in 0..80 {
                    let a = hi - g * (hi - lo);
                    let b = lo + g * (hi - lo);
                    if f(a) < f(b) { hi = b } else { lo = a }
                }
                let refined = f(0.5 * (lo + hi)).min(min);
                assert!((refined - principal_squeezing(&p, t)).abs() < 1e-8, "t={t}");
            }
        }
    }

    #[test]
    fn sum_rule_and_no_simultaneous_squeezing() {
        let p = weak();
        let alpha2 = 0.04;
        for t in grid(4.0 * PI, p.lambda()) {
            let (s, q) = squeeze_factors(&p, t);
            let f = envelope(&p, 1, t);
            assert!((s + q - 4.0 * alpha2 * (1.0 - f * f)).abs() < 1e-11);
            if s.min(q) < 0.0 {
                assert!(s + q >= -1e-12);
                assert!(!(s < 0.0 && q < 0.0));
            }
        }
    }

    #[test]
    fn half_period_reduction() {
        // S, Q at χt = m'π/2 for Δ = 0 and α₁ = α₂ = α
        for kappa in [1.0, 0.7] {
            let alpha = 0.2;
            let p = CouplerParams::new(kappa, 0.5, 0.0, alpha, alpha).unwrap();
            for mp in 1..=4 {
                let t = mp as f64 * PI / 2.0 / p.chi;
                let sign = if mp % 2 == 0 { 1.0 } else { -1.0 };
                let f2 = envelope(&p, 1, t).powi(2);
                let c2 = (t * p.lambda()).cos().powi(2);
                let s2 = (t * p.lambda()).sin().powi(2);
                let s_want = 2.0 * alpha * alpha * ((1.0 - sign) - 2.0 * (f2 - sign) * c2);
                let q_want = 2.0 * alpha * alpha * ((1.0 - sign) - 2.0 * (f2 - sign) * s2);
                let (s, q) = squeeze_factors(&p, t);
                assert!((s - s_want).abs() < 1e-10, "kappa={kappa} m'={mp}");
                assert!((q - q_want).abs() < 1e-10, "kappa={kappa} m'={mp}");
            }
        }
    }

    #[test]
    fn sample_invariants_and_closed_form() {
        for p in [
            weak(),
            CouplerParams::new(1.0, 0.5, 50.0, 0.2, 0.2).unwrap(),
            CouplerParams::new(1.0, 0.5, 0.0, 2.0, 0.0).unwrap(),
            CouplerParams::new(1.0, 0.5, 50.0, 2.0, 0.0).unwrap(),
            CouplerParams::new(1.0, 0.5, 0.0, 2.0, 2.0).unwrap(),
        ] {
            for t in grid(4.0 * PI, p.lambda()) {
                let smp = squeezing_sample(&p, t);
                assert!(smp.s_factor >= -1.0 && smp.q_factor >= -1.0 && smp.eta >= -1.0);
                assert!((smp.s_factor + 1.0) * (smp.q_factor + 1.0) >= 1.0 - 1e-10);
                assert!(smp.eta <= smp.s_factor + 1e-10 && smp.eta <= smp.q_factor + 1e-10);
                let cf = principal_squeezing_closed_form(&p, t);
                assert!((cf - smp.eta).abs() < 1e-9, "t={t}: {cf} vs {}", smp.eta);
            }
        }
    }

    #[test]
    fn weak_field_principal_squeezing_never_positive() {
        for delta in [0.0, 50.0] {
            let p = CouplerParams::new(1.0, 0.5, delta, 0.2, 0.2).unwrap();
            for t in grid(4.0 * PI, p.lambda()) {
                assert!(principal_squeezing(&p, t) <= 1e-12);
            }
        }
    }

    #[test]
    fn detuned_q_collapses_at_full_kerr_period() {
        // Δ = 50: |Q| vanishes at χt = mπ and peaks around χt = π/2
        for (a1, a2) in [(0.2, 0.2), (2.0, 0.0)] {
            let p = CouplerParams::new(1.0, 0.5, 50.0, a1, a2).unwrap();
            let at = |t: f64| squeeze_factors(&p, t).1.abs();
            assert!(at(2.0 * PI) < 1e-10 && at(4.0 * PI) < 1e-10);
            let window_max = |lo: f64, hi: f64| {
                (0..=4000).map(|i| at(lo + (hi - lo) * i as f64 / 4000.0)).fold(0.0, f64::max)
            };
            let near_collapse = window_max(2.0 * PI - 0.05, 2.0 * PI + 0.05);
            let mid = window_max(0.9 * PI, 1.1 * PI);
            assert!(mid > 10.0 * near_collapse, "{mid} vs {near_collapse}");
        }
    }
}
