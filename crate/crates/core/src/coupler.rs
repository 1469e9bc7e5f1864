//! Coupler parameters, the exact mode-1 amplitude and the normally ordered
//! moments of the evolved mode-1 operator.
//!
//! All quantities refer to the operator `A₁(t) = a₁(t) exp[it(ω₁+ω₂)/2]`, i.e.
//! the frame rotating at the mean frequency. Only the detuning
//! `Δ = ω₁ - ω₂` survives in that frame. Time is the only evolution
//! parameter; a propagation distance `z` maps onto it through `t = z / v`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{KerrError, Result};

/// Physical parameters of the coupler with cross-Kerr constant fixed to `2χ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplerParams {
    pub omega1: f64,
    pub omega2: f64,
    pub chi: f64,
    pub kappa: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl CouplerParams {
    /// Parameters in the `(κ, χ, Δ, α₁, α₂)` form used throughout, with
    /// `ω₂ = 0` and `ω₁ = Δ`.
    pub fn new(kappa: f64, chi: f64, delta: f64, alpha1: f64, alpha2: f64) -> Result<Self> {
        Self::with_frequencies(delta, 0.0, chi, kappa, alpha1, alpha2)
    }

    pub fn with_frequencies(
        omega1: f64,
        omega2: f64,
        chi: f64,
        kappa: f64,
        alpha1: f64,
        alpha2: f64,
    ) -> Result<Self> {
        let p = Self { omega1, omega2, chi, kappa, alpha1, alpha2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("chi", self.chi),
            ("kappa", self.kappa),
            ("alpha1", self.alpha1),
            ("alpha2", self.alpha2),
        ];
        if let Some((name, v)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(KerrError::InvalidParams(format!("{name} = {v} is not finite")));
        }
        if self.kappa < 0.0 {
            return Err(KerrError::InvalidParams(format!("kappa = {} < 0", self.kappa)));
        }
        if self.chi < 0.0 {
            return Err(KerrError::InvalidParams(format!("chi = {} < 0", self.chi)));
        }
        Ok(())
    }

    /// Frequency mismatch `Δ = ω₁ - ω₂`.
    pub fn delta(&self) -> f64 {
        self.omega1 - self.omega2
    }

    /// Linear exchange rate `λ = sqrt(κ² + Δ²/4)`.
    pub fn lambda(&self) -> f64 {
        self.kappa.hypot(0.5 * self.delta())
    }

    /// Total intensity `ε = α₁² + α₂²`, a constant of motion.
    pub fn epsilon_total(&self) -> f64 {
        self.alpha1 * self.alpha1 + self.alpha2 * self.alpha2
    }

    /// Parameter set describing mode 2: amplitudes and frequencies swapped,
    /// which flips the sign of `Δ`.
    pub fn swapped(&self) -> Self {
        Self {
            omega1: self.omega2,
            omega2: self.omega1,
            alpha1: self.alpha2,
            alpha2: self.alpha1,
            ..*self
        }
    }

    /// Same parameters with the Kerr constant switched off.
    pub fn linear(&self) -> Self {
        Self { chi: 0.0, ..*self }
    }
}

/// The evolved coherent amplitude `ᾱ₁(t) = ᾱx + iᾱy` of mode 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolvedAmplitude {
    pub alpha_x: f64,
    pub alpha_y: f64,
    pub modulus_sq: f64,
    /// Polar angle of `ᾱ₁` in `(-π, π]`.
    pub phi_bar: f64,
}

impl EvolvedAmplitude {
    fn from_parts(alpha_x: f64, alpha_y: f64) -> Self {
        Self {
            alpha_x,
            alpha_y,
            modulus_sq: alpha_x * alpha_x + alpha_y * alpha_y,
            phi_bar: alpha_y.atan2(alpha_x),
        }
    }

    pub fn as_complex(&self) -> C64 {
        C64::new(self.alpha_x, self.alpha_y)
    }

    pub fn modulus(&self) -> f64 {
        self.modulus_sq.sqrt()
    }
}

/// `z = exp(-2iχt)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationFactor {
    pub z: C64,
}

impl RotationFactor {
    pub fn new(params: &CouplerParams, t: f64) -> Self {
        Self { z: C64::from_polar(1.0, -2.0 * params.chi * t) }
    }
}

/// `sin(λt)/λ`, with the `λ -> 0` limit `t`.
fn sinc_lambda(lambda: f64, t: f64) -> f64 {
    if lambda == 0.0 {
        t
    } else {
        (lambda * t).sin() / lambda
    }
}

/// Exact mode-1 amplitude `ᾱ₁(t)`.
pub fn evolve_amplitude(params: &CouplerParams, t: f64) -> EvolvedAmplitude {
    let lambda = params.lambda();
    let alpha_x = params.alpha1 * (lambda * t).cos();
    let alpha_y =
        -(params.alpha1 * 0.5 * params.delta() + params.alpha2 * params.kappa) * sinc_lambda(lambda, t);
    EvolvedAmplitude::from_parts(alpha_x, alpha_y)
}

/// Envelope `f(nχt) = exp[-2ε sin²(nχt)]`.
pub fn envelope(params: &CouplerParams, n: u32, t: f64) -> f64 {
    let s = (n as f64 * params.chi * t).sin();
    (-2.0 * params.epsilon_total() * s * s).exp()
}

/// Phase drift `n(n-1)χt + ε sin(2nχt)`, returned unreduced.
pub fn phase_drift(params: &CouplerParams, n: u32, t: f64) -> f64 {
    let n = n as f64;
    let chi_t = params.chi * t;
    n * (n - 1.0) * chi_t + params.epsilon_total() * (2.0 * n * chi_t).sin()
}

/// `exp[ε(z^k - 1)]` for integer `k` of either sign.
fn dephasing(eps: f64, chi_t: f64, k: i64) -> C64 {
    let half = k as f64 * chi_t;
    let s = half.sin();
    let re = -2.0 * eps * s * s;
    let im = -eps * (2.0 * half).sin();
    C64::from_polar(re.exp(), im)
}

/// `z^p` for integer `p`.
fn z_power(chi_t: f64, p: i64) -> C64 {
    let angle = (-2.0 * chi_t * p as f64).rem_euclid(std::f64::consts::TAU);
    C64::from_polar(1.0, angle)
}

/// Amplitude-free part of the moment formula:
/// `z^{n(n-1)/2 - m(m-1)/2} exp[ε(z^{n-m} - 1)]`.
pub fn kerr_factor(params: &CouplerParams, t: f64, m: usize, n: usize) -> C64 {
    let chi_t = params.chi * t;
    let tri = |j: usize| (j * j.saturating_sub(1) / 2) as i64;
    z_power(chi_t, tri(n) - tri(m)) * dephasing(params.epsilon_total(), chi_t, n as i64 - m as i64)
}

/// `⟨A₁^{†m}(t) A₁^n(t)⟩` for initially coherent modes with real amplitudes.
pub fn moment(params: &CouplerParams, t: f64, m: usize, n: usize) -> C64 {
    let a = evolve_amplitude(params, t).as_complex();
    a.powu(n as u32) * a.conj().powu(m as u32) * kerr_factor(params, t, m, n)
}

/// Table of [`kerr_factor`] values for all index pairs up to `n_max`, shared by
/// the phase-space series.
#[derive(Clone, Debug)]
pub struct KerrFactors {
    tri: Vec<C64>,
    deph: Vec<C64>,
}

impl KerrFactors {
    pub fn new(params: &CouplerParams, t: f64, n_max: usize) -> Self {
        let chi_t = params.chi * t;
        let eps = params.epsilon_total();
        let tri = (0..=n_max)
            .map(|j| z_power(chi_t, (j * j.saturating_sub(1) / 2) as i64))
            .collect();
        let deph = (0..=n_max).map(|k| dephasing(eps, chi_t, k as i64)).collect();
        Self { tri, deph }
    }

    pub fn n_max(&self) -> usize {
        self.tri.len() - 1
    }

    /// Factor for `(m, n)` = (creation power, annihilation power).
    #[inline]
    pub fn get(&self, m: usize, n: usize) -> C64 {
        let d = if n >= m { self.deph[n - m] } else { self.deph[m - n].conj() };
        self.tri[n] * self.tri[m].conj() * d
    }

    /// Modulus of the dephasing part for index difference `k`.
    #[inline]
    pub fn dephasing_modulus(&self, k: usize) -> f64 {
        self.deph[k].norm()
    }
}
