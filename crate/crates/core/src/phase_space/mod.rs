//! s-parameterized characteristic and quasiprobability functions of mode 1,
//! the cat-state closed forms and the quadrature distribution.
//!
//! Phase-space points use `β = x + iy`. The ordering parameter `s` selects
//! the Wigner function (`s = 0`), the Husimi Q function (`s = -1`) or anything
//! in between; `s = 1` (Glauber P) is rejected.
//!
//! The series evaluators share [`SeriesControl`]: both indices run up to a
//! common cap `N`, which doubles until the outermost shell (every term with
//! `max(n₁, n₂) = N`) contributes less than `tol` in absolute value.

mod grid;
mod quadrature;

pub use grid::{quasiprob_grid, GridBounds, PhaseSpaceGrid};
pub use quadrature::{
    quadrature_distribution, quadrature_distribution_cat, quadrature_from_wigner, MarginalEstimate,
};

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::coupler::{evolve_amplitude, CouplerParams, KerrFactors};
use crate::error::{KerrError, Result};
use crate::special::laguerre_binomial_scaled;

/// Ordering parameter `s < 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct OrderingParam(f64);

impl OrderingParam {
    pub const WIGNER: Self = Self(0.0);
    pub const HUSIMI: Self = Self(-1.0);

    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s >= 1.0 {
            return Err(KerrError::domain("OrderingParam", format!("s = {s} must be finite and < 1")));
        }
        Ok(Self(s))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `2/(1 - s)`, the inverse Gaussian width scale.
    pub fn width_factor(self) -> f64 {
        2.0 / (1.0 - self.0)
    }
}

impl TryFrom<f64> for OrderingParam {
    type Error = KerrError;

    fn try_from(s: f64) -> Result<Self> {
        Self::new(s)
    }
}

impl From<OrderingParam> for f64 {
    fn from(s: OrderingParam) -> f64 {
        s.0
    }
}

/// Truncation policy for the double and triple series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub start: usize,
    pub tol: f64,
    pub cap: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { start: 32, tol: 1e-12, cap: 512 }
    }
}

impl SeriesControl {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    /// Runs `eval(N)` for `N = start, 2·start, …` until the returned shell
    /// magnitude drops below `tol`. `eval` returns `(value, shell)`.
    pub fn converge<T>(&self, mut eval: impl FnMut(usize) -> (T, f64)) -> Result<T> {
        let mut n = self.start.max(1).min(self.cap);
        loop {
            let (value, shell) = eval(n);
            if shell < self.tol {
                return Ok(value);
            }
            if n >= self.cap {
                return Err(KerrError::Truncation { achieved: shell, tol: self.tol, cap: self.cap });
            }
            n = (2 * n).min(self.cap);
        }
    }
}

/// `C(ζ, t, s)` from the normally ordered moment series.
pub fn characteristic_function(
    params: &CouplerParams,
    t: f64,
    s: OrderingParam,
    zeta: C64,
    ctrl: &SeriesControl,
) -> Result<C64> {
    let abar = evolve_amplitude(params, t).as_complex();
    let a = zeta * abar.conj();
    let b = -zeta.conj() * abar;
    let gauss = ((s.value() - 1.0) * 0.5 * zeta.norm_sqr()).exp();
    ctrl.converge(|n_max| {
        let kerr = KerrFactors::new(params, t, n_max);
        let pa = scaled_powers(a, n_max);
        let pb = scaled_powers(b, n_max);
        let mut sum = C64::new(0.0, 0.0);
        let mut shell = 0.0;
        for n1 in 0..=n_max {
            for n2 in 0..=n_max {
                let term = pa[n1] * pb[n2] * kerr.get(n1, n2);
                sum += term;
                if n1 == n_max || n2 == n_max {
                    shell += term.norm();
                }
            }
        }
        (gauss * sum, gauss * shell)
    })
}

/// `z^n / n!` for `n = 0..=n_max`.
pub(crate) fn scaled_powers(z: C64, n_max: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut cur = C64::new(1.0, 0.0);
    out.push(cur);
    for n in 1..=n_max {
        cur = cur * z / n as f64;
        out.push(cur);
    }
    out
}

/// `W(β, t, s)` from the Laguerre double series.
///
/// Terms `(n₁, n₂)` and `(n₂, n₁)` are complex conjugates; the sum is taken as
/// the real diagonal plus twice the real part of the `n₂ > n₁` half. With
/// `k = n₂ - n₁` a pair contributes
/// `(-w)^{n₁}/n₁! · v^k/k! · L_{n₁}^k(x)/C(n₁+k, n₁)` times the Kerr factor,
/// where `w = c|ᾱ|²`, `v = cᾱβ*`, `x = c|β|²` and `c = 2/(1-s)`.
pub fn quasiprob(
    params: &CouplerParams,
    t: f64,
    s: OrderingParam,
    beta: C64,
    ctrl: &SeriesControl,
) -> Result<f64> {
    let abar = evolve_amplitude(params, t).as_complex();
    QuasiprobSeries::new(params, t, s, abar).eval(beta, ctrl)
}

/// Per-time state of the quasiprobability series, reused across `β` points.
pub(crate) struct QuasiprobSeries<'a> {
    params: &'a CouplerParams,
    t: f64,
    c: f64,
    abar: C64,
}

impl<'a> QuasiprobSeries<'a> {
    pub(crate) fn new(params: &'a CouplerParams, t: f64, s: OrderingParam, abar: C64) -> Self {
        Self { params, t, c: s.width_factor(), abar }
    }

    pub(crate) fn eval(&self, beta: C64, ctrl: &SeriesControl) -> Result<f64> {
        let c = self.c;
        let x = c * beta.norm_sqr();
        let w = c * self.abar.norm_sqr();
        let v = c * self.abar * beta.conj();
        // R carries exp(-x/2); the other half of exp(-x) sits in the prefactor
        let pref = c / PI * (-0.5 * x).exp();
        ctrl.converge(|n_max| {
            let kerr = KerrFactors::new(self.params, self.t, n_max);
            let wn: Vec<f64> = {
                let mut out = Vec::with_capacity(n_max + 1);
                let mut cur = 1.0;
                out.push(cur);
                for n in 1..=n_max {
                    cur *= -w / n as f64;
                    out.push(cur);
                }
                out
            };
            let vk = scaled_powers(v, n_max);
            let mut diag = 0.0;
            let mut upper = C64::new(0.0, 0.0);
            let mut shell = 0.0;
            for (k, &vk) in vk.iter().enumerate() {
                let len = n_max - k;
                let r = laguerre_binomial_scaled(len, k, x);
                let weight = if k == 0 { 1.0 } else { 2.0 };
                for n in 0..=len {
                    let term = vk * (wn[n] * r[n]) * kerr.get(n, n + k);
                    if k == 0 {
                        diag += term.re;
                    } else {
                        upper += term;
                    }
                    if n + k == n_max {
                        shell += weight * term.norm();
                    }
                }
            }
            (pref * (diag + 2.0 * upper.re), pref * shell)
        })
    }
}

/// Cat-component data at the cat times: `D = ε - |ᾱ₁|²` and the component
/// amplitude `iᾱ₁` (the other component is its negative).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatParams {
    pub d: f64,
    pub component: C64,
}

/// `D = ε - |ᾱ₁(t)|²`, clamped at zero against rounding.
#[allow(non_snake_case)]
pub fn compute_D(params: &CouplerParams, t: f64) -> f64 {
    (params.epsilon_total() - evolve_amplitude(params, t).modulus_sq).max(0.0)
}

pub fn cat_params(params: &CouplerParams, t: f64) -> CatParams {
    let a = evolve_amplitude(params, t).as_complex();
    CatParams { d: compute_D(params, t), component: C64::i() * a }
}

/// Whether `χt` sits on `(m' + 1/2)π` within relative tolerance `1e-9`.
pub fn is_cat_time(params: &CouplerParams, t: f64) -> bool {
    let chi_t = params.chi * t;
    if chi_t <= 0.0 {
        return false;
    }
    let m = (chi_t / PI - 0.5).round();
    if m < 0.0 {
        return false;
    }
    let target = (m + 0.5) * PI;
    (chi_t - target).abs() <= 1e-9 * target
}

/// Closed-form quasiprobability at the cat times `χt = (m' + 1/2)π`.
///
/// Two Gaussians at `±iᾱ₁` plus an interference term damped by
/// `exp[-c(|β|² + D)] · exp[2sε/(1-s)]`. The second factor is one for the
/// Wigner function and accounts for the extra smoothing of the
/// cross term `|iᾱ₁⟩⟨-iᾱ₁|` at other orderings.
pub fn cat_quasiprob(params: &CouplerParams, t: f64, s: OrderingParam, beta: C64) -> Result<f64> {
    if !is_cat_time(params, t) {
        return Err(KerrError::NotCatTime { chi_t: params.chi * t });
    }
    let abar = evolve_amplitude(params, t).as_complex();
    let c = s.width_factor();
    let d = compute_D(params, t);
    let eps = params.epsilon_total();
    let comp = C64::i() * abar;
    let g_plus = (-c * (beta - comp).norm_sqr()).exp();
    let g_minus = (-c * (beta + comp).norm_sqr()).exp();
    let phase = 2.0 * c * (beta * abar.conj()).re;
    let damp = (-c * (beta.norm_sqr() + d) + 2.0 * s.value() * eps / (1.0 - s.value())).exp();
    Ok(c / (2.0 * PI) * (g_plus + g_minus) + c / PI * damp * phase.sin())
}

/// Single displaced Gaussian `c/π · exp(-c|β - ᾱ₁|²)`: the state at `χt = m'π`.
pub fn coherent_quasiprob(params: &CouplerParams, t: f64, s: OrderingParam, beta: C64) -> f64 {
    let abar = evolve_amplitude(params, t).as_complex();
    let c = s.width_factor();
    c / PI * (-c * (beta - abar).norm_sqr()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::associated_laguerre;

    fn fig3a() -> CouplerParams {
        CouplerParams::new(1.0, 0.5, 0.0, 2.0, 0.0).unwrap()
    }

    #[test]
    fn ordering_param_bounds() {
        assert!(OrderingParam::new(1.0).is_err());
        assert!(OrderingParam::new(1.5).is_err());
        assert!(OrderingParam::new(f64::NAN).is_err());
        assert_eq!(OrderingParam::new(-1.0).unwrap(), OrderingParam::HUSIMI);
        let json = serde_json::to_string(&OrderingParam::new(-0.5).unwrap()).unwrap();
        assert_eq!(json, "-0.5");
        assert!(serde_json::from_str::<OrderingParam>("1.0").is_err());
    }

    #[test]
    fn characteristic_function_at_origin_is_one() {
        let p = fig3a();
        for s in [0.0, -1.0, 0.4] {
            let c = characteristic_function(
                &p, 1.234, OrderingParam::new(s).unwrap(), C64::new(0.0, 0.0), &SeriesControl::default(),
            )
            .unwrap();
            assert_eq!(c, C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn characteristic_function_linear_limit() {
        let p = CouplerParams::new(1.0, 0.0, 2.0, 1.5, 0.5).unwrap();
        let t = 0.9;
        let s = OrderingParam::new(-0.3).unwrap();
        let a = evolve_amplitude(&p, t).as_complex();
        for zeta in [C64::new(0.3, 0.1), C64::new(-1.0, 0.7)] {
            let got = characteristic_function(&p, t, s, zeta, &SeriesControl::default()).unwrap();
            let want = ((s.value() - 1.0) * 0.5 * zeta.norm_sqr() + zeta * a.conj() - zeta.conj() * a).exp();
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn quasiprob_examples() {
        let p = fig3a();
        let ctrl = SeriesControl::default();
        let t = std::f64::consts::PI;
        let x = PI / 16.0;
        let closed = (2.0 * (-2.0 * (x * x + 4.0)).exp() + 2.0 * (-2.0 * x * x).exp() * (-8.0 * x).sin()) / PI;
        let w = quasiprob(&p, t, OrderingParam::WIGNER, C64::new(x, 0.0), &ctrl).unwrap();
        assert!((w - closed).abs() < 1e-9);
        assert!((w + 0.589).abs() < 1e-3);
        let w0 = quasiprob(&p, t, OrderingParam::WIGNER, C64::new(0.0, 0.0), &ctrl).unwrap();
        assert!((w0 - 2.0 / PI * (-8.0f64).exp()).abs() < 1e-12);
        // χt = π: coherent peak
        let tc = 2.0 * PI;
        let peak = evolve_amplitude(&p, tc).as_complex();
        let v = quasiprob(&p, tc, OrderingParam::WIGNER, peak, &ctrl).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-10);
    }

    #[test]
    fn pairing_matches_full_unpaired_sum() {
        // direct evaluation over all (n1, n2), negative Laguerre superscripts
        // included, has a vanishing imaginary part and the same real part
        let p = CouplerParams::new(1.0, 0.5, 3.0, 1.1, 0.6).unwrap();
        let t = 2.1;
        let s = OrderingParam::new(-0.4).unwrap();
        let c = s.width_factor();
        let abar = evolve_amplitude(&p, t).as_complex();
        let n_max = 60;
        let kerr = KerrFactors::new(&p, t, n_max);
        for beta in [C64::new(0.4, -0.9), C64::new(-1.3, 0.2), C64::new(0.05, 0.0)] {
            let x = c * beta.norm_sqr();
            let mut sum = C64::new(0.0, 0.0);
            for n1 in 0..=n_max {
                for n2 in 0..=n_max {
                    let k = n2 as i64 - n1 as i64;
                    let lag = associated_laguerre(n1 as i64, k, x).unwrap();
                    let sign = if n1 % 2 == 0 { 1.0 } else { -1.0 };
                    let mut coef = abar.powu(n2 as u32) * abar.conj().powu(n1 as u32) * sign;
                    coef *= c.powi(n2 as i32) / crate::special::ln_factorial(n2).exp();
                    let bpow = if k >= 0 { beta.conj().powu(k as u32) } else { beta.conj().powu((-k) as u32).inv() };
                    sum += coef * bpow * lag * kerr.get(n1, n2);
                }
            }
            let full = sum * (c / PI) * (-x).exp();
            let paired = quasiprob(&p, t, s, beta, &SeriesControl::default()).unwrap();
            assert!(full.im.abs() < 1e-10, "imag {}", full.im);
            assert!((full.re - paired).abs() < 1e-10);
        }
    }

    #[test]
    fn d_parameter_examples() {
        let t = PI;
        assert!(compute_D(&fig3a(), t).abs() < 1e-12);
        let b = CouplerParams::new(1.0, 0.5, 0.0, 2.0, 2.0).unwrap();
        assert!((compute_D(&b, t) - 4.0).abs() < 1e-12);
        let c = CouplerParams::new(1.0, 0.5, 5f64.sqrt(), 2.0, 0.0).unwrap();
        assert!((compute_D(&c, t) - 16.0 / 9.0).abs() < 1e-12);
        assert!((compute_D(&c, t) - 1.7778).abs() < 1e-4);
        // Δ = 0 form
        for t in [0.3, 1.0, 2.5, 4.4] {
            let p = CouplerParams::new(0.8, 0.5, 0.0, 1.3, -0.7).unwrap();
            let lt = p.lambda() * t;
            let want = 1.3f64.powi(2) * lt.sin().powi(2) + 0.7f64.powi(2) * lt.cos().powi(2);
            assert!((compute_D(&p, t) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn cat_lattice_precondition() {
        let p = fig3a();
        assert!(is_cat_time(&p, PI));
        assert!(is_cat_time(&p, 3.0 * PI));
        assert!(!is_cat_time(&p, 2.0 * PI));
        assert!(!is_cat_time(&p, 0.0));
        assert!(!is_cat_time(&p, PI * (1.0 + 1e-7)));
        assert!(matches!(
            cat_quasiprob(&p, 2.0, OrderingParam::WIGNER, C64::new(0.0, 0.0)),
            Err(KerrError::NotCatTime { .. })
        ));
    }

    #[test]
    fn cat_examples() {
        let p = fig3a();
        let w0 = cat_quasiprob(&p, PI, OrderingParam::WIGNER, C64::new(0.0, 0.0)).unwrap();
        assert!((w0 - 2.0 / PI * (-8.0f64).exp()).abs() < 1e-15);
        assert!((w0 - 2.135e-4).abs() < 1e-6);
        // D = 4: interference suppressed by e^{-8} at s = 0
        let b = CouplerParams::new(1.0, 0.5, 0.0, 2.0, 2.0).unwrap();
        let beta = C64::new(0.3, 0.1);
        let with = cat_quasiprob(&b, PI, OrderingParam::WIGNER, beta).unwrap();
        let comp = C64::i() * evolve_amplitude(&b, PI).as_complex();
        let gauss = (((-2.0) * (beta - comp).norm_sqr()).exp() + ((-2.0) * (beta + comp).norm_sqr()).exp()) / PI;
        let interference = with - gauss;
        let bound = 2.0 / PI * (-2.0 * (beta.norm_sqr() + 4.0)).exp();
        assert!(interference.abs() <= bound * (1.0 + 1e-12));
        // vacuum limit
        let v = CouplerParams::new(1.0, 0.5, 0.0, 0.0, 0.0).unwrap();
        for s in [0.0, -1.0, -0.3] {
            let s = OrderingParam::new(s).unwrap();
            let c = s.width_factor();
            let got = cat_quasiprob(&v, PI, s, beta).unwrap();
            assert!((got - c / PI * (-c * beta.norm_sqr()).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn cat_closed_form_matches_series_off_wigner() {
        let ctrl = SeriesControl::default();
        for (a1, a2) in [(2.0, 0.0), (0.2, 0.2), (2.0, 2.0)] {
            let p = CouplerParams::new(1.0, 0.5, 0.0, a1, a2).unwrap();
            for s in [-1.0, -0.5, 0.3] {
                let s = OrderingParam::new(s).unwrap();
                for beta in [C64::new(0.2, 1.7), C64::new(-0.8, -0.4), C64::new(0.0, 0.0)] {
                    let series = quasiprob(&p, PI, s, beta, &ctrl).unwrap();
                    let closed = cat_quasiprob(&p, PI, s, beta).unwrap();
                    assert!((series - closed).abs() < 1e-9, "{a1},{a2} s={s:?} β={beta}");
                }
            }
        }
    }

    #[test]
    fn coherent_limit_matches_gaussian() {
        let ctrl = SeriesControl::default();
        let p = CouplerParams::new(1.0, 0.5, 2.0, 1.5, 0.8).unwrap();
        for t in [2.0 * PI, 4.0 * PI] {
            for s in [0.0, -1.0] {
                let s = OrderingParam::new(s).unwrap();
                for i in 0..21 {
                    for j in 0..21 {
                        let beta = C64::new(-3.0 + 0.3 * i as f64, -3.0 + 0.3 * j as f64);
                        let got = quasiprob(&p, t, s, beta, &ctrl).unwrap();
                        assert!((got - coherent_quasiprob(&p, t, s, beta)).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn truncation_failure_reports_bound() {
        let p = CouplerParams::new(1.0, 0.5, 0.0, 2.0, 2.0).unwrap();
        let ctrl = SeriesControl { start: 4, tol: 1e-12, cap: 8 };
        match quasiprob(&p, 1.0, OrderingParam::WIGNER, C64::new(1.0, 1.0), &ctrl) {
            Err(KerrError::Truncation { achieved, cap, .. }) => {
                assert_eq!(cap, 8);
                assert!(achieved >= 1e-12);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }
}
