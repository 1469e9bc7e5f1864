use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use super::fock::TwoModeFockState;
use crate::coupler::CouplerParams;
use crate::error::{KerrError, Result};

/// Single-mode density matrix in the Fock basis `|0⟩ … |d-1⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDensityMatrix {
    rho: DMatrix<C64>,
}

impl ReducedDensityMatrix {
    pub fn from_matrix(rho: DMatrix<C64>) -> Result<Self> {
        if rho.nrows() != rho.ncols() || rho.nrows() == 0 {
            return Err(KerrError::InvalidParams("density matrix must be square and non-empty".into()));
        }
        Ok(Self { rho })
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn entry(&self, m: usize, n: usize) -> C64 {
        self.rho[(m, n)]
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.rho
    }

    pub fn trace(&self) -> C64 {
        self.rho.trace()
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `max |ρ_mn - ρ*_nm|`.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for m in 0..d {
            for n in 0..=m {
                worst = worst.max((self.rho[(m, n)] - self.rho[(n, m)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.rho.clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// State of `A = a e^{iφ}`, `φ = t(ω₁+ω₂)/2`: `ρ'_mn = ρ_mn e^{iφ(m-n)}`.
    pub fn in_rotating_frame(&self, params: &CouplerParams, t: f64) -> Self {
        let phi = 0.5 * t * (params.omega1 + params.omega2);
        let rho = DMatrix::from_fn(self.dim(), self.dim(), |m, n| {
            self.rho[(m, n)] * C64::from_polar(1.0, phi * (m as f64 - n as f64))
        });
        Self { rho }
    }
}

/// Partial trace over mode 2: `ρ_mn = Σ_k ψ(m, k) ψ*(n, k)`.
pub fn reduce_mode1(state: &TwoModeFockState) -> ReducedDensityMatrix {
    reduce(state, |s, a, b| s.amplitude(a, b))
}

/// Partial trace over mode 1.
pub fn reduce_mode2(state: &TwoModeFockState) -> ReducedDensityMatrix {
    reduce(state, |s, a, b| s.amplitude(b, a))
}

fn reduce(state: &TwoModeFockState, amp: impl Fn(&TwoModeFockState, usize, usize) -> C64) -> ReducedDensityMatrix {
    let d = state.n_max() + 1;
    let mut rho = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
    for m in 0..d {
        for n in 0..=m {
            // the traced index k runs while both kets stay inside the cutoff
            let v: C64 = (0..d - m).map(|k| amp(state, m, k) * amp(state, n, k).conj()).sum();
            rho[(m, n)] = v;
            rho[(n, m)] = v.conj();
        }
    }
    ReducedDensityMatrix { rho }
}

fn ln_fact(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Table of `ln n!` for `n < len`.
fn ln_fact_table(len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut acc = 0.0;
    for n in 0..len {
        if n > 1 {
            acc += (n as f64).ln();
        }
        out.push(acc);
    }
    out
}

/// `⟨a^{†m} aⁿ⟩` of a lab-frame reduced state, multiplied by the frame factor
/// `e^{it(ω₁+ω₂)(n-m)/2}`.
pub fn oracle_moment(
    rho: &ReducedDensityMatrix,
    params: &CouplerParams,
    t: f64,
    m: usize,
    n: usize,
) -> Result<C64> {
    let d = rho.dim();
    if m + n > d - 1 {
        return Err(KerrError::domain("oracle_moment", format!("order m + n = {} beyond cutoff {}", m + n, d - 1)));
    }
    let lf = ln_fact_table(d);
    // a^{†m} aⁿ |j⟩ = √(j! (j-n+m)!) / (j-n)! |j-n+m⟩
    let mut sum = C64::new(0.0, 0.0);
    for j in n..d {
        let l = j - n + m;
        if l >= d {
            break;
        }
        let c = (0.5 * (lf[j] + lf[l]) - lf[j - n]).exp();
        sum += rho.entry(j, l) * c;
    }
    let frame = C64::from_polar(1.0, 0.5 * t * (params.omega1 + params.omega2) * (n as f64 - m as f64));
    Ok(sum * frame)
}

/// `W(β, s) = Σ_mn ρ_mn ⟨n|T(β, s)|m⟩` with the Fock-basis kernel
/// `⟨n|T|m⟩ = (c/π) e^{-c|β|²} √(n! m!) Σ_j q^j (cβ)^{n-j} (cβ*)^{m-j} / (j! (n-j)! (m-j)!)`,
/// `c = 2/(1-s)`, `q = (s+1)/(s-1)`. `ρ` must already be in the frame of `A`.
///
/// For `s > 0` the `j` sum alternates with `|q| > 1` and loses accuracy
/// quickly; the kernel is meant for `s ≤ 0`.
pub fn oracle_wigner(rho: &ReducedDensityMatrix, beta: C64, s: f64) -> Result<f64> {
    if !(s < 1.0) {
        return Err(KerrError::domain("oracle_wigner", format!("s = {s} must be < 1")));
    }
    let d = rho.dim();
    let c = 2.0 / (1.0 - s);
    let q = (s + 1.0) / (s - 1.0);
    let lf = ln_fact_table(d);
    let r = c * beta.norm();
    let ln_r = r.ln();
    let arg = beta.arg();
    let mut total = C64::new(0.0, 0.0);
    for m in 0..d {
        for n in 0..d {
            let mut k = 0.0;
            let mut qj = 1.0;
            for j in 0..=m.min(n) {
                let p = n + m - 2 * j;
                let pow = if p == 0 { 0.0 } else { p as f64 * ln_r };
                k += qj * (0.5 * (lf[n] + lf[m]) - lf[j] - lf[n - j] - lf[m - j] + pow).exp();
                qj *= q;
            }
            total += rho.entry(m, n) * C64::from_polar(k, arg * (n as f64 - m as f64));
        }
    }
    let w = total * (c / PI) * (-c * beta.norm_sqr()).exp();
    if w.im.abs() > 1e-10 {
        return Err(KerrError::domain("oracle_wigner", format!("imaginary residue {:.3e}", w.im)));
    }
    Ok(w.re)
}

/// `ln Γ(h/2 + 1)` by the exact recursions from `Γ(1) = 1` and `Γ(1/2) = √π`.
fn ln_gamma_half_plus_one(h: usize) -> f64 {
    if h % 2 == 0 {
        ln_fact(h / 2)
    } else {
        // Γ(k + 3/2) = Γ(1/2) Π_{i=0}^{k} (i + 1/2)
        let k = (h - 1) / 2;
        0.5 * PI.ln() + (0..=k).map(|i| (i as f64 + 0.5).ln()).sum::<f64>()
    }
}

/// Radial integral of the Husimi function along `arg β = θ`:
/// `(1/2π) Σ_mn ρ_mn e^{i(n-m)θ} Γ((m+n)/2 + 1) / √(m! n!)`.
pub fn oracle_phase_distribution(rho: &ReducedDensityMatrix, theta: f64) -> f64 {
    let d = rho.dim();
    let lf = ln_fact_table(d);
    let mut sum = 0.0;
    for m in 0..d {
        for n in 0..d {
            let w = (ln_gamma_half_plus_one(m + n) - 0.5 * (lf[m] + lf[n])).exp();
            sum += (rho.entry(m, n) * C64::from_polar(w, (n as f64 - m as f64) * theta)).re;
        }
    }
    sum / (2.0 * PI)
}

/// `C(ζ, s) = e^{s|ζ|²/2} tr[ρ D(ζ)]` with
/// `⟨n|D(ζ)|m⟩ = e^{-|ζ|²/2} √(n! m!) Σ_j ζ^{n-j} (-ζ*)^{m-j} / (j! (n-j)! (m-j)!)`.
pub fn oracle_characteristic(rho: &ReducedDensityMatrix, zeta: C64, s: f64) -> C64 {
    let d = rho.dim();
    let lf = ln_fact_table(d);
    let mut total = C64::new(0.0, 0.0);
    for m in 0..d {
        for n in 0..d {
            let mut dnm = C64::new(0.0, 0.0);
            for j in 0..=m.min(n) {
                let scale = (0.5 * (lf[n] + lf[m]) - lf[j] - lf[n - j] - lf[m - j]).exp();
                dnm += zeta.powu((n - j) as u32) * (-zeta.conj()).powu((m - j) as u32) * scale;
            }
            total += rho.entry(m, n) * dnm;
        }
    }
    total * ((s - 1.0) * 0.5 * zeta.norm_sqr()).exp()
}
