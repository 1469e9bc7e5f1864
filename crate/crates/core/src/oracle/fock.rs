use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::coupler::CouplerParams;
use crate::error::{KerrError, Result};
use crate::special::ln_factorial;

/// Two-mode pure state on the truncated space `n₁ + n₂ ≤ N_max`, stored block
/// by block: `blocks[N][n₁]` is the amplitude of `|n₁, N - n₁⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeFockState {
    blocks: Vec<Vec<C64>>,
    trunc_loss: f64,
}

impl TwoModeFockState {
    pub fn from_blocks(blocks: Vec<Vec<C64>>, trunc_loss: f64) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().enumerate().any(|(n, b)| b.len() != n + 1) {
            return Err(KerrError::InvalidParams("block N must hold N + 1 amplitudes".into()));
        }
        Ok(Self { blocks, trunc_loss })
    }

    pub fn n_max(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Probability discarded by the cutoff at construction.
    pub fn trunc_loss(&self) -> f64 {
        self.trunc_loss
    }

    pub fn amplitude(&self, n1: usize, n2: usize) -> C64 {
        self.blocks.get(n1 + n2).map_or(C64::new(0.0, 0.0), |b| b[n1])
    }

    pub fn block(&self, n: usize) -> &[C64] {
        &self.blocks[n]
    }

    pub fn block_probability(&self, n: usize) -> f64 {
        self.blocks[n].iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        (0..self.blocks.len()).map(|n| self.block_probability(n)).sum()
    }

    /// `⟨n₁ + n₂⟩`.
    pub fn total_number(&self) -> f64 {
        (0..self.blocks.len()).map(|n| n as f64 * self.block_probability(n)).sum()
    }
}

/// `e^{-α²/2} αⁿ/√(n!)` for real `α`.
fn poisson_amplitude(alpha: f64, n: usize) -> f64 {
    if alpha == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let sign = if alpha < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    sign * (-0.5 * alpha * alpha + n as f64 * alpha.abs().ln() - 0.5 * ln_factorial(n)).exp()
}

/// Poisson tail `Σ_{N > n_max} e^{-ε} ε^N / N!`, summed directly.
fn poisson_tail(eps: f64, n_max: usize) -> f64 {
    if eps == 0.0 {
        return 0.0;
    }
    let mut tail = 0.0;
    let mut n = n_max + 1;
    loop {
        let term = (-eps + n as f64 * eps.ln() - ln_factorial(n)).exp();
        tail += term;
        if (n as f64) > eps && term < 1e-18 * tail.max(1e-300) {
            return tail;
        }
        n += 1;
    }
}

/// Product of coherent states with real amplitudes. The cutoff starts at
/// `⌈ε + 10√ε + 20⌉` and grows until the discarded probability is below
/// `tail_tol`.
pub fn coherent_product_state(alpha1: f64, alpha2: f64, tail_tol: f64) -> Result<TwoModeFockState> {
    if !(tail_tol > 0.0) {
        return Err(KerrError::InvalidParams(format!("tail_tol = {tail_tol} must be positive")));
    }
    if !alpha1.is_finite() || !alpha2.is_finite() {
        return Err(KerrError::InvalidParams("amplitudes must be finite".into()));
    }
    let eps = alpha1 * alpha1 + alpha2 * alpha2;
    let mut n_max = (eps + 10.0 * eps.sqrt() + 20.0).ceil() as usize;
    while poisson_tail(eps, n_max) >= tail_tol {
        n_max += 1;
    }
    let blocks = (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|n1| C64::new(poisson_amplitude(alpha1, n1) * poisson_amplitude(alpha2, n - n1), 0.0))
                .collect()
        })
        .collect();
    Ok(TwoModeFockState { blocks, trunc_loss: poisson_tail(eps, n_max) })
}

/// Eigendecomposition of the Hamiltonian restricted to one photon-number
/// block: `H_N = scalar · 1 + V diag(E) Vᵀ`.
#[derive(Clone, Debug)]
struct BlockEigen {
    scalar: f64,
    energies: DVector<f64>,
    vectors: DMatrix<f64>,
}

/// Real symmetric part of the block-`N` Hamiltonian, basis ordered by `n₁`:
/// diagonal `Δ(n₁ - n₂)/2`, hopping `κ√((n₁+1) n₂)` between `n₁` and `n₁+1`.
/// The rest, `χN(N-1) + (ω₁+ω₂)N/2`, is a multiple of the identity.
pub fn block_hamiltonian(params: &CouplerParams, n: usize) -> (f64, DMatrix<f64>) {
    let half_delta = 0.5 * (params.omega1 - params.omega2);
    let nf = n as f64;
    let h = DMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i == j {
            half_delta * (2.0 * i as f64 - nf)
        } else if j == i + 1 {
            params.kappa * ((i + 1) as f64 * (n - i) as f64).sqrt()
        } else if i == j + 1 {
            params.kappa * ((j + 1) as f64 * (n - j) as f64).sqrt()
        } else {
            0.0
        }
    });
    let scalar = params.chi * nf * (nf - 1.0) + 0.5 * (params.omega1 + params.omega2) * nf;
    (scalar, h)
}

/// Time-independent block decompositions, reusable across evolution times.
#[derive(Clone, Debug)]
pub struct FockPropagator {
    blocks: Vec<BlockEigen>,
}

impl FockPropagator {
    pub fn new(params: &CouplerParams, n_max: usize) -> Result<Self> {
        params.validate()?;
        let blocks = (0..=n_max)
            .into_par_iter()
            .map(|n| {
                let (scalar, h) = block_hamiltonian(params, n);
                let eig = SymmetricEigen::new(h);
                BlockEigen { scalar, energies: eig.eigenvalues, vectors: eig.eigenvectors }
            })
            .collect();
        Ok(Self { blocks })
    }

    pub fn n_max(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn evolve(&self, state: &TwoModeFockState, t: f64) -> Result<TwoModeFockState> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(KerrError::InvalidParams(format!("evolution time t = {t} must be finite and >= 0")));
        }
        if state.n_max() > self.n_max() {
            return Err(KerrError::InvalidParams(format!(
                "state cutoff {} exceeds propagator cutoff {}",
                state.n_max(),
                self.n_max()
            )));
        }
        let blocks = state
            .blocks
            .par_iter()
            .zip(&self.blocks[..=state.n_max()])
            .map(|(amp, eig)| {
                let v = &eig.vectors;
                let dim = amp.len();
                // c = Vᵀ ψ, scaled by the eigenphases, then back with V
                let coeffs: Vec<C64> = (0..dim)
                    .map(|k| {
                        let proj: C64 = (0..dim).map(|i| amp[i] * v[(i, k)]).sum();
                        proj * C64::from_polar(1.0, -(eig.energies[k] + eig.scalar) * t)
                    })
                    .collect();
                (0..dim).map(|i| (0..dim).map(|k| coeffs[k] * v[(i, k)]).sum()).collect()
            })
            .collect();
        Ok(TwoModeFockState { blocks, trunc_loss: state.trunc_loss })
    }
}

/// Evolves `state` to time `t` under the coupler Hamiltonian.
pub fn evolve(state: &TwoModeFockState, params: &CouplerParams, t: f64) -> Result<TwoModeFockState> {
    FockPropagator::new(params, state.n_max())?.evolve(state, t)
}
