//! Brute-force reference: truncated two-mode Fock-space evolution, the
//! reduced state of mode 1 and density-matrix evaluations of every quantity
//! the analytic modules produce.
//!
//! Nothing here calls the analytic amplitude or moment formulas; the only
//! shared piece is [`CouplerParams`](crate::coupler::CouplerParams).

mod density;
mod fock;
mod validate;

pub use density::{
    oracle_characteristic, oracle_moment, oracle_phase_distribution, oracle_wigner, reduce_mode1, reduce_mode2,
    ReducedDensityMatrix,
};
pub use fock::{block_hamiltonian, coherent_product_state, evolve, FockPropagator, TwoModeFockState};
pub use validate::{
    run_validation, Compared, ComparisonEntry, ParameterSet, SetSummary, ValidationConfig, ValidationReport,
};
