//! Cat-state diagnostics at `χt = π/2`: the D parameter, purity of the
//! simulated reduced state, and the closed-form quasiprobability against the
//! general series.
//!
//! ```text
//! cargo run --release --example cat_states
//! ```

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use kerrlab::oracle::{coherent_product_state, reduce_mode1, FockPropagator};
use kerrlab::phase_space::{cat_params, cat_quasiprob, quasiprob};
use kerrlab::{CouplerParams, OrderingParam, SeriesControl};

fn main() -> kerrlab::Result<()> {
    let ctrl = SeriesControl::default();
    for (delta, a1, a2) in [(0.0, 2.0, 0.0), (5f64.sqrt(), 2.0, 0.0), (0.0, 2.0, 2.0), (0.0, 0.2, 0.2)] {
        let p = CouplerParams::new(1.0, 0.5, delta, a1, a2)?;
        let cat = cat_params(&p, PI);
        let state = coherent_product_state(a1, a2, 1e-14)?;
        let rho = reduce_mode1(&FockPropagator::new(&p, state.n_max())?.evolve(&state, PI)?);
        let mut worst = 0.0f64;
        for s in [0.0, -0.5, -1.0] {
            let s = OrderingParam::new(s)?;
            for i in 0..=20 {
                for j in 0..=20 {
                    let beta = C64::new(-4.0 + 0.4 * i as f64, -4.0 + 0.4 * j as f64);
                    worst = worst.max((quasiprob(&p, PI, s, beta, &ctrl)? - cat_quasiprob(&p, PI, s, beta)?).abs());
                }
            }
        }
        println!(
            "delta={delta:.4} alpha=({a1},{a2}): D={:.6}, components ±({:+.4}{:+.4}i), purity {:.6}, max |series - closed| {worst:.2e}",
            cat.d,
            cat.component.re,
            cat.component.im,
            rho.purity(),
        );
    }
    Ok(())
}
