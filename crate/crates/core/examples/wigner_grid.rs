//! Wigner function of mode 1 at `χt = π/2`: a two-component cat for
//! `α = (2, 0)` and a near mixture for `α = (2, 2)`. Prints a coarse shaded
//! map of each grid.
//!
//! ```text
//! cargo run --release --example wigner_grid [s]
//! ```

use std::f64::consts::PI;

use kerrlab::phase_space::{compute_D, quasiprob_grid, GridBounds};
use kerrlab::{CouplerParams, OrderingParam, SeriesControl};

fn shade(v: f64, scale: f64) -> char {
    let r = v / scale;
    match r {
        r if r < -0.5 => '#',
        r if r < -0.1 => '=',
        r if r < 0.05 => ' ',
        r if r < 0.3 => '.',
        r if r < 0.6 => 'o',
        _ => '@',
    }
}

fn main() -> kerrlab::Result<()> {
    let s: f64 = std::env::args().nth(1).map(|a| a.parse().expect("s must be a number")).unwrap_or(0.0);
    let s = OrderingParam::new(s)?;
    let bounds = GridBounds::new(-5.0, 5.0, -5.0, 5.0, 201, 201)?;
    for (a1, a2) in [(2.0, 0.0), (2.0, 2.0)] {
        let p = CouplerParams::new(1.0, 0.5, 0.0, a1, a2)?;
        let g = quasiprob_grid(&p, PI, s, &bounds, &SeriesControl::default())?;
        let (lo, hi) = g.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        println!(
            "alpha=({a1},{a2}) s={}: D={:.4}, normalization {:.8}, min {lo:.4}, max {hi:.4}",
            s.value(),
            compute_D(&p, PI),
            g.normalization
        );
        let scale = hi.max(-lo);
        for j in (0..g.ny()).step_by(10).rev() {
            let row: String = (0..g.nx()).step_by(5).map(|i| shade(g.value(i, j), scale)).collect();
            println!("  |{row}|");
        }
    }
    Ok(())
}
