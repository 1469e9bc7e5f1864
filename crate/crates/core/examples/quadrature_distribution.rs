//! Quadrature distribution P(x) three ways at a cat time: the general
//! series, the closed form, and the marginal of the Wigner function.
//!
//! ```text
//! cargo run --release --example quadrature_distribution
//! ```

use std::f64::consts::PI;

use kerrlab::numerics::trapezoid_samples;
use kerrlab::phase_space::{quadrature_distribution, quadrature_distribution_cat, quadrature_from_wigner};
use kerrlab::{CouplerParams, SeriesControl};

fn main() -> kerrlab::Result<()> {
    let ctrl = SeriesControl::default();
    let p = CouplerParams::new(1.0, 0.5, 0.0, 2.0, 2.0)?;
    println!("{:>6} {:>14} {:>14} {:>14}", "x", "series", "closed form", "W marginal");
    for i in 0..=12 {
        let x = -3.0 + 0.5 * i as f64;
        let series = quadrature_distribution(&p, PI, x, &ctrl)?;
        let closed = quadrature_distribution_cat(&p, PI, x)?;
        let marginal = quadrature_from_wigner(&p, PI, x, 9.0, 600, &ctrl)?;
        println!("{x:>6.2} {series:>14.10} {closed:>14.10} {:>14.10}", marginal.value);
    }

    // away from the cat times only the series applies
    for (delta, t) in [(0.0, 6.36005), (50.0, 6.36005), (5f64.sqrt(), PI)] {
        let q = CouplerParams::new(1.0, 0.5, delta, 2.0, 0.0)?;
        let h = 0.02;
        let samples = (0..=1200).map(|i| quadrature_distribution(&q, t, -12.0 + h * i as f64, &ctrl)).collect::<kerrlab::Result<Vec<_>>>()?;
        println!("delta={delta:.4} t={t}: integral of P(x) = {:.12}", trapezoid_samples(&samples, h));
    }
    Ok(())
}
