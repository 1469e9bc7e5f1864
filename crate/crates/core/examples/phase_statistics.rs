//! Phase distribution snapshots and the phase-variance trace with its
//! collapse, subrevivals and revivals.
//!
//! ```text
//! cargo run --release --example phase_statistics
//! ```

use std::f64::consts::PI;

use kerrlab::phase_stats::{default_phase_control, phase_distribution_nodes, phase_variance_sweep};
use kerrlab::{CouplerParams, OrderingParam};

fn main() -> kerrlab::Result<()> {
    let q = OrderingParam::HUSIMI;
    let p = CouplerParams::new(1.0, 0.5, 0.0, 2.0, 2.0)?;
    for t in [0.0, PI / 4.0, 2.94, PI] {
        let d = phase_distribution_nodes(&p, t, q, 721, &default_phase_control())?;
        let peaks: Vec<String> = d
            .local_maxima()
            .iter()
            .take(3)
            .map(|&i| format!("{:+.4} ({:.4})", d.theta_nodes[i], d.values[i]))
            .collect();
        println!("t={t:.4}: normalization {:.8}, peaks {}", d.normalization(), peaks.join(", "));
    }

    let detuned = CouplerParams::new(1.0, 0.5, 50.0, 2.0, 2.0)?;
    let times: Vec<f64> = (0..=400).map(|i| 4.0 * PI * i as f64 / 400.0).collect();
    let trace = phase_variance_sweep(&detuned, q, &times)?;
    println!("phase variance, delta=50 (uniform value {:.4}):", PI * PI / 3.0);
    for (t, v) in trace.iter().step_by(10) {
        let bar = "*".repeat((v / (PI * PI / 3.0) * 40.0).round() as usize);
        println!("  t/pi={:>5.2} {v:>7.4} {bar}", t / PI);
    }
    Ok(())
}
