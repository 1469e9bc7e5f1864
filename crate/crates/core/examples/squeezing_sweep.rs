//! S, Q and principal squeezing η against time for a weak and a strong
//! field, on and off resonance.
//!
//! ```text
//! cargo run --release --example squeezing_sweep [out.csv]
//! ```

use std::f64::consts::PI;
use std::fmt::Write as _;

use kerrlab::squeezing::sweep;
use kerrlab::CouplerParams;

fn main() -> kerrlab::Result<()> {
    let times: Vec<f64> = (0..=2000).map(|i| 4.0 * PI * i as f64 / 2000.0).collect();
    let mut csv = String::from("delta,alpha1,alpha2,t,S,Q,eta\n");
    for (delta, a1, a2) in [(0.0, 0.2, 0.2), (50.0, 0.2, 0.2), (0.0, 2.0, 0.0), (50.0, 2.0, 0.0)] {
        let p = CouplerParams::new(1.0, 0.5, delta, a1, a2)?;
        let samples = sweep(&p, &times);
        let min = |f: fn(&kerrlab::squeezing::SqueezingSample) -> f64| {
            samples.iter().map(|s| (f(s), s.t)).fold((f64::INFINITY, 0.0), |a, b| if b.0 < a.0 { b } else { a })
        };
        let (s_min, ts) = min(|s| s.s_factor);
        let (q_min, tq) = min(|s| s.q_factor);
        let (eta_min, te) = min(|s| s.eta);
        println!(
            "delta={delta:<4} alpha=({a1},{a2}): min S {s_min:+.4} at t={ts:.3}, min Q {q_min:+.4} at t={tq:.3}, \
             min eta {eta_min:+.4} at t={te:.3}"
        );
        for s in &samples {
            let _ = writeln!(csv, "{delta},{a1},{a2},{},{},{},{}", s.t, s.s_factor, s.q_factor, s.eta);
        }
    }
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, csv)?;
        println!("written to {path}");
    }
    Ok(())
}
