//! Runs the analytic-vs-Fock-space differential suite and prints a summary.
//!
//! ```text
//! cargo run --release --example oracle_validation [report.json]
//! ```

use std::time::Instant;

use kerrlab::oracle::{run_validation, ValidationConfig};

fn main() -> kerrlab::Result<()> {
    let cfg = ValidationConfig::default();
    let start = Instant::now();
    let report = run_validation(&cfg)?;
    println!(
        "{} comparisons over {} sets x {} times in {:.1?}",
        report.n_compared,
        cfg.sets.len(),
        cfg.times.len(),
        start.elapsed()
    );
    for s in &report.sets {
        println!("  {:<32} cutoff {:>3}  truncation loss {:.2e}", s.set, s.cutoff, s.trunc_loss);
    }
    println!("max |err| moments/squeezing: {:.3e}", report.max_abs_err_moments);
    println!("max |err| distributions:     {:.3e}", report.max_abs_err_distributions);
    for f in report.failures().take(10) {
        println!("FAIL {} {} t={:.4}: |err| {:.3e} > {:.1e}", f.set, f.quantity, f.t, f.abs_err, f.tolerance);
    }
    println!("{}", if report.passed { "all comparisons pass" } else { "some comparisons FAIL" });
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, report.to_json()?)?;
        println!("report written to {path}");
    }
    Ok(())
}
