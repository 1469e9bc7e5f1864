//! Associated Laguerre and Hermite evaluations: the stable recurrence
//! against the explicit sum, and the scaled sequences the series use.
//!
//! ```text
//! cargo run --release --example special_functions
//! ```

use kerrlab::special::{hermite, laguerre_binomial_scaled, laguerre_explicit_sum, laguerre_recurrence};

fn main() -> kerrlab::Result<()> {
    println!("{:>4} {:>4} {:>6} {:>24} {:>24} {:>10}", "n", "a", "x", "recurrence", "explicit sum", "rel diff");
    // the last row cancels about 25 digits, more than double-double absorbs;
    // the recurrence value there is -1.85808259513158e8
    for (n, a, x) in [(5, 0, 1.0), (13, 7, 10.0), (30, 3, 25.0), (60, 10, 40.0)] {
        let r = laguerre_recurrence(n, a, x);
        let e = laguerre_explicit_sum(n, a, x);
        println!("{n:>4} {a:>4} {x:>6} {r:>24.16e} {e:>24.16e} {:>10.2e}", ((r - e) / e).abs());
    }
    for (m, x) in [(4, 0.5), (10, 1.5), (20, -2.0)] {
        println!("H_{m}({x}) = {:.10e}", hermite(m, x)?);
    }
    // e^{-x/2} L_n^k(x) / C(n+k, n) stays bounded by one for x >= 0
    let seq = laguerre_binomial_scaled(200, 5, 150.0);
    println!("scaled L_n^5(150): n=0 {:.4e}, n=100 {:.4e}, n=200 {:.4e}", seq[0], seq[100], seq[200]);
    Ok(())
}
