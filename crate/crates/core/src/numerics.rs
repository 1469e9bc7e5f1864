//! One-dimensional quadrature rules used by the marginal, radial and moment
//! integrals.

/// Composite Simpson rule on `n` intervals (`n` is rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = (n.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Composite trapezoid rule on `n` intervals.
pub fn trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for i in 1..n {
        sum += f(a + i as f64 * h);
    }
    sum * h
}

/// Composite Simpson rule on pre-sampled values `f(a + i h)`; the number of
/// intervals `samples.len() - 1` must be even.
pub fn simpson_samples(samples: &[f64], h: f64) -> f64 {
    let n = samples.len() - 1;
    debug_assert!(n >= 2 && n % 2 == 0);
    let inner: f64 = samples[1..n]
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v })
        .sum();
    (samples[0] + samples[n] + inner) * h / 3.0
}

/// Composite trapezoid rule on pre-sampled values `f(a + i h)`.
pub fn trapezoid_samples(samples: &[f64], h: f64) -> f64 {
    let n = samples.len() - 1;
    h * (samples.iter().sum::<f64>() - 0.5 * (samples[0] + samples[n]))
}

/// Trapezoid rule with interval doubling and one Richardson step, starting
/// from `n0` intervals, until successive extrapolated values differ by less
/// than `tol` (or `max_doublings` is reached).
pub fn trapezoid_richardson<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    n0: usize,
    tol: f64,
    max_doublings: usize,
) -> f64 {
    let mut n = n0.max(2);
    let mut coarse = trapezoid(&f, a, b, n);
    let mut prev_extrap: Option<f64> = None;
    for _ in 0..max_doublings {
        // reuse the coarse sum: only the new midpoints need evaluating
        let h = (b - a) / n as f64;
        let mid: f64 = (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum();
        let fine = 0.5 * coarse + 0.5 * h * mid;
        let extrap = fine + (fine - coarse) / 3.0;
        if let Some(p) = prev_extrap {
            if (extrap - p).abs() < tol {
                return extrap;
            }
        }
        prev_extrap = Some(extrap);
        coarse = fine;
        n *= 2;
    }
    prev_extrap.unwrap_or(coarse)
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn step<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }

    // seed on a coarse uniform split so narrow features are not skipped
    let pieces = 16;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = lo + h;
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = h / 6.0 * (fa + 4.0 * fm + fb);
            step(&f, lo, hi, fa, fm, fb, whole, tol / pieces as f64, 40)
        })
        .sum()
}
