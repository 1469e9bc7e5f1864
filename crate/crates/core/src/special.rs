//! Special functions consumed by the closed-form series: log-Gamma,
//! associated Laguerre and physicists' Hermite polynomials.
//!
//! Besides the pointwise evaluators this module provides *scaled* sequences
//! (`laguerre_binomial_scaled`, `hermite_scaled`) that the phase-space series
//! iterate over. The scalings keep every intermediate bounded so that the
//! double and triple sums never overflow at truncation orders of a few hundred.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{KerrError, Result};

const LN_FACT_TABLE: usize = 4096;

fn ln_fact_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACT_TABLE);
        let mut acc = 0.0_f64;
        t.push(0.0);
        for k in 1..LN_FACT_TABLE {
            acc += (k as f64).ln();
            t.push(acc);
        }
        t
    })
}

/// `ln n!`, exact summation for the table range and Lanczos beyond it.
pub fn ln_factorial(n: usize) -> f64 {
    match ln_fact_table().get(n) {
        Some(&v) => v,
        None => lanczos_ln_gamma(n as f64 + 1.0),
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // ln Γ(x) = ln Γ(x + 1) - ln x, only reached for 0 < x < 1/2
        return lanczos_ln_gamma(x + 1.0) - x.ln();
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// `ln Γ(x)` for `x > 0`.
///
/// Integers and half-integers (the only arguments the phase series needs) are
/// evaluated exactly from factorial tables; other arguments use a Lanczos
/// approximation.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(KerrError::domain("log_gamma", format!("argument {x} is not positive")));
    }
    let twice = 2.0 * x;
    if twice.fract() == 0.0 && twice < (LN_FACT_TABLE as f64) {
        let m = twice as usize;
        if m % 2 == 0 {
            return Ok(ln_factorial(m / 2 - 1));
        }
        // Γ(n + 1/2) = (2n)! √π / (4^n n!)
        let n = (m - 1) / 2;
        return Ok(ln_factorial(2 * n) - (n as f64) * 4f64.ln() - ln_factorial(n)
            + 0.5 * PI.ln());
    }
    Ok(lanczos_ln_gamma(x))
}

/// Generalized binomial coefficient `C(p, q)` for integer `p` (possibly
/// negative) and `q >= 0`.
fn binomial_int(p: i64, q: usize) -> f64 {
    let mut b = 1.0;
    for i in 0..q {
        b *= (p - i as i64) as f64 / (i + 1) as f64;
    }
    b
}

/// `L_n^a(x)` from the explicit finite sum
/// `Σ_j C(n + a, n - j) (-x)^j / j!`, valid for any integer `a`.
///
/// The alternating sum cancels heavily for large `x`, so it is accumulated in
/// double-double arithmetic with exact integer binomials. Past roughly 25
/// cancelled digits (`n = 60, x = 40`) even that runs out, which is why
/// [`associated_laguerre`] switches to the recurrence above order 20.
pub fn laguerre_explicit_sum(n: usize, a: i64, x: f64) -> f64 {
    let p = n as i64 + a;
    let mut sum = DoubleDouble::ZERO;
    let mut xj = DoubleDouble::from(1.0); // (-x)^j / j!
    for j in 0..=n {
        if j > 0 {
            xj = xj.mul_f64(-x).div_f64(j as f64);
        }
        let b = match binomial_exact(p, n - j) {
            Some(b) => DoubleDouble::from_i128(b),
            None => DoubleDouble::from(binomial_int(p, n - j)),
        };
        sum = sum.add(b.mul(xj));
    }
    sum.hi + sum.lo
}

/// `C(p, q)` in exact integer arithmetic, `None` on overflow.
fn binomial_exact(p: i64, q: usize) -> Option<i128> {
    let mut b: i128 = 1;
    for i in 0..q as i128 {
        b = b.checked_mul(p as i128 - i)? / (i + 1);
    }
    Some(b)
}

/// Unevaluated sum `hi + lo` carrying roughly 32 significant digits.
#[derive(Clone, Copy, Debug)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    fn from(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    fn from_i128(v: i128) -> Self {
        let hi = v as f64;
        let lo = (v - hi as i128) as f64;
        Self::normalize(hi, lo)
    }

    fn normalize(a: f64, b: f64) -> Self {
        let s = a + b;
        Self { hi: s, lo: b - (s - a) }
    }

    fn add(self, o: Self) -> Self {
        let s = self.hi + o.hi;
        let v = s - self.hi;
        let e = (self.hi - (s - v)) + (o.hi - v);
        Self::normalize(s, e + self.lo + o.lo)
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p) + self.hi * o.lo + self.lo * o.hi;
        Self::normalize(p, e)
    }

    fn mul_f64(self, v: f64) -> Self {
        self.mul(Self::from(v))
    }

    fn div_f64(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let r = self.add(Self::from(q1).mul_f64(-d));
        Self::normalize(q1, r.hi / d)
    }
}

/// `L_n^a(x)` from the three-term recurrence in `n`.
pub fn laguerre_recurrence(n: usize, a: i64, x: f64) -> f64 {
    let a = a as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Associated Laguerre polynomial `L_n^a(x)` for integer `a` of either sign.
///
/// Negative superscripts use `L_n^{-k}(x) = (-x)^k (n-k)!/n! L_{n-k}^k(x)` when
/// `n >= k`; below that the explicit sum applies. Orders above 20 go through
/// the recurrence.
pub fn associated_laguerre(n: i64, a: i64, x: f64) -> Result<f64> {
    if n < 0 {
        return Err(KerrError::domain("associated_laguerre", format!("order {n} < 0")));
    }
    let n = n as usize;
    if a < 0 {
        let k = (-a) as usize;
        if n >= k {
            let scale = (ln_factorial(n - k) - ln_factorial(n)).exp();
            let inner = associated_laguerre((n - k) as i64, k as i64, x)?;
            return Ok((-x).powi(k as i32) * scale * inner);
        }
        return Ok(laguerre_explicit_sum(n, a, x));
    }
    if n <= 20 {
        Ok(laguerre_explicit_sum(n, a, x))
    } else {
        Ok(laguerre_recurrence(n, a, x))
    }
}

/// Physicists' Hermite polynomial `H_m(x)`.
pub fn hermite(m: i64, x: f64) -> Result<f64> {
    if m < 0 {
        return Err(KerrError::domain("hermite", format!("order {m} < 0")));
    }
    let mut prev = 1.0;
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * x;
    for k in 1..m {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `R_n = L_n^k(x) / C(n + k, n) · exp(-x/2)` for `n = 0..=n_max`.
///
/// For `x >= 0` every entry is bounded by one in magnitude.
pub fn laguerre_binomial_scaled(n_max: usize, k: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let kf = k as f64;
    let r0 = (-0.5 * x).exp();
    out.push(r0);
    if n_max == 0 {
        return out;
    }
    out.push(r0 * (1.0 + kf - x) / (1.0 + kf));
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 + kf - x) * out[n] - nf * out[n - 1]) / (nf + kf + 1.0);
        out.push(next);
    }
    out
}

/// `g_a = H_a(x) · 2^{-a/2} / a!` for `a = 0..=n_max`.
pub fn hermite_scaled(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    let s2x = std::f64::consts::SQRT_2 * x;
    out.push(s2x);
    for a in 1..n_max {
        let next = (s2x * out[a] - out[a - 1]) / (a + 1) as f64;
        out.push(next);
    }
    out
}
