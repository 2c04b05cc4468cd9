//! Small special-function helpers shared by the weight families.

/// `ln(k!)`. Exact summation below 256, Stirling series above.
pub fn ln_factorial(k: usize) -> f64 {
    if k < 256 {
        (2..=k).map(|i| (i as f64).ln()).sum()
    } else {
        let x = k as f64;
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln()
            + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0))
    }
}

/// Riemann zeta for `s > 1`: 64 direct terms plus an Euler–Maclaurin tail.
pub fn zeta(s: f64) -> f64 {
    debug_assert!(s > 1.0);
    const N: usize = 64;
    let head: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    let n = N as f64;
    let a = n.powf(-s);
    let tail = n * a / (s - 1.0) + a / 2.0 + s * a / n / 12.0
        - s * (s + 1.0) * (s + 2.0) * a / n.powi(3) / 720.0
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * a / n.powi(5) / 30240.0;
    head + tail
}

/// Absolute bound on the discarded tail of the power series below.
pub const SERIES_TAIL: f64 = 1e-15;

/// `sum_{k >= 1} z^(k-1) k^(-s)` for `0 <= z <= 1` (`= Li_s(z) / z`).
///
/// Summation stops once the geometric bound on the remaining terms drops
/// below [`SERIES_TAIL`]; `z = 1` is delegated to [`zeta`].
pub fn shifted_polylog(s: f64, z: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&z));
    if z == 0.0 {
        return 1.0;
    }
    if z >= 1.0 - 1e-13 {
        return zeta(s);
    }
    let mut sum = 0.0;
    let mut zk = 1.0;
    let mut k = 1usize;
    loop {
        let term = zk * (k as f64).powf(-s);
        sum += term;
        zk *= z;
        k += 1;
        // remaining terms are bounded by z^(k-1) k^(-s) / (1 - z)
        if zk * (k as f64).powf(-s) / (1.0 - z) < SERIES_TAIL || k > 400_000_000 {
            return sum;
        }
    }
}
