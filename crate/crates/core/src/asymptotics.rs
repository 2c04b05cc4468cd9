//! Limit constants for the colour fractions and for `I/n`, `M/n`, `N/n`.
//!
//! With `G` the generating function of the tilted offspring law and `q` the
//! root of `q = G(1 - q)` in `[0, 1]`, write `g = G'(1 - q)`. The limiting
//! fractions of red, orange and green vertices are
//!
//! ```text
//! red    = q / (1 + g)
//! orange = 2 q g / (1 + g)
//! green  = (1 - q + (1 - 2q) g) / (1 + g)
//! ```
//!
//! and `I/n -> q`, `M/n -> 1 - q`, `N/n -> 2q - 1`. Without a tilted law
//! (zero radius of convergence) every fraction tends to red.

use serde::Serialize;
use thiserror::Error;

use crate::weights::{Regime, RegimeInfo, WeightError, WeightFamily};

const TOL: f64 = 1e-12;
const MAX_ITER: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("no sign change for G(1 - q) - q on [0, 1]: f(0) = {f0}, f(1) = {f1}")]
    BracketFailure { f0: f64, f1: f64 },
    #[error("bisection stopped at residual {residual:e}")]
    NoConvergence { residual: f64 },
    #[error("regime {0} has no generating function")]
    MissingLaw(u8),
    #[error(transparent)]
    Weights(#[from] WeightError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitConstants {
    pub q: f64,
    pub q_tilde: f64,
    pub p_green: f64,
    pub p_orange: f64,
    pub p_red: f64,
    #[serde(rename = "lim_I")]
    pub lim_i: f64,
    #[serde(rename = "lim_M")]
    pub lim_m: f64,
    #[serde(rename = "lim_N")]
    pub lim_n: f64,
    pub regime: u8,
}

/// Root of `q = G(1 - q)` on `[0, 1]` by bisection.
pub fn solve_q(g: impl Fn(f64) -> f64) -> Result<f64, AsymptoticsError> {
    let f = |q: f64| g(1.0 - q) - q;
    let (f0, f1) = (f(0.0), f(1.0));
    if !(f0 > 0.0 && f1 < 0.0) {
        return Err(AsymptoticsError::BracketFailure { f0, f1 });
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    // Bisect down to adjacent doubles; f is decreasing so the bracket holds.
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let q = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    let residual = f(q).abs();
    if residual > TOL {
        return Err(AsymptoticsError::NoConvergence { residual });
    }
    Ok(q)
}

/// Colour probabilities from `q` and `G'`. Regime 3 ignores both and gives
/// all mass to red; `q` is then reported as 1, matching `I/n -> 1`.
pub fn colour_limits(g_prime: impl Fn(f64) -> f64, q: f64, regime: Regime) -> LimitConstants {
    let (q, q_tilde, p_green, p_orange, p_red) = match regime {
        Regime::Three => (1.0, 0.0, 0.0, 0.0, 1.0),
        Regime::One | Regime::Two => {
            let gp = g_prime(1.0 - q);
            let den = 1.0 + gp;
            let p_red = q / den;
            let p_orange = 2.0 * q * gp / den;
            let p_green = (1.0 - q + (1.0 - 2.0 * q) * gp) / den;
            (q, gp / den, p_green, p_orange, p_red)
        }
    };
    let (lim_i, lim_m, lim_n) = stat_limits_for(q, regime);
    LimitConstants {
        q,
        q_tilde,
        p_green,
        p_orange,
        p_red,
        lim_i,
        lim_m,
        lim_n,
        regime: regime.number(),
    }
}

fn stat_limits_for(q: f64, regime: Regime) -> (f64, f64, f64) {
    match regime {
        Regime::Three => (1.0, 0.0, 1.0),
        _ => (q, 1.0 - q, 2.0 * q - 1.0),
    }
}

/// Limits of `(I/n, M/n, N/n)`.
pub fn stat_limits(lc: &LimitConstants) -> (f64, f64, f64) {
    (lc.lim_i, lc.lim_m, lc.lim_n)
}

pub fn limits_for_info(info: &RegimeInfo) -> Result<LimitConstants, AsymptoticsError> {
    match (&info.pi, info.regime) {
        (_, Regime::Three) => Ok(colour_limits(|_| 0.0, 1.0, Regime::Three)),
        (Some(pi), regime) => {
            let q = solve_q(|x| pi.pgf(x))?;
            Ok(colour_limits(|x| pi.pgf_prime(x), q, regime))
        }
        (None, regime) => Err(AsymptoticsError::MissingLaw(regime.number())),
    }
}

pub fn limits_for_family(w: &WeightFamily) -> Result<LimitConstants, AsymptoticsError> {
    limits_for_info(&w.classify()?)
}
