//! Offspring weight sequences, their regime classification and the tilted
//! offspring law.
//!
//! A simply generated tree with weights `w` gives a plane tree `T` with `n`
//! vertices probability proportional to `prod_v w[outdeg(v)]`. With
//! `phi(x) = sum w_k x^k` and `psi(x) = x phi'(x) / phi(x)`, the family falls
//! into one of three regimes depending on the radius of convergence `rho` of
//! `phi` and on `nu = lim psi(x)` as `x -> rho`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::numeric::{ln_factorial, shifted_polylog, zeta};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("invalid family spec {spec:?}: {msg}")]
    Parse { spec: String, msg: String },
    #[error("invalid weights: {0}")]
    Invalid(String),
    #[error("tilt parameter {tau} outside the radius of convergence")]
    OutOfRadius { tau: f64 },
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

/// Default mean of the `powerlaw` family when only the exponent is given.
pub const DEFAULT_POWERLAW_MEAN: f64 = 0.5;

const BISECTION_TOL: f64 = 1e-12;
const BISECTION_MAX_ITER: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightFamily {
    /// `w_k = lambda^k / k!`.
    Poisson { lambda: f64 },
    /// `w_k = p^k`.
    Geometric { p: f64 },
    /// Outdegrees 0 and 2 only.
    FullBinary { w0: f64, w2: f64 },
    /// Weights equal to the probability law `pi_k = c k^-(1 + theta)` for
    /// `k >= 1`, with `c = mean / zeta(theta)` and the rest of the mass at 0.
    PowerLaw { theta: f64, mean: f64 },
    /// `w_k = (k!)^alpha`, handled in the log domain.
    Factorial { alpha: f64 },
    /// Finite list `w_0, ..., w_K`.
    Explicit(Vec<f64>),
}

impl WeightFamily {
    pub fn poisson(lambda: f64) -> Result<Self, WeightError> {
        Self::Poisson { lambda }.validated()
    }

    pub fn geometric(p: f64) -> Result<Self, WeightError> {
        Self::Geometric { p }.validated()
    }

    pub fn full_binary(w0: f64, w2: f64) -> Result<Self, WeightError> {
        Self::FullBinary { w0, w2 }.validated()
    }

    pub fn power_law(theta: f64, mean: f64) -> Result<Self, WeightError> {
        Self::PowerLaw { theta, mean }.validated()
    }

    pub fn factorial(alpha: f64) -> Result<Self, WeightError> {
        Self::Factorial { alpha }.validated()
    }

    pub fn explicit(weights: Vec<f64>) -> Result<Self, WeightError> {
        Self::Explicit(weights).validated()
    }

    fn validated(self) -> Result<Self, WeightError> {
        let bad = |msg: &str| Err(WeightError::Invalid(msg.to_string()));
        let pos = |x: f64| x.is_finite() && x > 0.0;
        match &self {
            Self::Poisson { lambda } if !pos(*lambda) => return bad("poisson needs lambda > 0"),
            Self::Geometric { p } if !(pos(*p) && *p < 1.0) => {
                return bad("geometric needs 0 < p < 1")
            }
            Self::FullBinary { w0, w2 } if !(pos(*w0) && pos(*w2)) => {
                return bad("binary needs w0 > 0 and w2 > 0")
            }
            Self::PowerLaw { theta, mean } => {
                if !(theta.is_finite() && *theta > 1.0) {
                    return bad("powerlaw needs theta > 1");
                }
                let max_mean = zeta(*theta) / zeta(1.0 + theta);
                if !(pos(*mean) && *mean < max_mean) {
                    return Err(WeightError::Invalid(format!(
                        "powerlaw mean must lie in (0, {max_mean}) so that w_0 > 0"
                    )));
                }
            }
            Self::Factorial { alpha } if !pos(*alpha) => return bad("factorial needs alpha > 0"),
            Self::Explicit(w) => {
                if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return bad("explicit weights must be finite and nonnegative");
                }
                if w.first().is_none_or(|&w0| w0 <= 0.0) {
                    return bad("explicit weights need w_0 > 0");
                }
                if !w.iter().skip(1).any(|&x| x > 0.0) {
                    return bad("explicit weights need some w_k > 0 with k >= 1");
                }
            }
            _ => {}
        }
        Ok(self)
    }

    fn power_law_params(theta: f64, mean: f64) -> (f64, f64) {
        let c = mean / zeta(theta);
        let p0 = 1.0 - c * zeta(1.0 + theta);
        (p0, c)
    }

    /// `ln w_k`, `-inf` when `w_k = 0`.
    pub fn log_weight(&self, k: usize) -> f64 {
        match self {
            Self::Poisson { lambda } => k as f64 * lambda.ln() - ln_factorial(k),
            Self::Geometric { p } => k as f64 * p.ln(),
            Self::FullBinary { w0, w2 } => match k {
                0 => w0.ln(),
                2 => w2.ln(),
                _ => f64::NEG_INFINITY,
            },
            Self::PowerLaw { theta, mean } => {
                let (p0, c) = Self::power_law_params(*theta, *mean);
                if k == 0 {
                    p0.ln()
                } else {
                    c.ln() - (1.0 + theta) * (k as f64).ln()
                }
            }
            Self::Factorial { alpha } => alpha * ln_factorial(k),
            Self::Explicit(w) => w.get(k).map_or(f64::NEG_INFINITY, |x| x.ln()),
        }
    }

    pub fn weight(&self, k: usize) -> f64 {
        self.log_weight(k).exp()
    }

    pub fn is_supported(&self, k: usize) -> bool {
        match self {
            Self::FullBinary { .. } => k == 0 || k == 2,
            Self::Explicit(w) => w.get(k).is_some_and(|&x| x > 0.0),
            _ => true,
        }
    }

    /// Largest supported degree for finite families.
    pub fn max_degree(&self) -> Option<usize> {
        match self {
            Self::FullBinary { .. } => Some(2),
            Self::Explicit(w) => w.iter().rposition(|&x| x > 0.0),
            _ => None,
        }
    }

    /// Supported degrees `k <= cap`, including 0.
    pub fn support_upto(&self, cap: usize) -> Vec<usize> {
        let top = self.max_degree().map_or(cap, |m| m.min(cap));
        (0..=top).filter(|&k| self.is_supported(k)).collect()
    }

    /// Radius of convergence of `phi`.
    pub fn rho(&self) -> f64 {
        match self {
            Self::Poisson { .. } | Self::FullBinary { .. } | Self::Explicit(_) => f64::INFINITY,
            Self::Geometric { p } => 1.0 / p,
            Self::PowerLaw { .. } => 1.0,
            Self::Factorial { .. } => 0.0,
        }
    }

    /// `phi(x)` for `0 <= x <= rho`; `+inf` beyond the radius.
    pub fn phi(&self, x: f64) -> f64 {
        if x > self.rho() {
            return f64::INFINITY;
        }
        match self {
            Self::Poisson { lambda } => (lambda * x).exp(),
            Self::Geometric { p } => 1.0 / (1.0 - p * x),
            Self::FullBinary { w0, w2 } => w0 + w2 * x * x,
            Self::PowerLaw { theta, mean } => {
                let (p0, c) = Self::power_law_params(*theta, *mean);
                p0 + c * x * shifted_polylog(1.0 + theta, x)
            }
            Self::Factorial { .. } => {
                if x == 0.0 {
                    1.0
                } else {
                    f64::INFINITY
                }
            }
            Self::Explicit(w) => w.iter().rev().fold(0.0, |acc, &c| acc * x + c),
        }
    }

    pub fn phi_prime(&self, x: f64) -> f64 {
        if x > self.rho() {
            return f64::INFINITY;
        }
        match self {
            Self::Poisson { lambda } => lambda * (lambda * x).exp(),
            Self::Geometric { p } => p / (1.0 - p * x).powi(2),
            Self::FullBinary { w2, .. } => 2.0 * w2 * x,
            Self::PowerLaw { theta, mean } => {
                let (_, c) = Self::power_law_params(*theta, *mean);
                c * shifted_polylog(*theta, x)
            }
            Self::Factorial { .. } => {
                // w_1 = 1
                if x == 0.0 {
                    1.0
                } else {
                    f64::INFINITY
                }
            }
            Self::Explicit(w) => w
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, &c)| acc * x + k as f64 * c),
        }
    }

    /// `psi(x) = x phi'(x) / phi(x)`, increasing on `[0, rho)`.
    pub fn psi(&self, x: f64) -> f64 {
        match self {
            Self::Poisson { lambda } => lambda * x,
            Self::Geometric { p } => p * x / (1.0 - p * x),
            Self::Explicit(w) => {
                // Scale terms by their maximum so large x cannot overflow.
                if x == 0.0 {
                    return 0.0;
                }
                let lx = x.ln();
                let logs: Vec<(usize, f64)> = w
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0.0)
                    .map(|(k, &c)| (k, c.ln() + k as f64 * lx))
                    .collect();
                let top = logs.iter().map(|&(_, l)| l).fold(f64::NEG_INFINITY, f64::max);
                let (num, den) = logs.iter().fold((0.0, 0.0), |(num, den), &(k, l)| {
                    let t = (l - top).exp();
                    (num + k as f64 * t, den + t)
                });
                num / den
            }
            _ => x * self.phi_prime(x) / self.phi(x),
        }
    }

    /// gcd of the supported positive degrees.
    ///
    /// Infinite-support families here all support degree 1, so their span is 1.
    pub fn span(&self) -> usize {
        match self {
            Self::FullBinary { .. } => 2,
            Self::Explicit(w) => w
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, &c)| c > 0.0)
                .fold(0, |g, (k, _)| gcd(g, k)),
            _ => 1,
        }
    }

    /// Whether some tree with `n` vertices has positive weight, i.e. `Z_n > 0`.
    ///
    /// `n` boxes with outdegree sum `n - 1` exist iff `n - 1` is a sum of
    /// supported positive degrees: such a sum has at most `n - 1` parts and
    /// the remaining boxes take degree 0, which is always supported. The
    /// check is a reachability DP over the supported degrees `<= cap`.
    pub fn feasible(&self, n: usize, cap: Option<usize>) -> bool {
        if n == 0 {
            return false;
        }
        let target = n - 1;
        let cap = cap.unwrap_or(target).min(target);
        let parts: Vec<usize> = self
            .support_upto(cap)
            .into_iter()
            .filter(|&k| k > 0)
            .collect();
        if target == 0 || parts.contains(&1) {
            return target == 0 || !parts.is_empty();
        }
        let mut reach = vec![false; target + 1];
        reach[0] = true;
        for s in 1..=target {
            reach[s] = parts.iter().any(|&k| k <= s && reach[s - k]);
        }
        reach[target]
    }

    /// Determines `rho`, `nu`, `tau`, the regime and the tilted law.
    pub fn classify(&self) -> Result<RegimeInfo, WeightError> {
        let info = match self {
            Self::Poisson { lambda } => RegimeInfo {
                rho: f64::INFINITY,
                nu: Some(f64::INFINITY),
                tau: Some(1.0 / lambda),
                regime: Regime::One,
                pi: Some(OffspringLaw::Poisson { mean: 1.0 }),
            },
            Self::Geometric { p } => RegimeInfo {
                rho: 1.0 / p,
                nu: Some(f64::INFINITY),
                tau: Some(0.5 / p),
                regime: Regime::One,
                pi: Some(OffspringLaw::Geometric { ratio: 0.5 }),
            },
            Self::FullBinary { w0, w2 } => {
                let tau = (w0 / w2).sqrt();
                RegimeInfo {
                    rho: f64::INFINITY,
                    nu: Some(2.0),
                    tau: Some(tau),
                    regime: Regime::One,
                    pi: Some(OffspringLaw::Finite(tilt(&[*w0, 0.0, *w2], tau)?)),
                }
            }
            Self::Explicit(w) => {
                let top = self.max_degree().expect("validated");
                if top == 1 {
                    // psi(x) = w1 x / (w0 + w1 x) < 1 for every finite x
                    return Err(WeightError::NumericalFailure(
                        "psi never reaches 1 (max degree 1); the family only produces paths".into(),
                    ));
                }
                let tau = bisect_increasing(|x| self.psi(x), 1.0, f64::INFINITY).ok_or_else(|| {
                    WeightError::NumericalFailure(format!(
                        "psi never reaches 1 (max degree {top}); the family only produces paths"
                    ))
                })?;
                RegimeInfo {
                    rho: f64::INFINITY,
                    nu: Some(top as f64),
                    tau: Some(tau),
                    regime: Regime::One,
                    pi: Some(OffspringLaw::Finite(tilt(w, tau)?)),
                }
            }
            Self::PowerLaw { theta, mean } => {
                let (p0, c) = Self::power_law_params(*theta, *mean);
                // phi(1) = 1, so nu = psi(1) = mean.
                let (regime, tau) = if *mean < 1.0 {
                    (Regime::Two, 1.0)
                } else {
                    let tau = bisect_increasing(|x| self.psi(x), 1.0, 1.0).ok_or_else(|| {
                        WeightError::NumericalFailure("bisection on psi failed".into())
                    })?;
                    (Regime::One, tau)
                };
                let norm = self.phi(tau);
                RegimeInfo {
                    rho: 1.0,
                    nu: Some(*mean),
                    tau: Some(tau),
                    regime,
                    pi: Some(OffspringLaw::PowerLaw {
                        theta: *theta,
                        p0: p0 / norm,
                        scale: c / norm,
                        tilt: tau,
                    }),
                }
            }
            Self::Factorial { .. } => RegimeInfo {
                rho: 0.0,
                nu: None,
                tau: None,
                regime: Regime::Three,
                pi: None,
            },
        };
        Ok(info)
    }
}

/// Finds `x` in `[0, hi]` with `f(x) = target` for increasing `f`.
/// An infinite `hi` is replaced by doubling until the target is bracketed.
fn bisect_increasing(f: impl Fn(f64) -> f64, target: f64, hi: f64) -> Option<f64> {
    let mut lo = 0.0;
    let mut hi = hi;
    if hi.is_infinite() {
        hi = 1.0;
        let mut doublings = 0;
        while f(hi) < target {
            lo = hi;
            hi *= 2.0;
            doublings += 1;
            if doublings > BISECTION_MAX_ITER {
                return None;
            }
        }
    } else if f(hi) < target {
        return None;
    }
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let v = f(mid) - target;
        if v.abs() <= BISECTION_TOL || mid == lo || mid == hi {
            return Some(mid);
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    ((f(mid) - target).abs() <= BISECTION_TOL).then_some(mid)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `pi_k = tau^k w_k / phi(tau)` for a finite weight list.
pub fn tilt(weights: &[f64], tau: f64) -> Result<Vec<f64>, WeightError> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(WeightError::OutOfRadius { tau });
    }
    let raw: Vec<f64> = weights
        .iter()
        .enumerate()
        .map(|(k, &w)| if w == 0.0 { 0.0 } else { w * tau.powi(k as i32) })
        .collect();
    let total: f64 = raw.iter().sum();
    if !(total.is_finite() && total > 0.0) {
        return Err(WeightError::OutOfRadius { tau });
    }
    Ok(raw.into_iter().map(|x| x / total).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `rho > 0` and `nu >= 1`: the tilted law is critical.
    One = 1,
    /// `rho > 0` and `nu < 1`: subcritical tilted law, condensation.
    Two = 2,
    /// `rho = 0`: no tilted law.
    Three = 3,
}

impl Regime {
    pub fn number(self) -> u8 {
        self as u8
    }
}

/// A probability law on outdegrees with its generating function.
#[derive(Debug, Clone, PartialEq)]
pub enum OffspringLaw {
    Poisson { mean: f64 },
    /// `pi_k = (1 - ratio) ratio^k`.
    Geometric { ratio: f64 },
    Finite(Vec<f64>),
    /// `pi_0 = p0`, `pi_k = scale * tilt^k * k^-(1 + theta)` for `k >= 1`.
    PowerLaw { theta: f64, p0: f64, scale: f64, tilt: f64 },
}

impl OffspringLaw {
    pub fn prob(&self, k: usize) -> f64 {
        match self {
            Self::Poisson { mean } => (-mean + k as f64 * mean.ln() - ln_factorial(k)).exp(),
            Self::Geometric { ratio } => (1.0 - ratio) * ratio.powi(k as i32),
            Self::Finite(p) => p.get(k).copied().unwrap_or(0.0),
            Self::PowerLaw { theta, p0, scale, tilt } => {
                if k == 0 {
                    *p0
                } else {
                    scale * (k as f64 * tilt.ln() - (1.0 + theta) * (k as f64).ln()).exp()
                }
            }
        }
    }

    /// `pi_0, ..., pi_cap` (not renormalized).
    pub fn table(&self, cap: usize) -> Vec<f64> {
        let top = match self {
            Self::Finite(p) => cap.min(p.len().saturating_sub(1)),
            _ => cap,
        };
        (0..=top).map(|k| self.prob(k)).collect()
    }

    pub fn mean(&self) -> f64 {
        self.pgf_prime(1.0)
    }

    /// `G(x) = sum pi_k x^k` on `[0, 1]`.
    pub fn pgf(&self, x: f64) -> f64 {
        match self {
            Self::Poisson { mean } => (mean * (x - 1.0)).exp(),
            Self::Geometric { ratio } => (1.0 - ratio) / (1.0 - ratio * x),
            Self::Finite(p) => p.iter().rev().fold(0.0, |acc, &c| acc * x + c),
            Self::PowerLaw { theta, p0, scale, tilt } => {
                p0 + scale * tilt * x * shifted_polylog(1.0 + theta, tilt * x)
            }
        }
    }

    /// `G'(x)` on `[0, 1]`.
    pub fn pgf_prime(&self, x: f64) -> f64 {
        match self {
            Self::Poisson { mean } => mean * (mean * (x - 1.0)).exp(),
            Self::Geometric { ratio } => (1.0 - ratio) * ratio / (1.0 - ratio * x).powi(2),
            Self::Finite(p) => p
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, &c)| acc * x + k as f64 * c),
            Self::PowerLaw { theta, scale, tilt, .. } => {
                scale * tilt * shifted_polylog(*theta, tilt * x)
            }
        }
    }
}

/// Output of [`WeightFamily::classify`].
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeInfo {
    pub rho: f64,
    /// `lim psi(x)` at the radius; undefined when `rho = 0`.
    pub nu: Option<f64>,
    /// Root of `psi = 1` in regime 1, `rho` in regime 2, none in regime 3.
    pub tau: Option<f64>,
    pub regime: Regime,
    pub pi: Option<OffspringLaw>,
}

impl RegimeInfo {
    /// `m = min(1, nu)`, the mean of the tilted law.
    pub fn m(&self) -> Option<f64> {
        self.nu.map(|nu| nu.min(1.0))
    }

    pub fn g(&self, x: f64) -> Option<f64> {
        self.pi.as_ref().map(|pi| pi.pgf(x))
    }

    pub fn g_prime(&self, x: f64) -> Option<f64> {
        self.pi.as_ref().map(|pi| pi.pgf_prime(x))
    }
}

impl FromStr for WeightFamily {
    type Err = WeightError;

    /// Grammar: `poisson:LAMBDA`, `geometric:P`, `binary:W0,W2`,
    /// `powerlaw:THETA[,MEAN]`, `factorial:ALPHA`, `explicit:w0,w1,...,wK`.
    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let err = |msg: String| WeightError::Parse {
            spec: spec.to_string(),
            msg,
        };
        let (kind, args) = spec
            .trim()
            .split_once(':')
            .ok_or_else(|| err("expected KIND:ARGS".into()))?;
        let nums = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<f64>()
                    .map_err(|e| err(format!("bad number {a:?}: {e}")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let arity = |want: usize| -> Result<(), WeightError> {
            if nums.len() == want {
                Ok(())
            } else {
                Err(err(format!("{kind} takes {want} argument(s), got {}", nums.len())))
            }
        };
        let family = match kind.trim() {
            "poisson" => {
                arity(1)?;
                Self::poisson(nums[0])
            }
            "geometric" => {
                arity(1)?;
                Self::geometric(nums[0])
            }
            "binary" => {
                arity(2)?;
                Self::full_binary(nums[0], nums[1])
            }
            "powerlaw" => match nums.len() {
                1 => Self::power_law(nums[0], DEFAULT_POWERLAW_MEAN),
                2 => Self::power_law(nums[0], nums[1]),
                k => return Err(err(format!("powerlaw takes 1 or 2 arguments, got {k}"))),
            },
            "factorial" => {
                arity(1)?;
                Self::factorial(nums[0])
            }
            "explicit" => Self::explicit(nums),
            other => return Err(err(format!("unknown family {other:?}"))),
        };
        family.map_err(|e| err(e.to_string()))
    }
}

impl fmt::Display for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Poisson { lambda } => write!(f, "poisson:{lambda}"),
            Self::Geometric { p } => write!(f, "geometric:{p}"),
            Self::FullBinary { w0, w2 } => write!(f, "binary:{w0},{w2}"),
            Self::PowerLaw { theta, mean } => write!(f, "powerlaw:{theta},{mean}"),
            Self::Factorial { alpha } => write!(f, "factorial:{alpha}"),
            Self::Explicit(w) => {
                f.write_str("explicit:")?;
                for (i, x) in w.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_plane_trees;

    fn fam(s: &str) -> WeightFamily {
        s.parse().unwrap()
    }

    fn builtins() -> Vec<WeightFamily> {
        [
            "poisson:1",
            "poisson:2.5",
            "geometric:0.5",
            "geometric:0.3",
            "binary:1,1",
            "binary:2,0.5",
            "powerlaw:1.5",
            "powerlaw:1.2,1.5",
            "explicit:1,0,0,1",
            "explicit:1,0,3,0,1",
            "explicit:2,1,0.5",
        ]
        .iter()
        .map(|s| fam(s))
        .collect()
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(fam("poisson:1"), WeightFamily::Poisson { lambda: 1.0 });
        assert_eq!(fam("binary:1,2"), WeightFamily::FullBinary { w0: 1.0, w2: 2.0 });
        assert_eq!(
            fam("powerlaw:1.5"),
            WeightFamily::PowerLaw { theta: 1.5, mean: 0.5 }
        );
        assert_eq!(fam("explicit:1,0,1"), WeightFamily::Explicit(vec![1.0, 0.0, 1.0]));
        for bad in [
            "poisson",
            "poisson:0",
            "geometric:1",
            "binary:1",
            "powerlaw:0.9",
            "explicit:0,1",
            "explicit:1,0",
            "nope:1",
            "factorial:x",
        ] {
            assert!(bad.parse::<WeightFamily>().is_err(), "{bad}");
        }
        for f in builtins() {
            assert_eq!(f.to_string().parse::<WeightFamily>().unwrap(), f);
        }
    }

    #[test]
    fn span_examples() {
        assert_eq!(fam("binary:1,1").span(), 2);
        assert_eq!(fam("poisson:1").span(), 1);
        assert_eq!(fam("explicit:1,0,0,1").span(), 3);
        assert_eq!(fam("explicit:1,0,4,0,6").span(), 2);
    }

    #[test]
    fn feasible_examples() {
        let b = fam("binary:1,1");
        assert!(!b.feasible(4, None));
        assert!(b.feasible(5, None));
        for f in builtins() {
            assert!(f.feasible(1, None));
        }
        assert!(!fam("poisson:1").feasible(0, None));
        // cap excludes the only positive degree
        assert!(!b.feasible(5, Some(1)));
    }

    #[test]
    fn feasible_matches_enumeration() {
        let mut families = builtins();
        families.push(fam("factorial:1"));
        for f in &families {
            for n in 1..=9 {
                let exists = enumerate_plane_trees(n)
                    .unwrap()
                    .any(|t| t.outdegrees().iter().all(|&d| f.is_supported(d)));
                assert_eq!(f.feasible(n, None), exists, "{f} n={n}");
            }
        }
    }

    #[test]
    fn classify_poisson() {
        let info = fam("poisson:1").classify().unwrap();
        assert_eq!(info.regime, Regime::One);
        assert_eq!(info.tau, Some(1.0));
        assert_eq!(info.m(), Some(1.0));
        for t in [0.0, 0.3, 0.8, 1.0] {
            assert!((info.g(t).unwrap() - (t - 1.0f64).exp()).abs() < 1e-15);
        }
        let pi = info.pi.unwrap();
        assert!((pi.prob(2) - (-1f64).exp() / 2.0).abs() < 1e-16);
    }

    #[test]
    fn classify_geometric() {
        let info = fam("geometric:0.5").classify().unwrap();
        assert_eq!(info.regime, Regime::One);
        assert_eq!(info.tau, Some(1.0));
        let pi = info.pi.as_ref().unwrap();
        for k in 0..10 {
            assert!((pi.prob(k) - 0.5f64.powi(k as i32 + 1)).abs() < 1e-16);
        }
        for t in [0.0, 0.5, 0.9] {
            assert!((info.g(t).unwrap() - 1.0 / (2.0 - t)).abs() < 1e-15);
        }
        assert_eq!(info.m(), Some(1.0));
    }

    #[test]
    fn classify_binary_and_factorial() {
        let info = fam("binary:2,0.5").classify().unwrap();
        assert!((info.tau.unwrap() - 2.0).abs() < 1e-15);
        let OffspringLaw::Finite(p) = info.pi.unwrap() else { panic!() };
        assert!((p[0] - 0.5).abs() < 1e-15 && p[1] == 0.0 && (p[2] - 0.5).abs() < 1e-15);

        let info = fam("factorial:1").classify().unwrap();
        assert_eq!(info.regime, Regime::Three);
        assert_eq!(info.rho, 0.0);
        assert!(info.pi.is_none() && info.tau.is_none());
    }

    #[test]
    fn classify_power_law_regimes() {
        let info = fam("powerlaw:1.5").classify().unwrap();
        assert_eq!(info.regime, Regime::Two);
        assert_eq!(info.tau, Some(1.0));
        assert_eq!(info.m(), Some(0.5));
        let pi = info.pi.as_ref().unwrap();
        assert!((pi.mean() - 0.5).abs() < 1e-12);
        assert!((pi.pgf(1.0) - 1.0).abs() < 1e-12);
        // pi_k proportional to k^-(1 + theta)
        let r = pi.prob(4) / pi.prob(2);
        assert!((r - 2f64.powf(-2.5)).abs() < 1e-14);

        let info = fam("powerlaw:1.2,1.5").classify().unwrap();
        assert_eq!(info.regime, Regime::One);
        assert!(info.tau.unwrap() < 1.0);
    }

    #[test]
    fn regime_one_tilt_is_critical() {
        for f in builtins() {
            let info = f.classify().unwrap();
            if info.regime != Regime::One {
                continue;
            }
            let tau = info.tau.unwrap();
            assert!((f.psi(tau) - 1.0).abs() < 1e-10, "{f}");
            let pi = info.pi.as_ref().unwrap();
            assert!((pi.mean() - 1.0).abs() < 1e-10, "{f}");
            assert!((pi.pgf(1.0) - 1.0).abs() < 1e-12, "{f}");
            if matches!(f, WeightFamily::PowerLaw { .. }) {
                continue;
            }
            // direct summation of the probabilities
            let tab = pi.table(2000);
            let total: f64 = tab.iter().sum();
            let mean: f64 = tab.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
            assert!((total - 1.0).abs() < 1e-12, "{f}: sum {total}");
            assert!((mean - 1.0).abs() < 1e-10, "{f}: mean {mean}");
        }
    }

    #[test]
    fn pgf_properties() {
        for f in builtins() {
            let info = f.classify().unwrap();
            assert!((info.g(1.0).unwrap() - 1.0).abs() < 1e-12, "{f}");
            for i in 1..=9 {
                let x = i as f64 / 10.0;
                let h = 1e-5;
                let fd = (info.g(x + h).unwrap() - info.g(x - h).unwrap()) / (2.0 * h);
                let d = info.g_prime(x).unwrap();
                assert!((fd - d).abs() <= 1e-6 * d.abs().max(1e-300), "{f} x={x}: {fd} vs {d}");
            }
        }
    }

    #[test]
    fn tilt_examples() {
        assert_eq!(tilt(&[1.0, 0.0, 1.0], 1.0).unwrap(), vec![0.5, 0.0, 0.5]);
        assert_eq!(tilt(&[1.0, 1.0], 1.0).unwrap(), vec![0.5, 0.5]);
        let p = tilt(&[1.0, 0.0, 1.0], 0.5).unwrap();
        assert!((p[0] - 0.8).abs() < 1e-15 && p[1] == 0.0 && (p[2] - 0.2).abs() < 1e-15);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(matches!(tilt(&[1.0, 1.0], f64::INFINITY), Err(WeightError::OutOfRadius { .. })));
        assert!(matches!(tilt(&[1.0, 1.0], -1.0), Err(WeightError::OutOfRadius { .. })));
    }

    #[test]
    fn path_only_family_is_reported() {
        assert!(matches!(
            fam("explicit:1,1").classify(),
            Err(WeightError::NumericalFailure(_))
        ));
    }

    #[test]
    fn classify_is_deterministic() {
        for f in builtins() {
            let a = f.classify().unwrap();
            let b = f.classify().unwrap();
            assert_eq!(format!("{a:?}"), format!("{b:?}"));
        }
    }

    #[test]
    fn factorial_log_weights() {
        let f = fam("factorial:1");
        assert!((f.log_weight(5) - 120f64.ln()).abs() < 1e-13);
        assert!(f.log_weight(10_000).is_finite());
        let g = fam("factorial:0.5");
        assert!((g.log_weight(4) - 0.5 * 24f64.ln()).abs() < 1e-13);
    }
}
