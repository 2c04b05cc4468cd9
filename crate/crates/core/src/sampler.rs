//! Exact samplers for simply generated trees with a fixed number of vertices.
//!
//! Two routes produce a degree sequence `(d_1, ..., d_n)` with
//! `sum d_i = n - 1` and probability proportional to `prod w[d_i]`:
//!
//! * rejection: i.i.d. outdegrees from the tilted law, kept when they sum to
//!   `n - 1`;
//! * exact DP: a backward table of partition functions over (boxes left,
//!   degree sum left), then sequential forward sampling. This one needs no
//!   tilted law and covers the zero-radius regime.
//!
//! Either sequence is exchangeable, and among the `n` cyclic rotations of a
//! step sequence summing to `-1` exactly one is an excursion, so rotating to
//! it yields a tree with probability proportional to its weight.
//!
//! Replicate streams are seeded with [`mix64`]:
//! `mix64(seed, index) = splitmix64(seed ^ splitmix64(index))`, where
//! `splitmix64` is the SplitMix64 output function applied to
//! `x + 0x9E3779B97F4A7C15`. Each stream drives a `ChaCha8Rng`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::Distribution;
use thiserror::Error;

use crate::tree::{PlaneTree, TreeError};
use crate::weights::{OffspringLaw, Regime, WeightError, WeightFamily};

/// Floor on the default rejection budget. Acceptance at tiny `n` is around
/// 0.1, where `10 * n` tries fail often enough to show up in long runs.
pub const MIN_REJECTION_TRIES: u64 = 1000;

// Above this degree cap the geometric law is drawn by inversion instead of
// an alias table.
const MAX_ALIAS_CAP: usize = 1 << 20;

/// The degree-sequence DP refuses larger trees.
pub const MAX_DP_N: usize = 20_000;

// Terms this far below the running maximum (in log space) are dropped from
// log-sum-exp; each contributes less than 1e-26 relative.
const LSE_CUTOFF: f64 = 60.0;

// Scaled linear sums below this are recomputed in log space.
const LINEAR_FLOOR: f64 = 1e-250;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplerError {
    #[error("no tree with {n} vertices has positive weight (degree cap {cap})")]
    Infeasible { n: usize, cap: usize },
    #[error("rejection sampler gave up after {tries} tries; try --method dp")]
    RejectionBudgetExceeded { tries: u64 },
    #[error("degree-sequence DP underflowed")]
    NumericalUnderflow,
    #[error("exact DP limited to n <= {MAX_DP_N}, got {0}")]
    TooLarge(usize),
    #[error("rejection needs a tilted offspring law, unavailable in regime 3")]
    NoTiltedLaw,
    #[error("steps must be >= -1 and sum to -1 (sum {sum})")]
    BadSum { sum: i64 },
    #[error("tree size must be positive")]
    ZeroSize,
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Rejection,
    ExactDp,
    #[default]
    Auto,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Method::Auto),
            "rejection" => Ok(Method::Rejection),
            "dp" => Ok(Method::ExactDp),
            other => Err(format!("unknown method {other:?} (auto|rejection|dp)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub n: usize,
    pub seed: u64,
    pub method: Method,
    /// Defaults to `max(10 * n * span, MIN_REJECTION_TRIES)`.
    pub max_rejection_tries: Option<u64>,
    /// Defaults to `n - 1`.
    pub degree_cap: Option<usize>,
}

impl SamplerConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            seed,
            method: Method::Auto,
            max_rejection_tries: None,
            degree_cap: None,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of stream `index` derived from `seed`.
pub fn mix64(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rotates a step sequence summing to -1 to its unique excursion rotation.
pub fn cycle_shift_to_excursion(steps: &[i64]) -> Result<Vec<i64>, SamplerError> {
    let sum: i64 = steps.iter().sum();
    if steps.is_empty() || sum != -1 || steps.iter().any(|&x| x < -1) {
        return Err(SamplerError::BadSum { sum });
    }
    let mut out = steps.to_vec();
    out.rotate_left(first_minimum_end(steps.iter().copied()) % steps.len());
    Ok(out)
}

/// Number of steps up to and including the first time the partial sums
/// reach their overall minimum.
fn first_minimum_end(steps: impl Iterator<Item = i64>) -> usize {
    let mut s = 0;
    let mut best = (0, 0);
    for (k, x) in steps.enumerate() {
        s += x;
        if s < best.0 {
            best = (s, k + 1);
        }
    }
    best.1
}

fn rotate_degrees_to_excursion(degrees: &mut [usize]) {
    let n = degrees.len();
    let k = first_minimum_end(degrees.iter().map(|&d| d as i64 - 1));
    degrees.rotate_left(k % n);
}

enum StepLaw {
    /// `P(d = k) = (1 - r) r^k`, by inversion.
    Geometric { ln_ratio: f64 },
    Alias(WeightedAliasIndex<f64>),
}

impl StepLaw {
    fn new(pi: &OffspringLaw, cap: usize) -> Result<Self, SamplerError> {
        if let OffspringLaw::Geometric { ratio } = pi {
            if cap > MAX_ALIAS_CAP {
                return Ok(StepLaw::Geometric { ln_ratio: ratio.ln() });
            }
        }
        let table = pi.table(cap);
        WeightedAliasIndex::new(table)
            .map(StepLaw::Alias)
            .map_err(|_| SamplerError::NumericalUnderflow)
    }

    /// One outdegree from the law truncated to `0..=cap`.
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R, cap: usize) -> usize {
        match self {
            StepLaw::Geometric { ln_ratio } => loop {
                let u: f64 = 1.0 - rng.random::<f64>();
                let k = (u.ln() / ln_ratio).floor();
                if k <= cap as f64 {
                    return k as usize;
                }
            },
            StepLaw::Alias(alias) => alias.sample(rng),
        }
    }
}

/// Log partition functions `ln Z(j, s)`: total weight of `j` boxes with
/// degree sum `s`, for `j < n` and `s < n`.
pub struct DegreeDp {
    n: usize,
    support: Vec<usize>,
    log_w: Vec<f64>,
    // row-major, row j holds s = 0..n
    table: Vec<f64>,
}

fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let top = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    let sum: f64 = terms
        .filter(|&x| x > top - LSE_CUTOFF)
        .map(|x| (x - top).exp())
        .sum();
    top + sum.ln()
}

impl DegreeDp {
    pub fn new(w: &WeightFamily, n: usize, cap: usize) -> Result<Self, SamplerError> {
        if n == 0 {
            return Err(SamplerError::ZeroSize);
        }
        if n > MAX_DP_N {
            return Err(SamplerError::TooLarge(n));
        }
        let cap = cap.min(n - 1);
        if !w.feasible(n, Some(cap)) {
            return Err(SamplerError::Infeasible { n, cap });
        }
        let support = w.support_upto(cap);
        let log_w: Vec<f64> = support.iter().map(|&k| w.log_weight(k)).collect();
        let width = n;
        let mut table = vec![f64::NEG_INFINITY; n * width];
        table[0] = 0.0;
        // Rows are filled in the linear domain, scaled by the row and weight
        // maxima. Every product is at most 1, so an underflowed term is below
        // 1e-307 and negligible unless the cell's scaled sum is itself tiny;
        // those cells are redone with log-sum-exp.
        let w_top = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let ew: Vec<f64> = log_w.iter().map(|&lw| (lw - w_top).exp()).collect();
        let mut ep = vec![0.0; width];
        for j in 1..n {
            let (done, rest) = table.split_at_mut(j * width);
            let prev = &done[(j - 1) * width..];
            let row = &mut rest[..width];
            let p_top = prev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for (e, &lp) in ep.iter_mut().zip(prev) {
                *e = (lp - p_top).exp();
            }
            let ep = &ep;
            let fill = |(s, slot): (usize, &mut f64)| {
                let scaled: f64 = support
                    .iter()
                    .zip(&ew)
                    .take_while(|(&d, _)| d <= s)
                    .map(|(&d, &e)| e * ep[s - d])
                    .sum();
                *slot = if scaled > LINEAR_FLOOR {
                    scaled.ln() + p_top + w_top
                } else {
                    log_sum_exp(
                        support
                            .iter()
                            .zip(&log_w)
                            .take_while(|(&d, _)| d <= s)
                            .map(|(&d, &lw)| lw + prev[s - d]),
                    )
                };
            };
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                row.par_iter_mut().enumerate().for_each(fill);
            }
            #[cfg(not(feature = "parallel"))]
            row.iter_mut().enumerate().for_each(fill);
        }
        let dp = Self {
            n,
            support,
            log_w,
            table,
        };
        let total = dp.log_partition();
        if !total.is_finite() {
            return Err(SamplerError::NumericalUnderflow);
        }
        Ok(dp)
    }

    fn log_z(&self, boxes: usize, sum: usize) -> f64 {
        self.table[boxes * self.n + sum]
    }

    /// `ln` of the total weight of degree sequences of length `n` summing to
    /// `n - 1` (that is `ln(n Z_n)`).
    pub fn log_partition(&self) -> f64 {
        let s = self.n - 1;
        log_sum_exp(
            self.support
                .iter()
                .zip(&self.log_w)
                .take_while(|(&d, _)| d <= s)
                .map(|(&d, &lw)| lw + self.log_z(self.n - 1, s - d)),
        )
    }

    /// Exact probability that the first box gets degree `d`.
    pub fn first_degree_law(&self) -> Vec<(usize, f64)> {
        let s = self.n - 1;
        let total = self.log_partition();
        self.support
            .iter()
            .zip(&self.log_w)
            .filter(|(&d, _)| d <= s)
            .map(|(&d, &lw)| (d, (lw + self.log_z(self.n - 1, s - d) - total).exp()))
            .collect()
    }

    /// Degree sequence (not rotated) with probability proportional to its weight.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let n = self.n;
        let mut out = Vec::with_capacity(n);
        let mut left = n - 1;
        for i in 0..n {
            let boxes_after = n - 1 - i;
            // normaliser of this step: total weight of the remaining boxes
            let norm = if i == 0 {
                self.log_partition()
            } else {
                self.log_z(boxes_after + 1, left)
            };
            // inverse CDF over increasing degrees; mass sits on small ones
            let u = rng.random::<f64>();
            let mut acc = 0.0;
            let mut pick = None;
            for (&d, &lw) in self.support.iter().zip(&self.log_w).take_while(|(&d, _)| d <= left) {
                let lp = lw + self.log_z(boxes_after, left - d) - norm;
                if lp == f64::NEG_INFINITY {
                    continue;
                }
                pick = Some(d);
                acc += lp.exp();
                if u < acc {
                    break;
                }
            }
            // a rounding shortfall falls through to the last admissible degree
            let d = pick.expect("table row reachable");
            out.push(d);
            left -= d;
        }
        out
    }
}

enum Route {
    Single,
    Rejection { law: StepLaw, cap: usize, max_tries: u64 },
    Dp(DegreeDp),
}

/// A sampler for one (family, size) pair. Building it does the expensive
/// precomputation (alias table or DP table); drawing is then cheap and
/// shares the tables read-only.
pub struct TreeSampler {
    n: usize,
    route: Route,
}

impl TreeSampler {
    pub fn new(w: &WeightFamily, cfg: &SamplerConfig) -> Result<Self, SamplerError> {
        let n = cfg.n;
        if n == 0 {
            return Err(SamplerError::ZeroSize);
        }
        let cap = cfg.degree_cap.unwrap_or(n - 1).min(n - 1);
        if !w.feasible(n, Some(cap)) {
            return Err(SamplerError::Infeasible { n, cap });
        }
        if n == 1 {
            return Ok(Self { n, route: Route::Single });
        }
        let info = w.classify();
        let method = match cfg.method {
            Method::Auto => match &info {
                Ok(i) if i.regime == Regime::One => Method::Rejection,
                Ok(i) if i.regime == Regime::Two && n > MAX_DP_N => Method::Rejection,
                _ => Method::ExactDp,
            },
            m => m,
        };
        let route = match method {
            Method::Rejection => {
                let pi = info?.pi.ok_or(SamplerError::NoTiltedLaw)?;
                let law = StepLaw::new(&pi, cap)?;
                let max_tries = cfg
                    .max_rejection_tries
                    .unwrap_or((10 * n as u64 * w.span() as u64).max(MIN_REJECTION_TRIES));
                Route::Rejection { law, cap, max_tries }
            }
            _ => Route::Dp(DegreeDp::new(w, n, cap)?),
        };
        Ok(Self { n, route })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn method(&self) -> Method {
        match self.route {
            Route::Single => Method::Auto,
            Route::Rejection { .. } => Method::Rejection,
            Route::Dp(_) => Method::ExactDp,
        }
    }

    /// Outdegrees in excursion order.
    pub fn sample_outdegrees<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<usize>, SamplerError> {
        let n = self.n;
        let mut degrees = match &self.route {
            Route::Single => return Ok(vec![0]),
            Route::Dp(dp) => dp.sample(rng),
            Route::Rejection { law, cap, max_tries } => {
                let mut buf = Vec::with_capacity(n);
                let mut accepted = false;
                for _ in 0..*max_tries {
                    buf.clear();
                    let mut total = 0;
                    for _ in 0..n {
                        let d = law.draw(rng, *cap);
                        total += d;
                        if total > n - 1 {
                            break;
                        }
                        buf.push(d);
                    }
                    if buf.len() == n && total == n - 1 {
                        accepted = true;
                        break;
                    }
                }
                if !accepted {
                    return Err(SamplerError::RejectionBudgetExceeded { tries: *max_tries });
                }
                buf
            }
        };
        rotate_degrees_to_excursion(&mut degrees);
        Ok(degrees)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<PlaneTree, SamplerError> {
        Ok(PlaneTree::from_outdegrees(self.sample_outdegrees(rng)?)?)
    }

    pub fn sample_seeded(&self, seed: u64) -> Result<PlaneTree, SamplerError> {
        self.sample(&mut rng_from_seed(seed))
    }
}

/// One tree drawn with `cfg.seed`.
pub fn sample_conditioned(w: &WeightFamily, cfg: &SamplerConfig) -> Result<PlaneTree, SamplerError> {
    TreeSampler::new(w, cfg)?.sample_seeded(cfg.seed)
}

/// Degree sequence of length `n` summing to `n - 1`, in draw order.
pub fn sample_degree_sequence_dp(
    w: &WeightFamily,
    n: usize,
    cap: usize,
    seed: u64,
) -> Result<Vec<usize>, SamplerError> {
    Ok(DegreeDp::new(w, n, cap)?.sample(&mut rng_from_seed(seed)))
}
