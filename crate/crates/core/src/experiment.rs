//! Monte Carlo harness: sample trees per size, tricolour them and compare
//! the empirical fractions against the limit constants.

use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::asymptotics::{limits_for_family, LimitConstants};
use crate::sampler::{mix64, rng_from_seed, Method, SamplerConfig, SamplerError, TreeSampler};
use crate::tricolour::tricolour;
use crate::weights::{WeightError, WeightFamily};

pub const CSV_HEADER: &str = "family,n,replicates,seed,mean_ng,sd_ng,mean_no,sd_no,mean_nr,sd_nr,\
mean_I,sd_I,mean_M,sd_M,mean_N,sd_N,lim_ng,lim_no,lim_nr,lim_I,lim_M,lim_N,gap_ng,gap_no,gap_nr";

pub const THREADS_ENV: &str = "TRICOLOR_THREADS";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Family(#[from] WeightError),
    #[error("replicate count must be at least 1")]
    NoReplicates,
    #[error("no sizes given")]
    NoSizes,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format {other:?} (csv|json)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// The family as written by the user; echoed in every record.
    pub family_spec: String,
    pub family: WeightFamily,
    pub sizes: Vec<usize>,
    pub replicates: usize,
    pub seed: u64,
    pub method: Method,
    /// Worker threads; `None` reads `TRICOLOR_THREADS`, else all cores.
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(family_spec: &str, sizes: Vec<usize>, replicates: usize, seed: u64) -> Result<Self, ExperimentError> {
        Ok(Self {
            family_spec: family_spec.to_string(),
            family: family_spec.parse()?,
            sizes,
            replicates,
            seed,
            method: Method::Auto,
            threads: None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanSd {
    pub mean: f64,
    /// Sample standard deviation; absent for a single replicate.
    pub sd: Option<f64>,
}

impl MeanSd {
    fn of(xs: impl Iterator<Item = f64> + Clone) -> Self {
        let (count, sum) = xs.clone().fold((0usize, 0.0), |(c, s), x| (c + 1, s + x));
        let mean = sum / count as f64;
        let sd = (count > 1).then(|| {
            let ss: f64 = xs.map(|x| (x - mean).powi(2)).sum();
            (ss / (count - 1) as f64).sqrt()
        });
        Self { mean, sd }
    }

    /// Standard error of the mean.
    pub fn se(&self, count: usize) -> Option<f64> {
        self.sd.map(|sd| sd / (count as f64).sqrt())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub family: String,
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub green: MeanSd,
    pub orange: MeanSd,
    pub red: MeanSd,
    pub independence: MeanSd,
    pub matching: MeanSd,
    pub nullity: MeanSd,
    pub limits: Option<LimitConstants>,
}

impl ExperimentRecord {
    /// `|mean - limit|` for the green, orange and red fractions.
    pub fn colour_gaps(&self) -> Option<(f64, f64, f64)> {
        self.limits.map(|l| {
            (
                (self.green.mean - l.p_green).abs(),
                (self.orange.mean - l.p_orange).abs(),
                (self.red.mean - l.p_red).abs(),
            )
        })
    }

    pub fn csv_row(&self) -> String {
        let mut cells = vec![
            self.family.clone(),
            self.n.to_string(),
            self.replicates.to_string(),
            self.seed.to_string(),
        ];
        for ms in [
            &self.green,
            &self.orange,
            &self.red,
            &self.independence,
            &self.matching,
            &self.nullity,
        ] {
            cells.push(ms.mean.to_string());
            cells.push(ms.sd.map(|s| s.to_string()).unwrap_or_default());
        }
        match (self.limits, self.colour_gaps()) {
            (Some(l), Some((g, o, r))) => {
                for x in [l.p_green, l.p_orange, l.p_red, l.lim_i, l.lim_m, l.lim_n, g, o, r] {
                    cells.push(x.to_string());
                }
            }
            _ => cells.extend(std::iter::repeat_n(String::new(), 9)),
        }
        // family specs contain commas (binary:1,1), so quote that column
        if cells[0].contains(',') {
            cells[0] = format!("\"{}\"", cells[0]);
        }
        cells.join(",")
    }
}

#[derive(Debug)]
pub struct SizeFailure {
    pub n: usize,
    pub error: SamplerError,
}

#[derive(Debug, Default)]
pub struct ExperimentOutcome {
    pub records: Vec<ExperimentRecord>,
    pub failures: Vec<SizeFailure>,
}

/// Per-replicate fractions `(ng, no, nr, I, M, N) / n`.
type Fractions = [f64; 6];

/// Seed of replicate `r` at size `n`.
pub fn replicate_seed(master: u64, n: usize, r: usize) -> u64 {
    mix64(mix64(master, n as u64), r as u64)
}

fn replicate(sampler: &TreeSampler, seed: u64) -> Result<Fractions, SamplerError> {
    let tree = sampler.sample(&mut rng_from_seed(seed))?;
    let tc = tricolour(&tree);
    let n = tree.len() as f64;
    let (g, o, r) = tc.counts();
    let s = tc.stats().expect("orange count is even");
    Ok([
        g as f64 / n,
        o as f64 / n,
        r as f64 / n,
        s.independence as f64 / n,
        s.matching as f64 / n,
        s.nullity as f64 / n,
    ])
}

fn run_size(cfg: &ExperimentConfig, n: usize) -> Result<Vec<Fractions>, SamplerError> {
    let scfg = SamplerConfig::new(n, cfg.seed).with_method(cfg.method);
    let sampler = TreeSampler::new(&cfg.family, &scfg)?;
    let seeds: Vec<u64> = (0..cfg.replicates).map(|r| replicate_seed(cfg.seed, n, r)).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        seeds.par_iter().map(|&s| replicate(&sampler, s)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        seeds.iter().map(|&s| replicate(&sampler, s)).collect()
    }
}

fn thread_count(cfg: &ExperimentConfig) -> Option<usize> {
    cfg.threads.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&t: &usize| t > 0)
    })
}

/// Runs every size in order. Sizes that cannot be sampled are reported in
/// `failures` and the run continues. Output depends only on the config.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome, ExperimentError> {
    if cfg.replicates == 0 {
        return Err(ExperimentError::NoReplicates);
    }
    if cfg.sizes.is_empty() {
        return Err(ExperimentError::NoSizes);
    }
    let limits = limits_for_family(&cfg.family).ok();

    let body = || {
        let mut out = ExperimentOutcome::default();
        for &n in &cfg.sizes {
            match run_size(cfg, n) {
                Ok(rows) => out.records.push(aggregate(cfg, n, &rows, limits)),
                Err(error) => out.failures.push(SizeFailure { n, error }),
            }
        }
        out
    };

    #[cfg(feature = "parallel")]
    if let Some(threads) = thread_count(cfg) {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| ExperimentError::ThreadPool(e.to_string()))?;
        return Ok(pool.install(body));
    }
    #[cfg(not(feature = "parallel"))]
    let _ = thread_count(cfg);
    Ok(body())
}

fn aggregate(cfg: &ExperimentConfig, n: usize, rows: &[Fractions], limits: Option<LimitConstants>) -> ExperimentRecord {
    let col = |i: usize| MeanSd::of(rows.iter().map(move |r| r[i]));
    ExperimentRecord {
        family: cfg.family_spec.clone(),
        n,
        replicates: rows.len(),
        seed: cfg.seed,
        green: col(0),
        orange: col(1),
        red: col(2),
        independence: col(3),
        matching: col(4),
        nullity: col(5),
        limits,
    }
}

pub fn write_csv<W: Write>(mut out: W, records: &[ExperimentRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

pub fn write_json<W: Write>(mut out: W, records: &[ExperimentRecord]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)
}

pub fn write_records<W: Write>(out: W, records: &[ExperimentRecord], format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(out, records),
        OutputFormat::Json => write_json(out, records),
    }
}
