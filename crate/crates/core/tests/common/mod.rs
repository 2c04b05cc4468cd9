#![allow(dead_code)]

use std::collections::HashMap;

use tricolor_core::oracle::enumerate_plane_trees;
use tricolor_core::sampler::{mix64, SamplerConfig, TreeSampler};
use tricolor_core::{Method, WeightFamily};

/// Exact law of the conditioned tree with `n` vertices, by enumeration.
pub fn exact_law(w: &WeightFamily, n: usize) -> HashMap<Vec<usize>, f64> {
    let mut law: HashMap<Vec<usize>, f64> = enumerate_plane_trees(n)
        .unwrap()
        .map(|t| {
            let weight: f64 = t.outdegrees().iter().map(|&d| w.weight(d)).product();
            (t.into_outdegrees(), weight)
        })
        .filter(|(_, weight)| *weight > 0.0)
        .collect();
    let total: f64 = law.values().sum();
    law.values_mut().for_each(|p| *p /= total);
    law
}

/// Empirical counts of sampled outdegree sequences.
pub fn sample_counts(w: &WeightFamily, n: usize, method: Method, draws: usize, seed: u64) -> HashMap<Vec<usize>, usize> {
    let sampler = TreeSampler::new(w, &SamplerConfig::new(n, seed).with_method(method)).unwrap();
    let mut counts = HashMap::new();
    for i in 0..draws {
        let t = sampler.sample_seeded(mix64(seed, i as u64)).unwrap();
        *counts.entry(t.into_outdegrees()).or_insert(0) += 1;
    }
    counts
}

/// Largest `|observed - expected| / se` over the support of `law`, plus the
/// number of draws that fell outside it.
pub fn worst_z(law: &HashMap<Vec<usize>, f64>, counts: &HashMap<Vec<usize>, usize>, draws: usize) -> (f64, usize) {
    let m = draws as f64;
    let worst = law
        .iter()
        .map(|(k, &p)| {
            let obs = *counts.get(k).unwrap_or(&0) as f64 / m;
            (obs - p).abs() / (p * (1.0 - p) / m).sqrt().max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max);
    let stray = counts.iter().filter(|(k, _)| !law.contains_key(*k)).map(|(_, &c)| c).sum();
    (worst, stray)
}

/// Pearson statistic against `law`.
pub fn chi_square(law: &HashMap<Vec<usize>, f64>, counts: &HashMap<Vec<usize>, usize>, draws: usize) -> f64 {
    let m = draws as f64;
    law.iter()
        .map(|(k, &p)| {
            let obs = *counts.get(k).unwrap_or(&0) as f64;
            (obs - m * p).powi(2) / (m * p)
        })
        .sum()
}
