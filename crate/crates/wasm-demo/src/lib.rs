//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export returns a JSON string; errors surface as JS exceptions with
//! a readable message.

use serde::Serialize;
use tricolor_core::asymptotics::limits_for_family;
use tricolor_core::experiment::{run_experiment, ExperimentConfig};
use tricolor_core::{tricolour, LimitConstants, PlaneTree, SamplerConfig, TreeSampler, WeightFamily};
use wasm_bindgen::prelude::*;

/// Trees larger than this are refused; the page draws every vertex.
pub const MAX_DRAW_N: usize = 2000;

#[derive(Serialize)]
struct TreeView {
    n: usize,
    outdegrees: Vec<usize>,
    parents: Vec<Option<usize>>,
    colours: String,
    counts: [usize; 3],
    stats: [i64; 3],
    /// Horizontal position in `[0, 1]`, leaves evenly spaced.
    x: Vec<f64>,
    depth: Vec<usize>,
    method: String,
    limits: Option<LimitConstants>,
}

#[derive(Serialize)]
struct ConvergencePoint {
    n: usize,
    green: f64,
    orange: f64,
    red: f64,
    independence: f64,
}

#[derive(Serialize)]
struct Convergence {
    points: Vec<ConvergencePoint>,
    limits: Option<LimitConstants>,
    failures: Vec<String>,
}

fn family(spec: &str) -> Result<WeightFamily, String> {
    spec.trim().parse().map_err(|e| format!("{e}"))
}

/// Leaves at consecutive slots in left-to-right order; each internal vertex
/// centred over its first and last child.
fn layout(t: &PlaneTree) -> Vec<f64> {
    let n = t.len();
    let mut x = vec![0.0; n];
    let mut slot = 0.0f64;
    for (v, &d) in t.outdegrees().iter().enumerate() {
        if d == 0 {
            x[v] = slot;
            slot += 1.0;
        }
    }
    // children carry larger depth-first ranks than their parent
    for v in (0..n).rev() {
        if let (Some(&a), Some(&b)) = (t.children(v).first(), t.children(v).last()) {
            x[v] = 0.5 * (x[a] + x[b]);
        }
    }
    let span = (slot - 1.0).max(1.0);
    x.iter_mut().for_each(|xi| *xi /= span);
    x
}

pub fn sample_tree_json(spec: &str, n: usize, seed: u64) -> Result<String, String> {
    if n > MAX_DRAW_N {
        return Err(format!("n is limited to {MAX_DRAW_N} in the demo"));
    }
    let w = family(spec)?;
    let sampler = TreeSampler::new(&w, &SamplerConfig::new(n, seed)).map_err(|e| e.to_string())?;
    let tree = sampler.sample_seeded(seed).map_err(|e| e.to_string())?;
    let tc = tricolour(&tree);
    let s = tc.stats().map_err(|e| e.to_string())?;
    let view = TreeView {
        n,
        outdegrees: tree.outdegrees().to_vec(),
        parents: tree.parents().to_vec(),
        colours: tc.colour_string(),
        counts: [tc.n_green, tc.n_orange, tc.n_red],
        stats: [s.independence as i64, s.matching as i64, s.nullity],
        x: layout(&tree),
        depth: tree.depths(),
        method: format!("{:?}", sampler.method()),
        limits: limits_for_family(&w).ok(),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

pub fn limits_json(spec: &str) -> Result<String, String> {
    let lc = limits_for_family(&family(spec)?).map_err(|e| e.to_string())?;
    serde_json::to_string(&lc).map_err(|e| e.to_string())
}

pub fn convergence_json(spec: &str, sizes: &[usize], replicates: usize, seed: u64) -> Result<String, String> {
    if sizes.iter().any(|&n| n > MAX_DRAW_N) {
        return Err(format!("sizes are limited to {MAX_DRAW_N} in the demo"));
    }
    let cfg = ExperimentConfig::new(spec.trim(), sizes.to_vec(), replicates, seed).map_err(|e| e.to_string())?;
    let out = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let conv = Convergence {
        limits: out.records.first().and_then(|r| r.limits),
        points: out
            .records
            .iter()
            .map(|r| ConvergencePoint {
                n: r.n,
                green: r.green.mean,
                orange: r.orange.mean,
                red: r.red.mean,
                independence: r.independence.mean,
            })
            .collect(),
        failures: out.failures.iter().map(|f| format!("n={}: {}", f.n, f.error)).collect(),
    };
    serde_json::to_string(&conv).map_err(|e| e.to_string())
}

/// Samples one tree and returns it with its colouring and a drawing layout.
#[wasm_bindgen(js_name = sampleTree)]
pub fn sample_tree(family: &str, n: usize, seed: u32) -> Result<String, JsError> {
    sample_tree_json(family, n, u64::from(seed)).map_err(|e| JsError::new(&e))
}

/// Limit constants of a family.
#[wasm_bindgen]
pub fn limits(family: &str) -> Result<String, JsError> {
    limits_json(family).map_err(|e| JsError::new(&e))
}

/// Mean colour fractions over `replicates` trees at each of `sizes`.
#[wasm_bindgen]
pub fn convergence(family: &str, sizes: Vec<u32>, replicates: usize, seed: u32) -> Result<String, JsError> {
    let sizes: Vec<usize> = sizes.into_iter().map(|n| n as usize).collect();
    convergence_json(family, &sizes, replicates, u64::from(seed)).map_err(|e| JsError::new(&e))
}
