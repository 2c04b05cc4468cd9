//! Simply generated random trees and their canonical tricolouration.
//!
//! * [`tree`]: plane trees as depth-first outdegree sequences.
//! * [`weights`]: weight families, regimes and tilted offspring laws.
//! * [`asymptotics`]: limit constants of the colour fractions.
//! * [`sampler`]: exact samplers for trees with `n` vertices.
//! * [`tricolour`]: linear-time green/orange/red colouring.
//! * [`oracle`]: brute-force ground truth.
//! * [`experiment`]: Monte Carlo harness.

pub mod asymptotics;
#[cfg(feature = "cli")]
pub mod cli;
pub mod experiment;
pub mod numeric;
pub mod oracle;
pub mod sampler;
pub mod tree;
pub mod tricolour;
pub mod weights;

pub use asymptotics::{colour_limits, solve_q, stat_limits, LimitConstants};
pub use sampler::{sample_conditioned, Method, SamplerConfig, TreeSampler};
pub use tree::{LukasiewiczWalk, PlaneTree};
pub use tricolour::{tricolour, Colour, Tricolouring};
pub use weights::{Regime, RegimeInfo, WeightFamily};
