pub mod construct;
pub mod error;
pub mod graph;
pub mod moves;
pub mod planarity;
pub mod pmfg;
pub mod scores;
pub mod synth;
pub mod validate;

pub use construct::{build, BuildConfig, SeedStrategy, Variant};
pub use error::{Error, Result};
pub use graph::*;
pub use pmfg::build_pmfg;
pub use scores::{ScoreFunction, Transform, WeightOracle};
