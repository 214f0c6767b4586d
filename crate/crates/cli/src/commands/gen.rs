use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};
use tmfg::synth::{generate, MatrixSpec};
use tmfg::Transform;

use super::{parse_family, slug};
use crate::artifact::Artifact;
use crate::format::fmt_weight;
use crate::manifest::RunManifest;
use crate::Result;

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GenArgs {
    /// uniform, beta(a,b), pareto(x), factor(k) or factor(k,q).
    #[arg(long, default_value = "uniform")]
    pub dist: String,
    #[arg(long, short)]
    pub p: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Index of the independent sample drawn from `seed`.
    #[arg(long, default_value_t = 0)]
    pub sample: u64,
    /// Applied to factor-model correlations.
    #[arg(long, default_value = "squared")]
    pub transform: Transform,
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl GenArgs {
    pub fn default_name(&self) -> String {
        format!("{}-p{}-seed{}-sample{}.csv", slug(&self.dist), self.p, self.seed, self.sample)
    }
}

/// A dense weight matrix written as CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixDoc {
    pub p: usize,
    /// Row-major, zero diagonal.
    pub values: Vec<f64>,
    pub manifest: RunManifest,
}

impl MatrixDoc {
    pub fn render(&self) -> Vec<u8> {
        let mut s = format!("# manifest {}\n", self.manifest.to_line());
        for row in self.values.chunks(self.p.max(1)) {
            let cells: Vec<String> = row.iter().map(|&x| fmt_weight(x)).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s.into_bytes()
    }
}

pub fn gen(args: &GenArgs) -> Result<Artifact> {
    let spec = MatrixSpec {
        transform: args.transform,
        ..MatrixSpec::new(parse_family(&args.dist)?, args.p, args.seed).with_sample(args.sample)
    };
    let w = generate(&spec)?;
    let mut manifest = RunManifest::new("gen", args)?;
    manifest.seeds.push(args.seed);
    Ok(Artifact::Matrix(MatrixDoc {
        p: w.dim(),
        values: w.to_dense(),
        manifest,
    }))
}
