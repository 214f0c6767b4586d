use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use tmfg::scores::GaussianModel;
use tmfg::synth::{read_matrix_csv, read_timeseries_csv};
use tmfg::{build, build_pmfg, BuildConfig, FilterResult, Method, ScoreFunction, Transform, Variant, WeightOracle};

use crate::artifact::Artifact;
use crate::format::{ResultDoc, ResultFormat};
use crate::manifest::{read_input, RunManifest};
use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    /// Dense comma-separated weight matrix.
    #[default]
    Matrix,
    /// Comma-separated observations with a header row of names.
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Score {
    #[default]
    Sum,
    Entropy,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FilterArgs {
    /// Input file.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub input_format: InputFormat,
    /// tmfg, tmfg-t1, tmfg-s, tmfg-a or pmfg.
    #[arg(long, default_value = "tmfg")]
    pub method: Method,
    #[arg(long, value_enum, default_value_t)]
    pub score: Score,
    /// Applied to matrix entries or correlations. Defaults to `raw` for
    /// matrices (weights as given) and `squared` for series.
    #[arg(long)]
    pub transform: Option<Transform>,
    #[arg(long, value_enum, default_value_t)]
    pub format: ResultFormat,
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Record build time in the manifest.
    #[arg(long)]
    #[serde(skip)]
    pub timing: bool,
}

impl FilterArgs {
    pub fn transform(&self) -> Transform {
        self.transform.unwrap_or(match self.input_format {
            InputFormat::Matrix => Transform::Raw,
            InputFormat::Series => Transform::Squared,
        })
    }

    pub fn default_name(&self) -> String {
        let stem = self
            .input
            .file_stem()
            .map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned());
        format!("{stem}.{}.{}", self.method, self.format.extension())
    }
}

struct Loaded {
    weights: WeightOracle,
    names: Option<Vec<String>>,
    model: Option<GaussianModel>,
}

fn load(args: &FilterArgs, bytes: &[u8]) -> Result<Loaded> {
    let at = |e: tmfg::Error| CliError::Input(format!("{}: {e}", args.input.display()));
    match args.input_format {
        InputFormat::Matrix => {
            if args.score == Score::Entropy {
                return Err(CliError::Input(
                    "the entropy score needs a covariance; pass a time series with --input-format series".into(),
                ));
            }
            Ok(Loaded {
                weights: read_matrix_csv(bytes, args.transform()).map_err(at)?,
                names: None,
                model: None,
            })
        }
        InputFormat::Series => {
            let series = read_timeseries_csv(bytes).map_err(at)?;
            let weights = WeightOracle::dense_correlation(&series, args.transform()).map_err(at)?;
            let model = match args.score {
                Score::Sum => None,
                Score::Entropy => Some(GaussianModel::from_series(&series).map_err(at)?),
            };
            Ok(Loaded {
                weights,
                names: Some(series.names().to_vec()),
                model,
            })
        }
    }
}

/// Builds the requested graph over `w`.
pub fn run_method(w: &WeightOracle, method: Method, score: ScoreFunction) -> Result<FilterResult> {
    let out = match Variant::from_method(method) {
        None => {
            if !matches!(score, ScoreFunction::EdgeWeightSum) {
                return Err(CliError::Input("pmfg only supports the sum score".into()));
            }
            build_pmfg(w)?
        }
        Some(variant) => build(
            w,
            &BuildConfig {
                score,
                ..BuildConfig::new(variant)
            },
        )?,
    };
    Ok(out)
}

pub fn filter(args: &FilterArgs) -> Result<Artifact> {
    let (bytes, digest) = read_input(&args.input)?;
    let loaded = load(args, &bytes)?;
    let score = match loaded.model {
        Some(m) => ScoreFunction::GaussianEntropy(m),
        None => ScoreFunction::EdgeWeightSum,
    };
    let start = Instant::now();
    let result = run_method(&loaded.weights, args.method, score)?;
    let seconds = start.elapsed().as_secs_f64();

    let mut manifest = RunManifest::new("filter", args)?;
    manifest.inputs.push(digest);
    if args.timing {
        manifest.record_time("build", seconds);
    }
    let doc = ResultDoc::new(&result, loaded.names.as_deref(), manifest);
    Ok(Artifact::Result(doc, args.format))
}

pub fn output_path(args: &FilterArgs) -> Option<PathBuf> {
    crate::artifact::destination(args.output.as_deref(), &args.default_name())
}

