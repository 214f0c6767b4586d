use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use rand::Rng;
use serde::{Deserialize, Serialize};
use tmfg::scores::TimeSeries;
use tmfg::synth::{generate, read_timeseries_csv, rng_for, MatrixSpec};
use tmfg::{build_pmfg, Method, ScoreFunction, Transform, WeightOracle};

use super::filter::run_method;
use super::{default_jobs, parse_family, run_indexed};
use crate::artifact::Artifact;
use crate::format::{json_bytes, TableFormat, Weight};
use crate::manifest::{read_input, RunManifest};
use crate::{CliError, Result};

/// The six synthetic families of the standard comparison table.
pub const TABLE_FAMILIES: [&str; 6] = [
    "uniform",
    "beta(3,0.5)",
    "beta(0.5,3)",
    "pareto(1)",
    "pareto(2)",
    "factor(20)",
];

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CompareArgs {
    /// Distribution; repeat for several. Defaults to the six table families.
    #[arg(long = "dist")]
    pub dists: Vec<String>,
    /// Methods compared against pmfg.
    #[arg(long, value_delimiter = ',', default_value = "tmfg")]
    pub methods: Vec<Method>,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Dimensions; several values give a sweep over p.
    #[arg(long, short, value_delimiter = ',', default_value = "400")]
    pub p: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draw samples as random windows of this time series instead.
    #[arg(long)]
    pub series: Option<PathBuf>,
    /// Window length, in observations, for `--series`.
    #[arg(long, default_value_t = 1000)]
    pub window: usize,
    #[arg(long, default_value = "squared")]
    pub transform: Transform,
    #[arg(long, value_enum, default_value_t)]
    pub format: TableFormat,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    #[serde(skip)]
    pub jobs: Option<usize>,
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Record method/pmfg time ratios in the manifest.
    #[arg(long)]
    #[serde(skip)]
    pub timing: bool,
}

impl Default for CompareArgs {
    fn default() -> Self {
        CompareArgs {
            dists: Vec::new(),
            methods: vec![Method::Tmfg],
            samples: 20,
            p: vec![400],
            seed: 0,
            series: None,
            window: 1000,
            transform: Transform::Squared,
            format: TableFormat::Json,
            jobs: None,
            output: None,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub sample: u64,
    pub pmfg_total: Weight,
    /// One per method, in the document's method order.
    pub totals: Vec<Weight>,
    pub ratios: Vec<Weight>,
    /// Variants that returned the base build.
    pub base_fallback: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub dist: String,
    pub p: usize,
    /// Mean of `total(method) / total(pmfg)` over samples, per method.
    pub mean_ratio: Vec<Weight>,
    pub samples: Vec<SampleRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareDoc {
    pub methods: Vec<Method>,
    pub rows: Vec<CompareRow>,
    pub manifest: RunManifest,
}

fn time_key(row: &CompareRow, m: Method) -> String {
    format!("time_ratio {} p={} {}", row.dist, row.p, m)
}

impl CompareDoc {
    pub fn render(&self, format: TableFormat) -> Vec<u8> {
        match format {
            TableFormat::Json => json_bytes(self),
            TableFormat::Table => {
                let times = self.manifest.elapsed.as_ref();
                let mut s = format!("# manifest {}\n", self.manifest.to_line());
                let _ = write!(s, "{:<16} {:>6} {:>8}", "distribution", "p", "samples");
                for m in &self.methods {
                    let _ = write!(s, " {:>10}", m.name());
                    if times.is_some() {
                        let _ = write!(s, " {:>10}", "time");
                    }
                }
                s.push('\n');
                for row in &self.rows {
                    let _ = write!(s, "{:<16} {:>6} {:>8}", row.dist, row.p, row.samples.len());
                    for (m, r) in self.methods.iter().zip(&row.mean_ratio) {
                        let _ = write!(s, " {:>9.2}%", 100.0 * r.0);
                        if let Some(t) = times {
                            match t.get(&time_key(row, *m)) {
                                Some(x) => {
                                    let _ = write!(s, " {:>9.3}%", 100.0 * x);
                                }
                                None => {
                                    let _ = write!(s, " {:>10}", "-");
                                }
                            }
                        }
                    }
                    s.push('\n');
                }
                s.into_bytes()
            }
        }
    }

    pub fn row(&self, dist: &str, p: usize) -> Option<&CompareRow> {
        self.rows.iter().find(|r| r.dist == dist && r.p == p)
    }
}

enum Source {
    Synthetic(Vec<(String, MatrixSpec)>),
    Series(TimeSeries),
}

struct Outcome {
    record: SampleRecord,
    time_ratios: Vec<f64>,
}

fn window(series: &TimeSeries, len: usize, seed: u64, sample: u64) -> Result<TimeSeries> {
    let q = series.observations();
    let mut rng = rng_for(seed, sample);
    let start = rng.random_range(0..=q - len);
    let columns = (0..series.variables())
        .map(|j| series.column(j)[start..start + len].to_vec())
        .collect();
    Ok(TimeSeries::from_columns(columns, Some(series.names().to_vec()))?)
}

fn one_sample(w: &WeightOracle, sample: u64, methods: &[Method]) -> Result<Outcome> {
    let start = Instant::now();
    let pmfg = build_pmfg(w)?;
    let pmfg_time = start.elapsed().as_secs_f64();
    let mut record = SampleRecord {
        sample,
        pmfg_total: Weight(pmfg.total_weight),
        totals: Vec::new(),
        ratios: Vec::new(),
        base_fallback: Vec::new(),
    };
    let mut time_ratios = Vec::new();
    for &m in methods {
        let start = Instant::now();
        let total = if m == Method::Pmfg {
            pmfg.total_weight
        } else {
            let r = run_method(w, m, ScoreFunction::EdgeWeightSum)?;
            record.base_fallback.push(r.stats.base_fallback);
            r.total_weight
        };
        if m == Method::Pmfg {
            record.base_fallback.push(false);
            time_ratios.push(1.0);
        } else {
            time_ratios.push(start.elapsed().as_secs_f64() / pmfg_time);
        }
        record.totals.push(Weight(total));
        record.ratios.push(Weight(total / pmfg.total_weight));
    }
    Ok(Outcome {
        record,
        time_ratios,
    })
}

fn mean(xs: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = xs.len();
    xs.sum::<f64>() / n as f64
}

pub fn compare(args: &CompareArgs) -> Result<Artifact> {
    if args.samples == 0 {
        return Err(CliError::Input("--samples must be at least 1".into()));
    }
    if args.methods.is_empty() {
        return Err(CliError::Input("no methods given".into()));
    }
    let mut manifest = RunManifest::new("compare", args)?;
    manifest.seeds.push(args.seed);

    let source = match &args.series {
        Some(path) => {
            if !args.dists.is_empty() {
                return Err(CliError::Input("--dist and --series are exclusive".into()));
            }
            let (bytes, digest) = read_input(path)?;
            manifest.inputs.push(digest);
            let series = read_timeseries_csv(bytes.as_slice())
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            if args.window < 2 || args.window > series.observations() {
                return Err(CliError::Input(format!(
                    "window of {} observations does not fit a series of {}",
                    args.window,
                    series.observations()
                )));
            }
            Source::Series(series)
        }
        None => {
            let dists: Vec<String> = if args.dists.is_empty() {
                TABLE_FAMILIES.iter().map(|s| s.to_string()).collect()
            } else {
                args.dists.clone()
            };
            let mut specs = Vec::new();
            for d in &dists {
                let family = parse_family(d)?;
                for &p in &args.p {
                    let spec = MatrixSpec {
                        transform: args.transform,
                        ..MatrixSpec::new(family.clone(), p, args.seed)
                    };
                    specs.push((family.label(), spec));
                }
            }
            Source::Synthetic(specs)
        }
    };

    let (labels, rows_n): (Vec<(String, usize)>, usize) = match &source {
        Source::Synthetic(specs) => (specs.iter().map(|(l, s)| (l.clone(), s.p)).collect(), specs.len()),
        Source::Series(s) => (vec![("series".to_string(), s.variables())], 1),
    };
    let n = args.samples;
    let outcomes = run_indexed(rows_n * n, args.jobs.unwrap_or_else(default_jobs), |k| {
        let (row, sample) = (k / n, (k % n) as u64);
        let w = match &source {
            Source::Synthetic(specs) => generate(&specs[row].1.clone().with_sample(sample))?,
            Source::Series(s) => {
                let win = window(s, args.window, args.seed, sample)?;
                WeightOracle::dense_correlation(&win, args.transform)?
            }
        };
        one_sample(&w, sample, &args.methods)
    })?;

    let mut rows = Vec::new();
    for (r, chunk) in outcomes.chunks(n).enumerate() {
        let (dist, p) = labels[r].clone();
        let mean_ratio = (0..args.methods.len())
            .map(|m| Weight(mean(chunk.iter().map(|o| o.record.ratios[m].0))))
            .collect();
        let row = CompareRow {
            dist,
            p,
            mean_ratio,
            samples: chunk.iter().map(|o| o.record.clone()).collect(),
        };
        if args.timing {
            for (m, &method) in args.methods.iter().enumerate() {
                let t = mean(chunk.iter().map(|o| o.time_ratios[m]));
                manifest.record_time(time_key(&row, method), t);
            }
        }
        rows.push(row);
    }
    Ok(Artifact::Compare(
        CompareDoc {
            methods: args.methods.clone(),
            rows,
            manifest,
        },
        args.format,
    ))
}
