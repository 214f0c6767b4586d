use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde::{Deserialize, Serialize};
use tmfg::synth::{generate, MatrixSpec};
use tmfg::{Method, ScoreFunction, Transform};

use super::filter::run_method;
use super::parse_family;
use crate::artifact::Artifact;
use crate::format::{json_bytes, TableFormat};
use crate::manifest::RunManifest;
use crate::{CliError, Result};

pub const MIN_SIZE: usize = 50;
pub const MIN_REPS: usize = 3;

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "tmfg,pmfg")]
    pub methods: Vec<Method>,
    /// Dimensions to time, each at least 50.
    #[arg(long, value_delimiter = ',', default_value = "100,200,400,800")]
    pub sizes: Vec<usize>,
    /// Timed repetitions per size; the median is reported.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value = "uniform")]
    pub dist: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: TableFormat,
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl Default for BenchArgs {
    fn default() -> Self {
        BenchArgs {
            methods: vec![Method::Tmfg, Method::Pmfg],
            sizes: vec![100, 200, 400, 800],
            reps: MIN_REPS,
            dist: "uniform".into(),
            seed: 0,
            format: TableFormat::Json,
            output: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub method: Method,
    pub p: usize,
    pub median_seconds: f64,
    pub seconds: Vec<f64>,
}

/// `t = a·p^degree + b·p^(degree-1)` by least squares, and the slope of
/// `ln t` against `ln p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub method: Method,
    pub degree: u32,
    pub a: f64,
    pub b: f64,
    pub loglog_slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchDoc {
    pub timings: Vec<Timing>,
    pub fits: Vec<Fit>,
    pub manifest: RunManifest,
}

impl BenchDoc {
    pub fn render(&self, format: TableFormat) -> Vec<u8> {
        match format {
            TableFormat::Json => json_bytes(self),
            TableFormat::Table => {
                let mut s = format!("# manifest {}\n", self.manifest.to_line());
                let _ = writeln!(s, "{:<8} {:>6} {:>14}", "method", "p", "median (s)");
                for t in &self.timings {
                    let _ = writeln!(s, "{:<8} {:>6} {:>14.6}", t.method.name(), t.p, t.median_seconds);
                }
                s.push('\n');
                for f in &self.fits {
                    let _ = writeln!(
                        s,
                        "{:<8} t = {:.3e}·p^{} {:+.3e}·p^{}   log-log slope {:.3}",
                        f.method.name(),
                        f.a,
                        f.degree,
                        f.b,
                        f.degree - 1,
                        f.loglog_slope
                    );
                }
                s.into_bytes()
            }
        }
    }

    pub fn median(&self, method: Method, p: usize) -> Option<f64> {
        self.timings
            .iter()
            .find(|t| t.method == method && t.p == p)
            .map(|t| t.median_seconds)
    }

    pub fn fit(&self, method: Method) -> Option<&Fit> {
        self.fits.iter().find(|f| f.method == method)
    }
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Least-squares `(a, b)` for `t ≈ a·p^d + b·p^(d-1)`.
pub fn poly_fit(ps: &[f64], ts: &[f64], degree: i32) -> (f64, f64) {
    let (mut s11, mut s12, mut s22, mut s1t, mut s2t) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&p, &t) in ps.iter().zip(ts) {
        let (x1, x2) = (p.powi(degree), p.powi(degree - 1));
        s11 += x1 * x1;
        s12 += x1 * x2;
        s22 += x2 * x2;
        s1t += x1 * t;
        s2t += x2 * t;
    }
    let det = s11 * s22 - s12 * s12;
    ((s1t * s22 - s2t * s12) / det, (s11 * s2t - s12 * s1t) / det)
}

pub fn degree_of(m: Method) -> u32 {
    if m == Method::Pmfg {
        3
    } else {
        2
    }
}

pub fn bench(args: &BenchArgs) -> Result<Artifact> {
    if let Some(&p) = args.sizes.iter().find(|&&p| p < MIN_SIZE) {
        return Err(CliError::Input(format!("size {p} is below the minimum of {MIN_SIZE}")));
    }
    if args.reps < MIN_REPS {
        return Err(CliError::Input(format!("--reps must be at least {MIN_REPS}")));
    }
    if args.sizes.len() < 2 {
        return Err(CliError::Input("at least two sizes are needed for a fit".into()));
    }
    let family = parse_family(&args.dist)?;
    let mut manifest = RunManifest::new("bench", args)?;
    manifest.seeds.push(args.seed);

    let start = Instant::now();
    let mut timings = Vec::new();
    for &p in &args.sizes {
        let spec = MatrixSpec {
            transform: Transform::Squared,
            ..MatrixSpec::new(family.clone(), p, args.seed)
        };
        let w = generate(&spec)?;
        for &m in &args.methods {
            let seconds: Vec<f64> = (0..args.reps)
                .map(|_| {
                    let t = Instant::now();
                    run_method(&w, m, ScoreFunction::EdgeWeightSum).map(|_| t.elapsed().as_secs_f64())
                })
                .collect::<Result<_>>()?;
            timings.push(Timing {
                method: m,
                p,
                median_seconds: median(&seconds),
                seconds,
            });
        }
    }
    let fits = args
        .methods
        .iter()
        .map(|&m| {
            let (ps, ts): (Vec<f64>, Vec<f64>) = timings
                .iter()
                .filter(|t| t.method == m)
                .map(|t| (t.p as f64, t.median_seconds))
                .unzip();
            let degree = degree_of(m);
            let (a, b) = poly_fit(&ps, &ts, degree as i32);
            let logs = |v: &[f64]| v.iter().map(|x| x.ln()).collect::<Vec<_>>();
            Fit {
                method: m,
                degree,
                a,
                b,
                loglog_slope: slope(&logs(&ps), &logs(&ts)),
            }
        })
        .collect();
    manifest.record_time("total", start.elapsed().as_secs_f64());
    Ok(Artifact::Bench(
        BenchDoc {
            timings,
            fits,
            manifest,
        },
        args.format,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_polynomials_are_recovered() {
        let ps = [100.0, 200.0, 400.0, 800.0];
        let ts: Vec<f64> = ps.iter().map(|p| 2e-9 * p * p * p + 3e-7 * p * p).collect();
        let (a, b) = poly_fit(&ps, &ts, 3);
        assert!((a - 2e-9).abs() < 1e-18 && (b - 3e-7).abs() < 1e-15, "{a} {b}");
        let ts: Vec<f64> = ps.iter().map(|p| 5e-6 * p.powf(2.5)).collect();
        let lp: Vec<f64> = ps.iter().map(|p| p.ln()).collect();
        let lt: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
        assert!((slope(&lp, &lt) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
