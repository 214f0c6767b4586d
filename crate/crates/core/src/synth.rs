//! Random weight-matrix families and CSV ingestion.
//!
//! Every random family draws from a ChaCha20 stream keyed by
//! `(seed, sample)`, so one seed can drive many independent samples and the
//! same `(spec, sample)` always reproduces the same matrix.

use std::io::Read;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Beta, Distribution, Pareto, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scores::{TimeSeries, Transform, WeightOracle};

/// Identifier of the random number generator, recorded in run metadata.
pub const RNG_ALGORITHM: &str = "chacha20";

/// Default number of simulated observations for factor-model matrices.
pub const DEFAULT_OBSERVATIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    /// iid `U[0, 1)` entries.
    Uniform,
    /// iid `Beta(alpha, beta)` entries.
    Beta { alpha: f64, beta: f64 },
    /// iid Pareto entries with scale 1 and tail exponent `exponent`.
    Pareto { exponent: f64 },
    /// Correlations of `observations` draws of `X = L F + ε` with `factors`
    /// standard-normal common factors, then transformed.
    Factor { factors: usize, observations: usize },
    /// Dense CSV matrix, one row per line, optional header.
    FileMatrix { path: PathBuf },
    /// CSV time series: header of names, then one observation per line.
    FileTimeseries { path: PathBuf },
}

impl Family {
    /// Short label such as `beta(0.5,3)` or `factor(20)`.
    pub fn label(&self) -> String {
        match self {
            Family::Uniform => "uniform".into(),
            Family::Beta { alpha, beta } => format!("beta({alpha},{beta})"),
            Family::Pareto { exponent } => format!("pareto({exponent})"),
            Family::Factor { factors, .. } => format!("factor({factors})"),
            Family::FileMatrix { path } => format!("matrix:{}", path.display()),
            Family::FileTimeseries { path } => format!("series:{}", path.display()),
        }
    }

    /// Parses `uniform`, `beta(a,b)`, `pareto(x)`, `factor(k)` or
    /// `factor(k,q)`.
    pub fn parse(s: &str) -> Result<Family> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("unknown distribution {s:?}"));
        if s == "uniform" {
            return Ok(Family::Uniform);
        }
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<&str> = args.split(',').map(str::trim).collect();
        let num = |i: usize| -> Result<f64> {
            nums.get(i)
                .and_then(|x| x.parse::<f64>().ok())
                .ok_or_else(bad)
        };
        let int = |i: usize| -> Result<usize> {
            nums.get(i)
                .and_then(|x| x.parse::<usize>().ok())
                .ok_or_else(bad)
        };
        let fam = match (name.trim(), nums.len()) {
            ("beta", 2) => Family::Beta {
                alpha: num(0)?,
                beta: num(1)?,
            },
            ("pareto", 1) => Family::Pareto { exponent: num(0)? },
            ("factor", 1) => Family::Factor {
                factors: int(0)?,
                observations: DEFAULT_OBSERVATIONS,
            },
            ("factor", 2) => Family::Factor {
                factors: int(0)?,
                observations: int(1)?,
            },
            _ => return Err(bad()),
        };
        fam.check()?;
        Ok(fam)
    }

    fn check(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        match self {
            Family::Beta { alpha, beta } if !(positive(*alpha) && positive(*beta)) => Err(
                Error::InvalidParameter(format!("beta shapes must be positive: {alpha}, {beta}")),
            ),
            Family::Pareto { exponent } if !positive(*exponent) => Err(Error::InvalidParameter(
                format!("pareto exponent must be positive: {exponent}"),
            )),
            Family::Factor {
                factors,
                observations,
            } if *factors == 0 || *observations < 2 => Err(Error::InvalidParameter(format!(
                "factor model needs at least one factor and two observations, got {factors} and {observations}"
            ))),
            _ => Ok(()),
        }
    }
}

/// A reproducible description of one weight matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixSpec {
    pub family: Family,
    /// Dimension; ignored (may be 0) for file families, which take it from
    /// the file.
    pub p: usize,
    pub seed: u64,
    /// Index of the independent sample drawn from `seed`.
    #[serde(default)]
    pub sample: u64,
    pub transform: Transform,
}

impl MatrixSpec {
    pub fn new(family: Family, p: usize, seed: u64) -> Self {
        MatrixSpec {
            family,
            p,
            seed,
            sample: 0,
            transform: Transform::Squared,
        }
    }

    pub fn with_sample(mut self, sample: u64) -> Self {
        self.sample = sample;
        self
    }
}

/// The generator for sample `sample` of `seed`: one ChaCha20 stream per
/// sample.
pub fn rng_for(seed: u64, sample: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    rng
}

fn iid(p: usize, rng: &mut ChaCha20Rng, mut draw: impl FnMut(&mut ChaCha20Rng) -> f64) -> Result<WeightOracle> {
    WeightOracle::from_fn(p, |_, _| draw(rng))
}

/// Materializes the oracle described by `spec`.
pub fn generate(spec: &MatrixSpec) -> Result<WeightOracle> {
    spec.family.check()?;
    let random = !matches!(
        spec.family,
        Family::FileMatrix { .. } | Family::FileTimeseries { .. }
    );
    if random && spec.p < 4 {
        return Err(Error::TooFewVertices {
            required: 4,
            actual: spec.p,
        });
    }
    let mut rng = rng_for(spec.seed, spec.sample);
    let p = spec.p;
    let w = match &spec.family {
        Family::Uniform => iid(p, &mut rng, |r| r.random::<f64>())?,
        Family::Beta { alpha, beta } => {
            let d = Beta::new(*alpha, *beta)
                .map_err(|e| Error::InvalidParameter(format!("beta: {e}")))?;
            iid(p, &mut rng, |r| d.sample(r))?
        }
        Family::Pareto { exponent } => {
            let d = Pareto::new(1.0, *exponent)
                .map_err(|e| Error::InvalidParameter(format!("pareto: {e}")))?;
            iid(p, &mut rng, |r| d.sample(r))?
        }
        Family::Factor {
            factors,
            observations,
        } => {
            let series = factor_series(p, *factors, *observations, &mut rng)?;
            WeightOracle::dense_correlation(&series, spec.transform)?
        }
        Family::FileMatrix { path } => {
            let f = std::fs::File::open(path)?;
            read_matrix_csv(f, spec.transform)?
        }
        Family::FileTimeseries { path } => {
            let f = std::fs::File::open(path)?;
            let series = read_timeseries_csv(f)?;
            WeightOracle::dense_correlation(&series, spec.transform)?
        }
    };
    if !random && spec.p != 0 && spec.p != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.p,
            actual: w.dim(),
        });
    }
    Ok(w)
}

/// Simulates `q` observations of `p` series driven by `k` common factors:
/// `X = L F + ε` with standard-normal loadings `L` (drawn row by row),
/// factors `F` (factor by factor) and unit-variance noise (series by series).
pub fn factor_series(p: usize, k: usize, q: usize, rng: &mut impl Rng) -> Result<TimeSeries> {
    let mut normal = || -> f64 { rng.sample(StandardNormal) };
    let loadings: Vec<f64> = (0..p * k).map(|_| normal()).collect();
    let factors: Vec<f64> = (0..k * q).map(|_| normal()).collect();
    let mut columns = Vec::with_capacity(p);
    for j in 0..p {
        let l = &loadings[j * k..(j + 1) * k];
        let col: Vec<f64> = (0..q)
            .map(|t| {
                let signal: f64 = (0..k).map(|f| l[f] * factors[f * q + t]).sum();
                signal + normal()
            })
            .collect();
        columns.push(col);
    }
    TimeSeries::from_columns(columns, None)
}

fn csv_reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(r)
}

fn parse_row(rec: &csv::StringRecord, line: usize) -> Result<Vec<f64>> {
    rec.iter()
        .enumerate()
        .map(|(c, s)| {
            s.parse::<f64>().map_err(|_| Error::Parse {
                line,
                message: format!("column {}: {s:?} is not a number", c + 1),
            })
        })
        .collect()
}

fn rows<R: Read>(r: R) -> Result<Vec<(usize, csv::StringRecord)>> {
    let mut out = Vec::new();
    for rec in csv_reader(r).into_records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let line = rec.position().map_or(0, |p| p.line() as usize);
        out.push((line, rec));
    }
    Ok(out)
}

/// Reads a dense square matrix. A first line that does not parse as numbers
/// is taken as a header. The diagonal is ignored; off-diagonal entries are
/// transformed, must end up finite and nonnegative, and must be symmetric.
pub fn read_matrix_csv<R: Read>(r: R, transform: Transform) -> Result<WeightOracle> {
    let mut recs = rows(r)?;
    if let Some((_, first)) = recs.first() {
        if first.iter().any(|s| s.parse::<f64>().is_err()) {
            recs.remove(0);
        }
    }
    let p = recs.len();
    let mut values = Vec::with_capacity(p * p);
    let mut lines = Vec::with_capacity(p);
    for (line, rec) in &recs {
        let row = parse_row(rec, *line)?;
        if row.len() != p {
            return Err(Error::Parse {
                line: *line,
                message: format!("expected {p} columns, found {}", row.len()),
            });
        }
        values.extend(row);
        lines.push(*line);
    }
    for i in 0..p {
        for j in 0..p {
            if i != j {
                let x = &mut values[i * p + j];
                *x = transform.apply(*x);
            }
        }
    }
    WeightOracle::from_dense(p, values).map_err(|e| match e {
        Error::InvalidWeight { i, j, value } => Error::Parse {
            line: lines[i],
            message: format!("entry ({i}, {j}) = {value} is not a finite nonnegative weight"),
        },
        Error::Asymmetric { i, j, a, b } => Error::Parse {
            line: lines[j],
            message: format!("entry ({j}, {i}) = {b} differs from ({i}, {j}) = {a}"),
        },
        other => other,
    })
}

/// Reads a time series: a header row of variable names followed by one row
/// of numbers per observation.
pub fn read_timeseries_csv<R: Read>(r: R) -> Result<TimeSeries> {
    let recs = rows(r)?;
    let Some((_, header)) = recs.first() else {
        return Err(Error::Parse {
            line: 1,
            message: "empty input; a header row of names is required".into(),
        });
    };
    if header.iter().all(|s| s.parse::<f64>().is_ok()) {
        return Err(Error::Parse {
            line: recs[0].0,
            message: "first row must be a header of variable names".into(),
        });
    }
    let names: Vec<String> = header.iter().map(str::to_owned).collect();
    let p = names.len();
    let mut columns = vec![Vec::with_capacity(recs.len() - 1); p];
    for (line, rec) in &recs[1..] {
        let row = parse_row(rec, *line)?;
        if row.len() != p {
            return Err(Error::Parse {
                line: *line,
                message: format!("expected {p} columns, found {}", row.len()),
            });
        }
        for (c, x) in row.into_iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::Parse {
                    line: *line,
                    message: format!("column {}: {x} is not finite", c + 1),
                });
            }
            columns[c].push(x);
        }
    }
    let series = TimeSeries::from_columns(columns, Some(names))?;
    series.check_correlatable()?;
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    #[test]
    fn uniform_p4_has_six_entries_in_unit_interval() {
        let w = generate(&MatrixSpec::new(Family::Uniform, 4, 9)).unwrap();
        let mut xs = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let x = w.weight(v(i), v(j));
                assert_eq!(x, w.weight(v(j), v(i)));
                assert!((0.0..1.0).contains(&x));
                xs.push(x);
            }
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        assert_eq!(xs.len(), 6);
    }

    #[test]
    fn same_spec_same_matrix_different_sample_differs() {
        let s = MatrixSpec::new(Family::Pareto { exponent: 2.0 }, 20, 5);
        let a = generate(&s).unwrap().to_dense();
        let b = generate(&s).unwrap().to_dense();
        let c = generate(&s.clone().with_sample(1)).unwrap().to_dense();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn family_labels_round_trip() {
        for s in ["uniform", "beta(0.5,3)", "pareto(1)", "factor(20)"] {
            assert_eq!(Family::parse(s).unwrap().label(), s);
        }
        assert!(Family::parse("beta(0,1)").is_err());
        assert!(Family::parse("gamma(2)").is_err());
        assert_eq!(
            Family::parse("factor(5, 300)").unwrap(),
            Family::Factor {
                factors: 5,
                observations: 300
            }
        );
    }

    #[test]
    fn matrix_csv_with_header_and_errors() {
        let ok = "a,b,c\n0,0.5,0.25\n0.5,0,1\n0.25,1,0\n";
        let w = read_matrix_csv(ok.as_bytes(), Transform::Raw).unwrap();
        assert_eq!(w.dim(), 3);
        assert_eq!(w.weight(v(1), v(2)), 1.0);
        let asym = "0,0.5,0.25\n0.5,0,1\n0.3,1,0\n";
        match read_matrix_csv(asym.as_bytes(), Transform::Raw) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let neg = "0,-0.5\n-0.5,0\n";
        assert!(matches!(
            read_matrix_csv(neg.as_bytes(), Transform::Raw),
            Err(Error::Parse { line: 1, .. })
        ));
        // squaring makes the same input valid
        assert!(read_matrix_csv(neg.as_bytes(), Transform::Squared).is_ok());
        let ragged = "0,1\n1,0,2\n";
        assert!(matches!(
            read_matrix_csv(ragged.as_bytes(), Transform::Raw),
            Err(Error::Parse { line: 2, .. })
        ));
        let nan = "0,NaN\nNaN,0\n";
        assert!(read_matrix_csv(nan.as_bytes(), Transform::Raw).is_err());
    }

    #[test]
    fn timeseries_csv_requires_header() {
        let ok = "x,y\n1,2\n2,4\n3,7\n";
        let s = read_timeseries_csv(ok.as_bytes()).unwrap();
        assert_eq!(s.names(), &["x".to_string(), "y".to_string()]);
        assert_eq!(s.observations(), 3);
        assert!(read_timeseries_csv("1,2\n3,4\n".as_bytes()).is_err());
        assert!(matches!(
            read_timeseries_csv("x,y\n1,2\n3,oops\n".as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn factor_matrix_is_a_correlation_matrix_before_transform() {
        let spec = MatrixSpec {
            transform: Transform::Raw,
            ..MatrixSpec::new(
                Family::Factor {
                    factors: 3,
                    observations: 200,
                },
                12,
                4,
            )
        };
        let mut rng = rng_for(spec.seed, spec.sample);
        let series = factor_series(12, 3, 200, &mut rng).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                let r = crate::scores::correlation(v(i), v(j), &series).unwrap();
                assert!((-1.0..=1.0).contains(&r));
                if i == j {
                    assert!((r - 1.0).abs() < 1e-12);
                }
            }
        }
        // raw correlations include negative values, which are not weights
        assert!(matches!(generate(&spec), Err(Error::InvalidWeight { .. })));
    }
}
