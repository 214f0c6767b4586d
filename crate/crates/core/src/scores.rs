//! Weight oracles and score functions.
//!
//! A [`WeightOracle`] answers `w(i, j)` for a symmetric nonnegative weight
//! matrix, either from a dense table or lazily from stored time series
//! (correlations computed on first use and cached). The score functions
//! rate the insertion of a vertex into a face: the plain sum of the three
//! new edge weights, or the Gaussian entropy gain `-H(u) + H(t)` of the
//! resulting 4-clique `u` over the face `t`.

use std::collections::HashMap;
use std::f64::consts::{E, PI};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::graph::{CliqueTree, Face, VertexId};

/// Relative tolerance used when checking input matrices for symmetry.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Determinants at or below this are treated as singular.
pub const DETERMINANT_FLOOR: f64 = 1e-12;

/// How a correlation coefficient becomes a weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transform {
    #[default]
    Squared,
    Absolute,
    Raw,
}

impl Transform {
    pub fn apply(self, r: f64) -> f64 {
        match self {
            Transform::Squared => r * r,
            Transform::Absolute => r.abs(),
            Transform::Raw => r,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Transform::Squared => "squared",
            Transform::Absolute => "absolute",
            Transform::Raw => "raw",
        }
    }
}

impl std::str::FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "squared" => Ok(Transform::Squared),
            "absolute" => Ok(Transform::Absolute),
            "raw" => Ok(Transform::Raw),
            _ => Err(Error::InvalidParameter(format!("unknown transform {s:?}"))),
        }
    }
}

/// `q` observations of `p` variables, stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    observations: usize,
    columns: Vec<Vec<f64>>,
    names: Vec<String>,
}

impl TimeSeries {
    /// `columns[j]` holds the `q` observations of variable `j`.
    pub fn from_columns(columns: Vec<Vec<f64>>, names: Option<Vec<String>>) -> Result<Self> {
        let q = columns.first().map_or(0, Vec::len);
        if let Some((j, c)) = columns.iter().enumerate().find(|(_, c)| c.len() != q) {
            return Err(Error::DimensionMismatch {
                expected: q,
                actual: columns[j].len().min(c.len()),
            });
        }
        for (j, c) in columns.iter().enumerate() {
            if let Some((i, &x)) = c.iter().enumerate().find(|(_, x)| !x.is_finite()) {
                return Err(Error::InvalidWeight { i, j, value: x });
            }
        }
        let names = match names {
            Some(n) if n.len() == columns.len() => n,
            Some(n) => {
                return Err(Error::DimensionMismatch {
                    expected: columns.len(),
                    actual: n.len(),
                })
            }
            None => (0..columns.len()).map(|j| format!("x{j}")).collect(),
        };
        Ok(TimeSeries {
            observations: q,
            columns,
            names,
        })
    }

    pub fn observations(&self) -> usize {
        self.observations
    }

    pub fn variables(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Fails unless every column can take part in a correlation.
    pub fn check_correlatable(&self) -> Result<()> {
        if self.observations < 2 {
            return Err(Error::TooFewObservations(self.observations));
        }
        for j in 0..self.variables() {
            let c = &self.columns[j];
            let m = mean(c);
            if c.iter().all(|&x| x == m) {
                return Err(Error::ZeroVariance(j));
            }
        }
        Ok(())
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Pearson correlation of columns `i` and `j`, two-pass (means first, then
/// centred products).
pub fn correlation(i: VertexId, j: VertexId, series: &TimeSeries) -> Result<f64> {
    let q = series.observations();
    if q < 2 {
        return Err(Error::TooFewObservations(q));
    }
    for v in [i, j] {
        if v.index() >= series.variables() {
            return Err(Error::VertexOutOfRange(v, series.variables()));
        }
    }
    let x = series.column(i.index());
    let y = series.column(j.index());
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance(i.index()));
    }
    if syy == 0.0 {
        return Err(Error::ZeroVariance(j.index()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

enum Backing {
    Dense(Vec<f64>),
    Lazy {
        series: TimeSeries,
        transform: Transform,
        // Shared cache; safe for concurrent readers and writers. Values are
        // a pure function of the series, so races only duplicate work.
        cache: RwLock<HashMap<(u32, u32), f64>>,
    },
}

/// Source of symmetric nonnegative pairwise weights `w(i, j)`.
///
/// Diagonal entries are never consulted. The oracle is `Send + Sync`;
/// concurrent builds may share one instance.
pub struct WeightOracle {
    p: usize,
    backing: Backing,
}

impl std::fmt::Debug for WeightOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match &self.backing {
            Backing::Dense(_) => "dense",
            Backing::Lazy { .. } => "lazy",
        };
        f.debug_struct("WeightOracle")
            .field("p", &self.p)
            .field("backing", &kind)
            .finish()
    }
}

impl Clone for WeightOracle {
    fn clone(&self) -> Self {
        let backing = match &self.backing {
            Backing::Dense(d) => Backing::Dense(d.clone()),
            Backing::Lazy {
                series,
                transform,
                cache,
            } => Backing::Lazy {
                series: series.clone(),
                transform: *transform,
                cache: RwLock::new(cache.read().expect("weight cache poisoned").clone()),
            },
        };
        WeightOracle { p: self.p, backing }
    }
}

impl WeightOracle {
    /// Dense row-major `p × p` matrix. The upper triangle is authoritative;
    /// the lower triangle must match it within [`SYMMETRY_TOLERANCE`].
    pub fn from_dense(p: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != p * p {
            return Err(Error::DimensionMismatch {
                expected: p * p,
                actual: values.len(),
            });
        }
        let mut data = values;
        for i in 0..p {
            data[i * p + i] = 0.0;
            for j in i + 1..p {
                let (a, b) = (data[i * p + j], data[j * p + i]);
                check_weight(i, j, a)?;
                check_weight(j, i, b)?;
                if (a - b).abs() > SYMMETRY_TOLERANCE * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::Asymmetric { i, j, a, b });
                }
                data[j * p + i] = a;
            }
        }
        Ok(WeightOracle {
            p,
            backing: Backing::Dense(data),
        })
    }

    /// Dense oracle with `w(i, j) = f(i, j)` for `i < j`.
    pub fn from_fn(p: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = vec![0.0; p * p];
        for i in 0..p {
            for j in i + 1..p {
                let x = f(i, j);
                check_weight(i, j, x)?;
                data[i * p + j] = x;
                data[j * p + i] = x;
            }
        }
        Ok(WeightOracle {
            p,
            backing: Backing::Dense(data),
        })
    }

    /// Correlations computed on demand from `series` and cached.
    ///
    /// Only sign-free transforms are accepted, since lazily computed entries
    /// cannot be validated up front.
    pub fn lazy_correlation(series: TimeSeries, transform: Transform) -> Result<Self> {
        if transform == Transform::Raw {
            return Err(Error::Unsupported(
                "raw correlations can be negative; use a dense oracle to validate them".into(),
            ));
        }
        series.check_correlatable()?;
        Ok(WeightOracle {
            p: series.variables(),
            backing: Backing::Lazy {
                series,
                transform,
                cache: RwLock::new(HashMap::new()),
            },
        })
    }

    /// All pairwise correlations of `series`, transformed and materialized.
    pub fn dense_correlation(series: &TimeSeries, transform: Transform) -> Result<Self> {
        series.check_correlatable()?;
        let p = series.variables();
        let mut data = vec![0.0; p * p];
        for i in 0..p {
            for j in i + 1..p {
                let x = transform.apply(correlation(i.into(), j.into(), series)?);
                check_weight(i, j, x)?;
                data[i * p + j] = x;
                data[j * p + i] = x;
            }
        }
        Ok(WeightOracle {
            p,
            backing: Backing::Dense(data),
        })
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn is_lazy(&self) -> bool {
        matches!(self.backing, Backing::Lazy { .. })
    }

    /// `w(i, j)`; zero on the diagonal.
    #[inline]
    pub fn weight(&self, i: VertexId, j: VertexId) -> f64 {
        let (i, j) = (i.index(), j.index());
        match &self.backing {
            Backing::Dense(d) => d[i * self.p + j],
            Backing::Lazy {
                series,
                transform,
                cache,
            } => {
                if i == j {
                    return 0.0;
                }
                let key = if i < j {
                    (i as u32, j as u32)
                } else {
                    (j as u32, i as u32)
                };
                if let Some(&x) = cache.read().expect("weight cache poisoned").get(&key) {
                    return x;
                }
                let r = correlation(
                    VertexId(key.0),
                    VertexId(key.1),
                    series,
                )
                .expect("series validated at construction");
                let x = transform.apply(r);
                cache
                    .write()
                    .expect("weight cache poisoned")
                    .insert(key, x);
                x
            }
        }
    }

    /// Number of lazily computed entries held in the cache (0 for dense).
    pub fn cached_entries(&self) -> usize {
        match &self.backing {
            Backing::Dense(_) => 0,
            Backing::Lazy { cache, .. } => cache.read().expect("weight cache poisoned").len(),
        }
    }

    /// Dense copy of the full matrix (diagonal zero).
    pub fn to_dense(&self) -> Vec<f64> {
        let p = self.p;
        let mut out = vec![0.0; p * p];
        for i in 0..p {
            for j in i + 1..p {
                let x = self.weight(i.into(), j.into());
                out[i * p + j] = x;
                out[j * p + i] = x;
            }
        }
        out
    }
}

fn check_weight(i: usize, j: usize, x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidWeight { i, j, value: x })
    }
}

/// `w(v, a) + w(v, b) + w(v, c)` for `t = {a, b, c}`.
pub fn score_sum(v: VertexId, t: &Face, w: &WeightOracle) -> Result<f64> {
    if t.contains(v) {
        return Err(Error::VertexInFace { vertex: v, face: *t });
    }
    for x in t.vertices().into_iter().chain([v]) {
        if x.index() >= w.dim() {
            return Err(Error::VertexOutOfRange(x, w.dim()));
        }
    }
    Ok(sum_unchecked(v, t, w))
}

#[inline]
pub(crate) fn sum_unchecked(v: VertexId, t: &Face, w: &WeightOracle) -> f64 {
    let [a, b, c] = t.vertices();
    w.weight(v, a) + w.weight(v, b) + w.weight(v, c)
}

/// Multivariate normal model given by its covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianModel {
    p: usize,
    covariance: Vec<f64>,
}

impl GaussianModel {
    /// Row-major `p × p` covariance; must be symmetric with finite entries.
    /// Positive definiteness is checked per submatrix when used.
    pub fn new(p: usize, covariance: Vec<f64>) -> Result<Self> {
        if covariance.len() != p * p {
            return Err(Error::DimensionMismatch {
                expected: p * p,
                actual: covariance.len(),
            });
        }
        for i in 0..p {
            for j in 0..p {
                let (a, b) = (covariance[i * p + j], covariance[j * p + i]);
                if !a.is_finite() {
                    return Err(Error::InvalidWeight { i, j, value: a });
                }
                if (a - b).abs() > SYMMETRY_TOLERANCE * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::Asymmetric { i, j, a, b });
                }
            }
        }
        Ok(GaussianModel { p, covariance })
    }

    /// Sample covariance (denominator `q - 1`) of a time series.
    pub fn from_series(series: &TimeSeries) -> Result<Self> {
        let q = series.observations();
        if q < 2 {
            return Err(Error::TooFewObservations(q));
        }
        let p = series.variables();
        let means: Vec<f64> = (0..p).map(|j| mean(series.column(j))).collect();
        let mut cov = vec![0.0; p * p];
        for i in 0..p {
            for j in i..p {
                let s: f64 = series
                    .column(i)
                    .iter()
                    .zip(series.column(j))
                    .map(|(a, b)| (a - means[i]) * (b - means[j]))
                    .sum();
                let c = s / (q - 1) as f64;
                cov[i * p + j] = c;
                cov[j * p + i] = c;
            }
        }
        GaussianModel::new(p, cov)
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn covariance(&self, i: usize, j: usize) -> f64 {
        self.covariance[i * self.p + j]
    }

    fn submatrix(&self, idx: &[usize]) -> Result<Vec<f64>> {
        let k = idx.len();
        let mut m = vec![0.0; k * k];
        for (r, &i) in idx.iter().enumerate() {
            if i >= self.p {
                return Err(Error::VertexOutOfRange(VertexId::new(i), self.p));
            }
            for (c, &j) in idx.iter().enumerate() {
                m[r * k + c] = self.covariance[i * self.p + j];
            }
        }
        Ok(m)
    }

    /// Log-determinant of the principal submatrix over `idx`.
    ///
    /// Up to 4×4 this is a cofactor expansion guarded by the leading
    /// principal minors; larger blocks use a Cholesky factorization.
    pub fn log_det(&self, idx: &[usize]) -> Result<f64> {
        let m = self.submatrix(idx)?;
        let not_pd = || Error::NotPositiveDefinite(idx.to_vec());
        if idx.len() <= 4 {
            let k = idx.len();
            let mut det = 1.0;
            for lead in 1..=k {
                let mut sub = vec![0.0; lead * lead];
                for r in 0..lead {
                    sub[r * lead..(r + 1) * lead].copy_from_slice(&m[r * k..r * k + lead]);
                }
                det = cofactor_det(&sub, lead);
                if !(det > 0.0) {
                    return Err(not_pd());
                }
            }
            if det <= DETERMINANT_FLOOR {
                return Err(not_pd());
            }
            Ok(det.ln())
        } else {
            cholesky_log_det(m, idx.len()).ok_or_else(not_pd)
        }
    }

    /// Differential entropy `½ (k ln(2πe) + ln det Σ)` of the marginal over `idx`.
    pub fn entropy(&self, idx: &[usize]) -> Result<f64> {
        Ok(0.5 * (idx.len() as f64 * (2.0 * PI * E).ln() + self.log_det(idx)?))
    }
}

fn cofactor_det(m: &[f64], k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => m[0],
        2 => m[0] * m[3] - m[1] * m[2],
        3 => {
            m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        _ => {
            // expansion along the first row
            let mut det = 0.0;
            let mut minor = vec![0.0; (k - 1) * (k - 1)];
            for col in 0..k {
                let mut idx = 0;
                for r in 1..k {
                    for c in 0..k {
                        if c != col {
                            minor[idx] = m[r * k + c];
                            idx += 1;
                        }
                    }
                }
                let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
                det += sign * m[col] * cofactor_det(&minor, k - 1);
            }
            det
        }
    }
}

fn cholesky_log_det(mut a: Vec<f64>, n: usize) -> Option<f64> {
    let mut log_det = 0.0;
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if !(d > 0.0) {
            return None;
        }
        let l = d.sqrt();
        a[j * n + j] = l;
        log_det += 2.0 * l.ln();
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / l;
        }
    }
    Some(log_det)
}

/// Entropy gain of inserting `v` into `t`: `-H(Σ_u) + H(Σ_t)` with
/// `u = t ∪ {v}`, i.e. `-½ ln(2πe · det Σ_u / det Σ_t)`.
pub fn score_entropy_gaussian(v: VertexId, t: &Face, m: &GaussianModel) -> Result<f64> {
    if t.contains(v) {
        return Err(Error::VertexInFace { vertex: v, face: *t });
    }
    let tv: Vec<usize> = t.vertices().iter().map(|x| x.index()).collect();
    let uv: Vec<usize> = t.with(v).iter().map(|x| x.index()).collect();
    let ld_u = m.log_det(&uv)?;
    let ld_t = m.log_det(&tv)?;
    Ok(-0.5 * ((2.0 * PI * E).ln() + ld_u - ld_t))
}

/// Model entropy `H_m = Σ_cliques H(Σ_c) − Σ_separators H(Σ_s)`.
pub fn model_entropy(ct: &CliqueTree, m: &GaussianModel) -> Result<f64> {
    let mut h = 0.0;
    for c in ct.cliques() {
        let idx: Vec<usize> = c.iter().map(|v| v.index()).collect();
        h += m.entropy(&idx)?;
    }
    for s in ct.separators() {
        let idx: Vec<usize> = s.iter().map(|v| v.index()).collect();
        h -= m.entropy(&idx)?;
    }
    Ok(h)
}

/// `D_KL(P ‖ Q) = −H(Σ) + H_m` for the Gaussian `P` and its factorization
/// `Q` over the clique tree.
pub fn kl_divergence_gaussian(full: &GaussianModel, ct: &CliqueTree) -> Result<f64> {
    let mut covered = vec![false; full.dim()];
    for c in ct.cliques() {
        for v in c {
            if v.index() >= full.dim() {
                return Err(Error::VertexOutOfRange(*v, full.dim()));
            }
            covered[v.index()] = true;
        }
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::InvalidParameter(
            "clique tree does not span every variable".into(),
        ));
    }
    let all: Vec<usize> = (0..full.dim()).collect();
    Ok(model_entropy(ct, full)? - full.entropy(&all)?)
}

/// The score rating a (vertex, face) insertion.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum ScoreFunction {
    /// Sum of the three new edge weights.
    #[default]
    EdgeWeightSum,
    /// Negative uncertainty added to the Gaussian clique-tree model.
    GaussianEntropy(GaussianModel),
}

impl ScoreFunction {
    pub fn name(&self) -> &'static str {
        match self {
            ScoreFunction::EdgeWeightSum => "sum",
            ScoreFunction::GaussianEntropy(_) => "entropy",
        }
    }

    pub fn evaluate(&self, w: &WeightOracle, v: VertexId, t: &Face) -> Result<f64> {
        match self {
            ScoreFunction::EdgeWeightSum => score_sum(v, t, w),
            ScoreFunction::GaussianEntropy(m) => score_entropy_gaussian(v, t, m),
        }
    }

    #[inline]
    pub(crate) fn evaluate_fast(&self, w: &WeightOracle, v: VertexId, t: &Face) -> Result<f64> {
        match self {
            ScoreFunction::EdgeWeightSum => Ok(sum_unchecked(v, t, w)),
            ScoreFunction::GaussianEntropy(m) => score_entropy_gaussian(v, t, m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    #[test]
    fn unit_weights_score_three() {
        let w = WeightOracle::from_fn(5, |_, _| 1.0).unwrap();
        assert_eq!(score_sum(v(4), &Face::new(0, 1, 2), &w).unwrap(), 3.0);
    }

    #[test]
    fn score_sum_adds_three_terms() {
        let w = WeightOracle::from_fn(4, |i, j| match (i, j) {
            (0, 3) => 0.2,
            (1, 3) => 0.3,
            (2, 3) => 0.5,
            _ => 9.0,
        })
        .unwrap();
        assert_eq!(score_sum(v(3), &Face::new(0, 1, 2), &w).unwrap(), 1.0);
    }

    #[test]
    fn score_sum_rejects_member_vertex() {
        let w = WeightOracle::from_fn(4, |_, _| 1.0).unwrap();
        assert!(matches!(
            score_sum(v(1), &Face::new(0, 1, 2), &w),
            Err(Error::VertexInFace { .. })
        ));
    }

    #[test]
    fn dense_rejects_bad_input() {
        assert!(matches!(
            WeightOracle::from_dense(2, vec![0.0, -1.0, -1.0, 0.0]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(matches!(
            WeightOracle::from_dense(2, vec![0.0, f64::NAN, f64::NAN, 0.0]),
            Err(Error::InvalidWeight { .. })
        ));
        assert!(matches!(
            WeightOracle::from_dense(2, vec![0.0, 0.5, 0.6, 0.0]),
            Err(Error::Asymmetric { .. })
        ));
        // diagonal is ignored
        let w = WeightOracle::from_dense(2, vec![-7.0, 0.5, 0.5, f64::NAN]).unwrap();
        assert_eq!(w.weight(v(0), v(1)), 0.5);
    }

    #[test]
    fn correlation_of_identical_and_negated_columns() {
        let x = vec![1.0, 2.0, 4.0, 8.0];
        let neg: Vec<f64> = x.iter().map(|a| -a).collect();
        let s = TimeSeries::from_columns(vec![x.clone(), x, neg], None).unwrap();
        assert!((correlation(v(0), v(1), &s).unwrap() - 1.0).abs() < 1e-15);
        assert!((correlation(v(0), v(2), &s).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn correlation_errors() {
        let s = TimeSeries::from_columns(vec![vec![1.0, 1.0], vec![1.0, 2.0]], None).unwrap();
        assert_eq!(correlation(v(0), v(1), &s), Err(Error::ZeroVariance(0)));
        let s = TimeSeries::from_columns(vec![vec![1.0], vec![2.0]], None).unwrap();
        assert_eq!(
            correlation(v(0), v(1), &s),
            Err(Error::TooFewObservations(1))
        );
    }

    #[test]
    fn lazy_rejects_raw_transform() {
        let s = TimeSeries::from_columns(vec![vec![1.0, 2.0], vec![2.0, 1.0]], None).unwrap();
        assert!(WeightOracle::lazy_correlation(s, Transform::Raw).is_err());
    }

    #[test]
    fn independent_vertex_entropy_gain() {
        // t = {0,1,2} correlated, vertex 3 independent with variance 2.5
        let cov = vec![
            1.0, 0.3, 0.2, 0.0, //
            0.3, 1.0, 0.1, 0.0, //
            0.2, 0.1, 1.0, 0.0, //
            0.0, 0.0, 0.0, 2.5,
        ];
        let m = GaussianModel::new(4, cov).unwrap();
        let s = score_entropy_gaussian(v(3), &Face::new(0, 1, 2), &m).unwrap();
        let expected = -0.5 * (2.0 * PI * E * 2.5).ln();
        assert!((s - expected).abs() < 1e-12, "{s} vs {expected}");
    }

    #[test]
    fn non_positive_definite_block_is_rejected() {
        let cov = vec![
            1.0, 1.0, 0.0, 0.0, //
            1.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ];
        let m = GaussianModel::new(4, cov).unwrap();
        assert!(matches!(
            score_entropy_gaussian(v(3), &Face::new(0, 1, 2), &m),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn single_clique_model_entropy_is_joint_entropy() {
        let cov = vec![
            2.0, 0.3, 0.2, 0.1, //
            0.3, 1.5, 0.4, 0.0, //
            0.2, 0.4, 1.0, 0.2, //
            0.1, 0.0, 0.2, 1.2,
        ];
        let m = GaussianModel::new(4, cov).unwrap();
        let ct = CliqueTree::with_root([v(0), v(1), v(2), v(3)]);
        let hm = model_entropy(&ct, &m).unwrap();
        assert!((hm - m.entropy(&[0, 1, 2, 3]).unwrap()).abs() < 1e-14);
        assert!(kl_divergence_gaussian(&m, &ct).unwrap().abs() < 1e-12);
    }
}
