use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use tmfg::scores::{kl_divergence_gaussian, model_entropy, score_entropy_gaussian, GaussianModel};
use tmfg::{build, BuildConfig, CliqueTree, Face, ScoreFunction, VertexId, WeightOracle};

fn random_spd(p: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: DMatrix<f64> = DMatrix::from_fn(p, p + 3, |_, _| StandardNormal.sample(&mut rng));
    &a * a.transpose() / (p + 3) as f64 + DMatrix::identity(p, p) * 0.05
}

fn model(s: &DMatrix<f64>) -> GaussianModel {
    let p = s.nrows();
    GaussianModel::new(p, (0..p * p).map(|k| s[(k / p, k % p)]).collect()).unwrap()
}

fn squared_correlations(s: &DMatrix<f64>) -> WeightOracle {
    WeightOracle::from_fn(s.nrows(), |i, j| {
        let r = s[(i, j)] / (s[(i, i)] * s[(j, j)]).sqrt();
        r * r
    })
    .unwrap()
}

fn entropy_tree(s: &DMatrix<f64>) -> CliqueTree {
    let cfg = BuildConfig {
        score: ScoreFunction::GaussianEntropy(model(s)),
        ..BuildConfig::default()
    };
    build(&squared_correlations(s), &cfg).unwrap().clique_tree.unwrap()
}

fn sub(s: &DMatrix<f64>, idx: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(idx.len(), idx.len(), |r, c| s[(idx[r], idx[c])])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn log_det_matches_a_dense_determinant(p in 1usize..9, seed in any::<u64>()) {
        let s = random_spd(p, seed);
        let m = model(&s);
        let idx: Vec<usize> = (0..p).collect();
        let want = s.determinant().ln();
        let got = m.log_det(&idx).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{} vs {}", got, want);
        for k in 1..p.min(4) {
            let part: Vec<usize> = (0..k).map(|i| (i * 3 + seed as usize) % p).collect();
            let mut part = part;
            part.sort_unstable();
            part.dedup();
            let want = sub(&s, &part).determinant().ln();
            prop_assert!((m.log_det(&part).unwrap() - want).abs() <= 1e-9 * want.abs().max(1.0));
        }
    }

    #[test]
    fn kl_divergence_is_never_negative(p in 4usize..13, seed in any::<u64>()) {
        let s = random_spd(p, seed);
        let kl = kl_divergence_gaussian(&model(&s), &entropy_tree(&s)).unwrap();
        prop_assert!(kl >= -1e-9, "{}", kl);
    }
}

/// Precision assembled from clique and separator inverses, padded with zeros.
fn tree_precision(s: &DMatrix<f64>, ct: &CliqueTree) -> DMatrix<f64> {
    let p = s.nrows();
    let mut k = DMatrix::zeros(p, p);
    let mut add = |idx: Vec<usize>, sign: f64| {
        let inv = sub(s, &idx).try_inverse().unwrap();
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                k[(i, j)] += sign * inv[(r, c)];
            }
        }
    };
    for c in ct.cliques() {
        add(c.iter().map(|v| v.index()).collect(), 1.0);
    }
    for sep in ct.separators() {
        add(sep.iter().map(|v| v.index()).collect(), -1.0);
    }
    k
}

#[test]
fn kl_vanishes_when_the_precision_lives_on_the_tree() {
    for seed in 0..40u64 {
        let p = 4 + (seed as usize % 9);
        let s0 = random_spd(p, seed);
        let ct = entropy_tree(&s0);
        let s = tree_precision(&s0, &ct).try_inverse().unwrap();
        let s = (&s + s.transpose()) * 0.5;
        let kl = kl_divergence_gaussian(&model(&s), &ct).unwrap();
        assert!(kl.abs() <= 1e-9, "p = {p}, seed = {seed}: {kl}");
    }
}

#[test]
fn entropy_score_picks_the_smallest_model_entropy_increase() {
    for seed in 0..50u64 {
        let p = 6 + (seed as usize % 5);
        let s = random_spd(p, 1000 + seed);
        let m = model(&s);
        let seed_clique = [0, 1, 2, 3].map(VertexId::new);
        let mut tree = CliqueTree::with_root(seed_clique);
        let mut faces: Vec<(Face, usize)> = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .map(|[a, b, c]| (Face::new(a, b, c), 0))
            .to_vec();
        let mut waiting: Vec<VertexId> = (4..p).map(VertexId::new).collect();
        while !waiting.is_empty() {
            let h0 = model_entropy(&tree, &m).unwrap();
            let mut by_score: Option<(f64, usize, VertexId)> = None;
            let mut by_entropy: Option<(f64, usize, VertexId)> = None;
            for (fi, (f, parent)) in faces.iter().enumerate() {
                for &v in &waiting {
                    let g = score_entropy_gaussian(v, f, &m).unwrap();
                    if by_score.is_none_or(|b| g > b.0) {
                        by_score = Some((g, fi, v));
                    }
                    let mut t = tree.clone();
                    t.push(f.with(v), f.vertices(), *parent);
                    let dh = model_entropy(&t, &m).unwrap() - h0;
                    if by_entropy.is_none_or(|b| dh < b.0) {
                        by_entropy = Some((dh, fi, v));
                    }
                }
            }
            let (_, fi, v) = by_score.unwrap();
            let (_, fj, u) = by_entropy.unwrap();
            assert_eq!((fi, v), (fj, u), "seed {seed}");
            let (f, parent) = faces.swap_remove(fi);
            let idx = tree.push(f.with(v), f.vertices(), parent);
            let [a, b, c] = f.vertices();
            faces.extend([(Face::new(a, b, v), idx), (Face::new(a, c, v), idx), (Face::new(b, c, v), idx)]);
            waiting.retain(|&x| x != v);
        }
    }
}
