mod common;

use common::{edges_of, uniform};
use proptest::prelude::*;
use tmfg::planarity::is_planar_edges;
use tmfg::pmfg::{build_pmfg, sorted_pairs};
use tmfg::validate::{check_chordal, exhaustive_wmpg, has_chordless_cycle, is_planar_kuratowski};
use tmfg::{build, BuildConfig, Edge};

fn graph(n: usize, mask: u64) -> Vec<Edge> {
    let mut out = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> (bit % 64) & 1 == 1 {
                out.push(Edge::new(i, j));
            }
            bit += 1;
        }
    }
    out
}

fn pairs(edges: &[Edge]) -> Vec<(usize, usize)> {
    edges.iter().map(|e| (e.low().index(), e.high().index())).collect()
}

fn connected(n: usize, edges: &[Edge]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for e in edges {
            let (a, b) = (e.low().index(), e.high().index());
            let y = if a == x { b } else if b == x { a } else { continue };
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&s| s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn left_right_test_agrees_with_kuratowski_search(n in 5usize..10, mask in any::<u64>(), density in 0u32..4) {
        // thin out the random mask to sweep sparse through dense graphs
        let keep = (0..density).fold(mask, |m, k| m | mask.rotate_left(7 * (k + 1)));
        let edges = graph(n, keep);
        let brute = is_planar_kuratowski(n, &edges).unwrap();
        prop_assert_eq!(is_planar_edges(n, &pairs(&edges)), brute);
    }

    #[test]
    fn chordality_check_agrees_with_chordless_cycle_search(n in 4usize..10, mask in any::<u64>()) {
        let edges = graph(n, mask);
        prop_assume!(connected(n, &edges));
        let mcs = check_chordal(&edges).unwrap().passed();
        prop_assert_eq!(mcs, !has_chordless_cycle(&edges).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pmfg_cannot_take_any_further_edge(p in 5usize..11, seed in any::<u64>()) {
        let w = uniform(p, seed);
        let r = build_pmfg(&w).unwrap();
        let kept = edges_of(&r);
        prop_assert_eq!(kept.len(), 3 * p - 6);
        prop_assert!(is_planar_kuratowski(p, &kept).unwrap());
        for (_, e) in sorted_pairs(&w) {
            if kept.contains(&e) {
                continue;
            }
            let mut more = kept.clone();
            more.push(e);
            prop_assert!(!is_planar_kuratowski(p, &more).unwrap(), "{} could still be added", e);
        }
    }

    #[test]
    fn exhaustive_optimum_bounds_both_heuristics(p in 4usize..8, seed in any::<u64>()) {
        let w = uniform(p, seed);
        let best = exhaustive_wmpg(&w).unwrap();
        let t = build(&w, &BuildConfig::default()).unwrap().total_weight;
        let g = build_pmfg(&w).unwrap().total_weight;
        prop_assert!(best >= t - 1e-12 && best >= g - 1e-12, "{} vs {} / {}", best, t, g);
    }
}

#[test]
fn pmfg_takes_edges_in_weight_order() {
    let w = uniform(30, 9);
    let r = build_pmfg(&w).unwrap();
    let kept = r.edge_set();
    // no graph with fewer than nine edges is non-planar, so the top eight stay
    for (_, e) in sorted_pairs(&w).into_iter().take(8) {
        assert!(kept.contains(&e));
    }
    assert_eq!(r.edges.len(), 84);
    let pairs: Vec<(usize, usize)> = r.edges.iter().map(|e| (e.i.index(), e.j.index())).collect();
    assert!(is_planar_edges(30, &pairs));
}

#[test]
fn pmfg_matches_itself_at_one_hundred_percent() {
    let w = uniform(40, 1);
    let a = build_pmfg(&w).unwrap();
    let b = build_pmfg(&w).unwrap();
    assert_eq!(a.total_weight / b.total_weight, 1.0);
}

#[test]
fn agreement_covers_planar_and_non_planar_graphs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let (mut planar, mut not) = (0, 0);
    for _ in 0..1500 {
        let n = rng.random_range(5..11);
        let m = rng.random_range(n..=3 * n - 5);
        let mut all: Vec<Edge> = (0..n).flat_map(|i| (i + 1..n).map(move |j| Edge::new(i, j))).collect();
        let mut edges = Vec::new();
        for _ in 0..m.min(all.len()) {
            edges.push(all.swap_remove(rng.random_range(0..all.len())));
        }
        let brute = is_planar_kuratowski(n, &edges).unwrap();
        assert_eq!(is_planar_edges(n, &pairs(&edges)), brute, "{edges:?}");
        if brute {
            planar += 1;
        } else {
            not += 1;
        }
    }
    assert!(planar > 200 && not > 200, "{planar} planar, {not} not");
}
