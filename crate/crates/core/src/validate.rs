//! Independent checkers and brute-force reference implementations.
//!
//! Nothing here reuses the construction code paths: the chordality test is
//! maximum cardinality search, the naive builder recomputes every gain from
//! scratch, and the small-graph planarity oracle searches for Kuratowski
//! subdivisions directly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::construct::{select_seed_clique, BuildConfig, Variant};
use crate::error::{Error, Result};
use crate::graph::{
    BuildStats, CliqueTree, Edge, Face, FilterResult, Method, MoveCounts, VertexId, WeightedEdge,
};
use crate::planarity::LrTester;
use crate::scores::WeightOracle;

/// Largest `p` accepted by [`naive_tmfg_oracle`].
pub const NAIVE_ORACLE_LIMIT: usize = 200;
/// Largest `p` accepted by [`exhaustive_wmpg`].
pub const WMPG_LIMIT: usize = 7;
/// Largest vertex count accepted by the brute-force graph oracles.
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Empty exactly when the check passed.
    pub detail: String,
}

/// An ordered list of named checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport::default()
    }

    pub fn pass(&mut self, name: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: true,
            detail: String::new(),
        });
    }

    /// Records a failure; an empty `detail` is replaced by a generic one.
    pub fn fail(&mut self, name: &str, detail: impl Into<String>) {
        let mut detail = detail.into();
        if detail.is_empty() {
            detail = "failed".to_string();
        }
        self.checks.push(Check {
            name: name.to_string(),
            passed: false,
            detail,
        });
    }

    /// Records `Ok(())` as a pass and `Err(detail)` as a failure.
    pub fn record(&mut self, name: &str, outcome: std::result::Result<(), String>) {
        match outcome {
            Ok(()) => self.pass(name),
            Err(d) => self.fail(name, d),
        }
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "PASS {}", c.name)?;
            } else {
                writeln!(f, "FAIL {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Undirected simple graph on the vertices touched by `edges`.
struct Adjacency {
    vertices: Vec<VertexId>,
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Adjacency {
    fn new(edges: &[Edge]) -> Self {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for e in edges {
            let (a, b) = e.endpoints();
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
        Adjacency {
            vertices: adj.keys().copied().collect(),
            adj,
        }
    }

    fn has(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[&v].iter().copied()
    }

    fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

/// Maximum cardinality search: repeatedly visits the unvisited vertex with
/// the most visited neighbours (lowest index on ties).
pub fn maximum_cardinality_search(edges: &[Edge]) -> Vec<VertexId> {
    let g = Adjacency::new(edges);
    let mut weight: BTreeMap<VertexId, usize> = g.vertices.iter().map(|&v| (v, 0)).collect();
    let mut order = Vec::with_capacity(g.vertices.len());
    while !weight.is_empty() {
        let mut pick: Option<(VertexId, usize)> = None;
        for (&v, &c) in &weight {
            if pick.is_none_or(|(_, best)| c > best) {
                pick = Some((v, c));
            }
        }
        let (v, _) = pick.expect("weight map is not empty");
        weight.remove(&v);
        for u in g.neighbors(v) {
            if let Some(c) = weight.get_mut(&u) {
                *c += 1;
            }
        }
        order.push(v);
    }
    order
}

/// Chordality of the graph formed by `edges` (its vertex set is every
/// endpoint). The reverse of a maximum cardinality search order is checked
/// for being a perfect elimination ordering.
pub fn check_chordal(edges: &[Edge]) -> Result<ValidationReport> {
    let g = Adjacency::new(edges);
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let order = maximum_cardinality_search(edges);
    let position: BTreeMap<VertexId, usize> =
        order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut report = ValidationReport::new();
    let mut outcome = Ok(());
    'vertices: for (i, &v) in order.iter().enumerate() {
        // neighbours visited before v must form a clique; it is enough to
        // check them against the latest of them
        let earlier: Vec<VertexId> = g.neighbors(v).filter(|u| position[u] < i).collect();
        let Some(&last) = earlier.iter().max_by_key(|u| position[u]) else {
            continue;
        };
        for &u in &earlier {
            if u != last && !g.has(u, last) {
                outcome = Err(format!(
                    "{v} has non-adjacent earlier neighbours {u} and {last}"
                ));
                break 'vertices;
            }
        }
    }
    report.record("chordal", outcome);
    Ok(report)
}

/// `true` if some induced cycle of length at least 4 exists. Exhaustive over
/// vertex subsets, so limited to [`BRUTE_FORCE_LIMIT`] vertices.
pub fn has_chordless_cycle(edges: &[Edge]) -> Result<bool> {
    let g = Adjacency::new(edges);
    let n = g.vertices.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard {
            actual: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 4 {
            continue;
        }
        let members: Vec<VertexId> = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| g.vertices[i])
            .collect();
        let degree_two = members
            .iter()
            .all(|&v| members.iter().filter(|&&u| g.has(u, v)).count() == 2);
        if degree_two && induced_connected(&g, &members) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn induced_connected(g: &Adjacency, members: &[VertexId]) -> bool {
    let set: BTreeSet<VertexId> = members.iter().copied().collect();
    let mut seen = BTreeSet::from([members[0]]);
    let mut stack = vec![members[0]];
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v) {
            if set.contains(&u) && seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen.len() == set.len()
}

/// Structural checks of a clique tree against the graph it describes.
pub fn check_clique_tree(ct: &CliqueTree, edges: &[Edge]) -> ValidationReport {
    let g = Adjacency::new(edges);
    let p = g.vertices.len();
    let mut report = ValidationReport::new();
    let cliques = ct.cliques();
    let separators = ct.separators();
    let parents = ct.parents();

    let expected = p.saturating_sub(3);
    report.record(
        "clique count",
        if cliques.len() == expected {
            Ok(())
        } else {
            Err(format!("{} cliques, expected {expected}", cliques.len()))
        },
    );
    report.record(
        "separator count",
        if separators.len() + 1 == expected.max(1) && separators.len() + 1 == cliques.len() {
            Ok(())
        } else {
            Err(format!(
                "{} separators for {} cliques, expected {}",
                separators.len(),
                cliques.len(),
                expected.saturating_sub(1)
            ))
        },
    );
    report.record("tree shape", tree_shape(parents, cliques.len()));

    let mut complete = Ok(());
    for c in cliques {
        for i in 0..4 {
            for j in i + 1..4 {
                if !g.has(c[i], c[j]) {
                    complete = Err(format!("clique {c:?} misses edge {}-{}", c[i], c[j]));
                }
            }
        }
    }
    report.record("cliques complete", complete);

    let mut separated = Ok(());
    if separators.len() + 1 == cliques.len() && parents.len() == cliques.len() {
        for (k, sep) in separators.iter().enumerate() {
            let child = &cliques[k + 1];
            let Some(parent) = parents[k + 1].and_then(|q| cliques.get(q)) else {
                separated = Err(format!("clique {} has no parent", k + 1));
                break;
            };
            let shared: BTreeSet<VertexId> = child.iter().filter(|v| parent.contains(v)).copied().collect();
            let sep_set: BTreeSet<VertexId> = sep.iter().copied().collect();
            if shared != sep_set || sep_set.len() != 3 {
                separated = Err(format!(
                    "separator {sep:?} is not the intersection of {child:?} and {parent:?}"
                ));
                break;
            }
        }
    } else {
        separated = Err("separator list does not match the cliques".to_string());
    }
    report.record("separators are intersections", separated);

    let covered: BTreeSet<Edge> = cliques
        .iter()
        .flat_map(|c| (0..4).flat_map(move |i| (i + 1..4).map(move |j| Edge::new(c[i], c[j]))))
        .collect();
    let actual: BTreeSet<Edge> = edges.iter().copied().collect();
    report.record(
        "edges covered",
        if covered == actual {
            Ok(())
        } else {
            let missing = actual.difference(&covered).count();
            let extra = covered.difference(&actual).count();
            Err(format!("{missing} graph edges outside all cliques, {extra} clique edges not in the graph"))
        },
    );

    report.record("running intersection", running_intersection(cliques, parents));
    report
}

fn tree_shape(parents: &[Option<usize>], n: usize) -> std::result::Result<(), String> {
    if parents.len() != n {
        return Err(format!("{} parent links for {n} cliques", parents.len()));
    }
    if n == 0 {
        return Err("no cliques".to_string());
    }
    let roots = parents.iter().filter(|p| p.is_none()).count();
    if roots != 1 {
        return Err(format!("{roots} roots"));
    }
    for start in 0..n {
        let mut at = start;
        let mut steps = 0;
        while let Some(q) = parents[at] {
            if q >= n {
                return Err(format!("clique {at} points at missing clique {q}"));
            }
            at = q;
            steps += 1;
            if steps > n {
                return Err(format!("cycle through clique {start}"));
            }
        }
    }
    Ok(())
}

/// The cliques containing any given vertex must form a connected subtree:
/// (number of such cliques) − (tree links between two of them) = 1.
fn running_intersection(
    cliques: &[[VertexId; 4]],
    parents: &[Option<usize>],
) -> std::result::Result<(), String> {
    let mut holders: BTreeMap<VertexId, (usize, usize)> = BTreeMap::new();
    for (k, c) in cliques.iter().enumerate() {
        for v in c {
            holders.entry(*v).or_default().0 += 1;
            if let Some(q) = parents.get(k).copied().flatten() {
                if cliques.get(q).is_some_and(|pc| pc.contains(v)) {
                    holders.entry(*v).or_default().1 += 1;
                }
            }
        }
    }
    for (v, (count, links)) in holders {
        if count != links + 1 {
            return Err(format!("cliques holding {v} are split into {} parts", count - links));
        }
    }
    Ok(())
}

/// Planarity of the graph on `0..p` formed by `edges`.
pub fn check_planar(p: usize, edges: &[Edge]) -> ValidationReport {
    let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.low().index(), e.high().index())).collect();
    let mut report = ValidationReport::new();
    report.record(
        "planar",
        if LrTester::new().is_planar(p, &pairs) {
            Ok(())
        } else {
            Err("left-right test found a conflict".to_string())
        },
    );
    report
}

/// All checks that apply to a stored result: simple edge list, planarity,
/// edge count, weight total, and, when the method claims them, chordality
/// and the clique tree.
pub fn validate_result(r: &FilterResult) -> ValidationReport {
    let mut report = ValidationReport::new();
    let edges: Vec<Edge> = r.edges.iter().map(|e| Edge::new(e.i, e.j)).collect();

    let mut simple = Ok(());
    for (k, e) in r.edges.iter().enumerate() {
        if e.i >= e.j || e.j.index() >= r.p {
            simple = Err(format!("edge {k} ({}, {}) is not an ordered pair in range", e.i, e.j));
            break;
        }
    }
    if simple.is_ok() {
        let distinct: BTreeSet<Edge> = edges.iter().copied().collect();
        if distinct.len() != edges.len() {
            simple = Err(format!("{} repeated edges", edges.len() - distinct.len()));
        }
    }
    report.record("simple", simple);

    report.extend(check_planar(r.p, &edges));

    let expected = (3 * r.p).saturating_sub(6);
    report.record(
        "edge count",
        if edges.len() == expected {
            Ok(())
        } else {
            Err(format!("{} edges, expected 3p-6 = {expected}", edges.len()))
        },
    );

    let sum: f64 = r.edges.iter().map(|e| e.weight).sum();
    let scale = r.total_weight.abs().max(1.0);
    report.record(
        "total weight",
        if (sum - r.total_weight).abs() <= 1e-9 * scale {
            Ok(())
        } else {
            Err(format!("edges sum to {sum}, result claims {}", r.total_weight))
        },
    );

    if r.method.is_chordal() {
        match check_chordal(&edges) {
            Ok(c) => report.extend(c),
            Err(e) => report.fail("chordal", e.to_string()),
        }
    }
    match &r.clique_tree {
        Some(ct) => report.extend(check_clique_tree(ct, &edges)),
        None if r.method.is_chordal() && r.p >= 4 => {
            report.fail("clique tree", "chordal method without a clique tree")
        }
        None => {}
    }
    report
}

/// The base construction with every (vertex, face) gain recomputed at every
/// step. Same seed and tie-breaking as [`crate::build`], no cache.
pub fn naive_tmfg_oracle(w: &WeightOracle, cfg: &BuildConfig) -> Result<FilterResult> {
    let p = w.dim();
    if p > NAIVE_ORACLE_LIMIT {
        return Err(Error::SizeGuard {
            actual: p,
            limit: NAIVE_ORACLE_LIMIT,
        });
    }
    if cfg.variant != Variant::Base {
        return Err(Error::Unsupported(format!(
            "the naive reference covers the base variant only, not {:?}",
            cfg.variant
        )));
    }
    let seed = select_seed_clique(w, cfg.seed_strategy, cfg.exhaustive_seed_limit)?;
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for i in 0..4 {
        for j in i + 1..4 {
            edges.insert(Edge::new(seed[i], seed[j]));
        }
    }
    let [a, b, c, d] = seed;
    let mut tree = CliqueTree::with_root(seed);
    let mut faces: BTreeMap<Face, usize> = [
        Face::new(a, b, c),
        Face::new(a, b, d),
        Face::new(a, c, d),
        Face::new(b, c, d),
    ]
    .into_iter()
    .map(|f| (f, 0))
    .collect();
    let mut remaining: Vec<VertexId> = (0..p).map(VertexId::new).filter(|v| !seed.contains(v)).collect();
    let mut evaluations = 0u64;
    let mut moves = MoveCounts::default();
    while !remaining.is_empty() {
        let mut best: Option<(f64, Face, VertexId)> = None;
        for f in faces.keys() {
            for &v in &remaining {
                let g = cfg.score.evaluate(w, v, f)?;
                evaluations += 1;
                if best.is_none_or(|(b, _, _)| g > b) {
                    best = Some((g, *f, v));
                }
            }
        }
        let (_, f, v) = best.expect("faces and vertices remain");
        let parent = faces.remove(&f).expect("chosen face is registered");
        let [x, y, z] = f.vertices();
        for u in [x, y, z] {
            edges.insert(Edge::new(u, v));
        }
        let idx = tree.push([x, y, z, v], [x, y, z], parent);
        for nf in [Face::new(x, y, v), Face::new(x, z, v), Face::new(y, z, v)] {
            faces.insert(nf, idx);
        }
        remaining.retain(|&u| u != v);
        moves.t2 += 1;
    }
    let edges: Vec<WeightedEdge> = edges
        .into_iter()
        .map(|e| WeightedEdge {
            i: e.low(),
            j: e.high(),
            weight: w.weight(e.low(), e.high()),
        })
        .collect();
    let total_weight = edges.iter().map(|e| e.weight).sum();
    Ok(FilterResult {
        method: Method::Tmfg,
        p,
        edges,
        total_weight,
        clique_tree: Some(tree),
        triangulation: None,
        elapsed: Default::default(),
        moves,
        stats: BuildStats {
            score_evaluations: evaluations,
            ..BuildStats::default()
        },
    })
}

/// Best total weight over all planar graphs with `3p − 6` edges on `0..p`,
/// found by enumeration (branch and bound on weight, pruned on
/// non-planar partial sets). Limited to [`WMPG_LIMIT`] vertices.
pub fn exhaustive_wmpg(w: &WeightOracle) -> Result<f64> {
    let p = w.dim();
    if p > WMPG_LIMIT {
        return Err(Error::SizeGuard {
            actual: p,
            limit: WMPG_LIMIT,
        });
    }
    if p < 3 {
        return Err(Error::TooFewVertices {
            required: 3,
            actual: p,
        });
    }
    let mut all: Vec<(f64, (usize, usize))> = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            all.push((w.weight(VertexId::new(i), VertexId::new(j)), (i, j)));
        }
    }
    all.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut search = Wmpg {
        p,
        need: 3 * p - 6,
        all,
        chosen: Vec::new(),
        best: f64::NEG_INFINITY,
        lr: LrTester::new(),
    };
    search.descend(0, 0.0);
    Ok(search.best)
}

struct Wmpg {
    p: usize,
    need: usize,
    all: Vec<(f64, (usize, usize))>,
    chosen: Vec<(usize, usize)>,
    best: f64,
    lr: LrTester,
}

impl Wmpg {
    fn descend(&mut self, next: usize, sum: f64) {
        if self.chosen.len() == self.need {
            self.best = self.best.max(sum);
            return;
        }
        let missing = self.need - self.chosen.len();
        if self.all.len() - next < missing {
            return;
        }
        // edges are sorted by weight, so the next `missing` are the best case
        let bound: f64 = sum + self.all[next..next + missing].iter().map(|x| x.0).sum::<f64>();
        if bound <= self.best {
            return;
        }
        let (wt, pair) = self.all[next];
        self.chosen.push(pair);
        if self.lr.is_planar(self.p, &self.chosen) {
            self.descend(next + 1, sum + wt);
        }
        self.chosen.pop();
        self.descend(next + 1, sum);
    }
}

/// Planarity by direct search for a subdivision of K5 or K3,3 (Kuratowski).
/// Exponential; limited to [`BRUTE_FORCE_LIMIT`] vertices.
pub fn is_planar_kuratowski(p: usize, edges: &[Edge]) -> Result<bool> {
    if p > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard {
            actual: p,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut adj = vec![0u16; p];
    for e in edges {
        let (a, b) = (e.low().index(), e.high().index());
        if b >= p {
            return Err(Error::VertexOutOfRange(e.high(), p));
        }
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let g = Subdivision { adj };
    Ok(!(g.has_k5() || g.has_k33()))
}

struct Subdivision {
    adj: Vec<u16>,
}

impl Subdivision {
    fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    fn has_k5(&self) -> bool {
        let cand: Vec<usize> = (0..self.adj.len()).filter(|&v| self.degree(v) >= 4).collect();
        for branch in combinations(&cand, 5) {
            let pairs: Vec<(usize, usize)> = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .map(|(i, j)| (branch[i], branch[j]))
                .collect();
            if self.linkable(&pairs, mask_of(&branch)) {
                return true;
            }
        }
        false
    }

    fn has_k33(&self) -> bool {
        let cand: Vec<usize> = (0..self.adj.len()).filter(|&v| self.degree(v) >= 3).collect();
        for six in combinations(&cand, 6) {
            // split into two sides; fixing six[0] on the left avoids mirrors
            for rest in combinations(&six[1..], 2) {
                let left = [six[0], rest[0], rest[1]];
                let right: Vec<usize> = six.iter().copied().filter(|v| !left.contains(v)).collect();
                let pairs: Vec<(usize, usize)> = left
                    .iter()
                    .flat_map(|&a| right.iter().map(move |&b| (a, b)))
                    .collect();
                if self.linkable(&pairs, mask_of(&six)) {
                    return true;
                }
            }
        }
        false
    }

    /// Whether every pair can be joined by a path, the paths sharing no
    /// vertices beyond their ends and avoiding all other branch vertices.
    fn linkable(&self, pairs: &[(usize, usize)], branch: u16) -> bool {
        self.link_from(pairs, 0, branch)
    }

    fn link_from(&self, pairs: &[(usize, usize)], k: usize, used: u16) -> bool {
        let Some(&(a, b)) = pairs.get(k) else {
            return true;
        };
        self.walk(pairs, k, a, b, used)
    }

    fn walk(&self, pairs: &[(usize, usize)], k: usize, at: usize, goal: usize, used: u16) -> bool {
        if self.adj[at] & (1 << goal) != 0 && self.link_from(pairs, k + 1, used) {
            return true;
        }
        let mut free = self.adj[at] & !used;
        while free != 0 {
            let next = free.trailing_zeros() as usize;
            free &= free - 1;
            if self.walk(pairs, k, next, goal, used | (1 << next)) {
                return true;
            }
        }
        false
    }
}

fn mask_of(vs: &[usize]) -> u16 {
    vs.iter().fold(0, |m, &v| m | (1 << v))
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}
