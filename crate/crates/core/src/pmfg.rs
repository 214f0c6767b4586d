//! The PMFG baseline: edges in non-increasing weight order, each kept iff
//! the graph stays planar.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{BuildStats, Edge, FilterResult, Method, MoveCounts, VertexId, WeightedEdge};
use crate::planarity::LrTester;
use crate::scores::WeightOracle;

/// A simple planar graph on `p` vertices that only ever grows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarGraph {
    adj: Vec<BTreeSet<VertexId>>,
    edges: BTreeSet<Edge>,
}

impl PlanarGraph {
    pub fn new(p: usize) -> Self {
        PlanarGraph {
            adj: vec![BTreeSet::new(); p],
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from edges, failing if the result is not planar.
    pub fn from_edges(p: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut g = PlanarGraph::new(p);
        for e in edges {
            if e.high().index() >= p {
                return Err(Error::VertexOutOfRange(e.high(), p));
            }
            g.insert_unchecked(e);
        }
        if !LrTester::new().is_planar(p, &g.edge_pairs()) {
            return Err(Error::InvalidParameter("edge set is not planar".into()));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v.index()].iter().copied()
    }

    fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|e| (e.low().index(), e.high().index()))
            .collect()
    }

    pub(crate) fn insert_unchecked(&mut self, e: Edge) {
        let (a, b) = e.endpoints();
        if self.edges.insert(e) {
            self.adj[a.index()].insert(b);
            self.adj[b.index()].insert(a);
        }
    }
}

/// Whether `g` plus `candidate` is planar. `candidate` must be absent.
pub fn is_planar(g: &PlanarGraph, candidate: Edge) -> bool {
    let mut t = Tester::new(g.vertex_count());
    for e in g.edges() {
        t.record(e);
    }
    t.admits(candidate)
}

/// Incremental driver for the planarity test: keeps the current edge list
/// and the connected components of the graph under construction.
struct Tester {
    lr: LrTester,
    pairs: Vec<(usize, usize)>,
    parent: Vec<usize>,
}

impl Tester {
    fn new(p: usize) -> Self {
        Tester {
            lr: LrTester::new(),
            pairs: Vec::new(),
            parent: (0..p).collect(),
        }
    }

    fn root(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn record(&mut self, e: Edge) {
        let (a, b) = (e.low().index(), e.high().index());
        self.pairs.push((a, b));
        let (ra, rb) = (self.root(a), self.root(b));
        self.parent[ra] = rb;
    }

    fn admits(&mut self, candidate: Edge) -> bool {
        let (a, b) = (candidate.low().index(), candidate.high().index());
        if self.root(a) != self.root(b) {
            // joining two planar components keeps the graph planar
            return true;
        }
        self.pairs.push((a, b));
        let planar = self.lr.is_planar(self.parent.len(), &self.pairs);
        self.pairs.pop();
        planar
    }
}

/// All pairs `i < j` by non-increasing weight; ties in `(i, j)` order.
pub fn sorted_pairs(w: &WeightOracle) -> Vec<(f64, Edge)> {
    let p = w.dim();
    let mut all = Vec::with_capacity(p * p.saturating_sub(1) / 2);
    for i in 0..p {
        for j in i + 1..p {
            let e = Edge::new(i, j);
            all.push((w.weight(e.low(), e.high()), e));
        }
    }
    all.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    all
}

/// Greedy planar filtering of `w`.
pub fn build_pmfg(w: &WeightOracle) -> Result<FilterResult> {
    let start = Instant::now();
    let p = w.dim();
    if p < 3 {
        return Err(Error::TooFewVertices {
            required: 3,
            actual: p,
        });
    }
    let target = 3 * p - 6;
    let mut g = PlanarGraph::new(p);
    let mut tester = Tester::new(p);
    let mut tests = 0u64;
    for (_, e) in sorted_pairs(w) {
        if g.edge_count() == target {
            break;
        }
        tests += 1;
        if !tester.admits(e) {
            continue;
        }
        g.insert_unchecked(e);
        tester.record(e);
    }
    let edges: Vec<WeightedEdge> = g
        .edges()
        .map(|e| WeightedEdge {
            i: e.low(),
            j: e.high(),
            weight: w.weight(e.low(), e.high()),
        })
        .collect();
    let total_weight = edges.iter().map(|e| e.weight).sum();
    Ok(FilterResult {
        method: Method::Pmfg,
        p,
        edges,
        total_weight,
        clique_tree: None,
        triangulation: None,
        elapsed: start.elapsed(),
        moves: MoveCounts::default(),
        stats: BuildStats {
            score_evaluations: 0,
            bookkeeping_total: None,
            planarity_tests: tests,
            base_fallback: false,
        },
    })
}
