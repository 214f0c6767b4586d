//! Vertices, edges, faces and the triangulation they live in, plus the
//! records a build leaves behind (clique tree, gain cache, filter result).
//!
//! Faces are stored as sorted vertex triples and edges as sorted pairs, so
//! that every collection here iterates in a canonical order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scores::WeightOracle;

/// Index of a variable in `[0, p)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("vertex index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId::new(i)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Unordered pair of distinct vertices, stored as `(low, high)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Self {
        let (a, b) = (a.into(), b.into());
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    #[inline]
    pub fn low(self) -> VertexId {
        self.0
    }

    #[inline]
    pub fn high(self) -> VertexId {
        self.1
    }

    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// A triangle of the triangulation that bounds an empty region, i.e. one
/// that does not contain any inserted vertex. Stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Face([VertexId; 3]);

impl Face {
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>, c: impl Into<VertexId>) -> Self {
        let mut vs = [a.into(), b.into(), c.into()];
        vs.sort_unstable();
        assert!(
            vs[0] != vs[1] && vs[1] != vs[2],
            "a face needs three distinct vertices"
        );
        Face(vs)
    }

    #[inline]
    pub fn vertices(&self) -> [VertexId; 3] {
        self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge::new(a, b), Edge::new(a, c), Edge::new(b, c)]
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.contains(e.low()) && self.contains(e.high())
    }

    /// The vertex of this face not on `e`. `e` must be one of its edges.
    pub fn opposite(&self, e: Edge) -> VertexId {
        debug_assert!(self.contains_edge(e));
        self.0
            .into_iter()
            .find(|&v| !e.contains(v))
            .expect("face has a vertex off every edge")
    }

    /// The 4-clique obtained by joining `v` to this face.
    pub fn with(&self, v: VertexId) -> [VertexId; 4] {
        let mut q = [self.0[0], self.0[1], self.0[2], v];
        q.sort_unstable();
        q
    }

    pub(crate) fn map(&self, f: impl Fn(VertexId) -> VertexId) -> Face {
        Face::new(f(self.0[0]), f(self.0[1]), f(self.0[2]))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// A planar graph kept as adjacency sets plus an explicit registry of its
/// current triangular faces.
///
/// The vertex capacity `p` is fixed at creation (it can only grow through
/// [`Triangulation::grow`]); vertices become part of the graph once inserted
/// and their ids are never reused.
#[derive(Debug, Clone)]
pub struct Triangulation {
    adjacency: Vec<BTreeSet<VertexId>>,
    inserted: Vec<bool>,
    inserted_count: usize,
    edge_count: usize,
    faces: BTreeSet<Face>,
    // faces incident to each vertex; unordered
    incident: Vec<Vec<Face>>,
}

// `incident` is derived from `faces`; its order depends on history.
impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency && self.inserted == other.inserted && self.faces == other.faces
    }
}

impl Eq for Triangulation {}

impl Triangulation {
    /// An empty graph with room for `p` vertices.
    pub fn new(p: usize) -> Self {
        Triangulation {
            adjacency: vec![BTreeSet::new(); p],
            inserted: vec![false; p],
            inserted_count: 0,
            edge_count: 0,
            faces: BTreeSet::new(),
            incident: vec![Vec::new(); p],
        }
    }

    /// The tetrahedron on `seed` with its four faces registered.
    pub fn from_tetrahedron(p: usize, seed: [VertexId; 4]) -> Result<Self> {
        let mut tri = Triangulation::new(p);
        for &v in &seed {
            tri.check_range(v)?;
            if tri.inserted[v.index()] {
                return Err(Error::AlreadyInserted(v));
            }
            tri.mark_inserted(v);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                tri.add_edge(seed[i], seed[j]);
            }
        }
        let [a, b, c, d] = seed;
        for f in [
            Face::new(a, b, c),
            Face::new(a, b, d),
            Face::new(a, c, d),
            Face::new(b, c, d),
        ] {
            tri.add_face(f);
        }
        Ok(tri)
    }

    /// Vertex capacity `p`.
    pub fn capacity(&self) -> usize {
        self.adjacency.len()
    }

    pub fn inserted_count(&self) -> usize {
        self.inserted_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_inserted(&self, v: VertexId) -> bool {
        self.inserted.get(v.index()).copied().unwrap_or(false)
    }

    pub fn inserted_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.inserted
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| VertexId::new(i))
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a != b
            && self
                .adjacency
                .get(a.index())
                .is_some_and(|n| n.contains(&b))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[v.index()].iter().copied()
    }

    /// All edges in canonical (sorted) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, ns)| {
            let a = VertexId::new(i);
            ns.range(VertexId::new(i + 1)..).map(move |&b| Edge(a, b))
        })
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter()
    }

    pub fn has_face(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    /// Faces incident to `v`, in no particular order.
    pub fn faces_at(&self, v: VertexId) -> &[Face] {
        &self.incident[v.index()]
    }

    /// Registered faces containing both endpoints of `e`, sorted.
    pub fn faces_on_edge(&self, e: Edge) -> Vec<Face> {
        let (a, b) = e.endpoints();
        let (x, y) = if self.incident[a.index()].len() <= self.incident[b.index()].len() {
            (a, b)
        } else {
            (b, a)
        };
        let mut out: Vec<Face> = self.incident[x.index()]
            .iter()
            .filter(|f| f.contains(y))
            .copied()
            .collect();
        out.sort_unstable();
        out
    }

    /// Adds room for `extra` more vertices.
    pub fn grow(&mut self, extra: usize) {
        let p = self.capacity() + extra;
        self.adjacency.resize(p, BTreeSet::new());
        self.inserted.resize(p, false);
        self.incident.resize(p, Vec::new());
    }

    pub(crate) fn check_range(&self, v: VertexId) -> Result<()> {
        if v.index() >= self.capacity() {
            Err(Error::VertexOutOfRange(v, self.capacity()))
        } else {
            Ok(())
        }
    }

    pub(crate) fn mark_inserted(&mut self, v: VertexId) {
        debug_assert!(!self.inserted[v.index()]);
        self.inserted[v.index()] = true;
        self.inserted_count += 1;
    }

    pub(crate) fn unmark_inserted(&mut self, v: VertexId) {
        debug_assert!(self.inserted[v.index()]);
        debug_assert!(self.adjacency[v.index()].is_empty());
        self.inserted[v.index()] = false;
        self.inserted_count -= 1;
    }

    pub(crate) fn add_edge(&mut self, a: VertexId, b: VertexId) {
        let fresh = self.adjacency[a.index()].insert(b);
        self.adjacency[b.index()].insert(a);
        debug_assert!(fresh, "duplicate edge ({a}, {b})");
        self.edge_count += 1;
    }

    pub(crate) fn remove_edge(&mut self, a: VertexId, b: VertexId) {
        let had = self.adjacency[a.index()].remove(&b);
        self.adjacency[b.index()].remove(&a);
        debug_assert!(had, "missing edge ({a}, {b})");
        self.edge_count -= 1;
    }

    pub(crate) fn add_face(&mut self, f: Face) {
        let fresh = self.faces.insert(f);
        debug_assert!(fresh, "duplicate face {f}");
        for v in f.vertices() {
            self.incident[v.index()].push(f);
        }
    }

    pub(crate) fn remove_face(&mut self, f: &Face) {
        let had = self.faces.remove(f);
        debug_assert!(had, "missing face {f}");
        for v in f.vertices() {
            let list = &mut self.incident[v.index()];
            if let Some(pos) = list.iter().position(|g| g == f) {
                list.swap_remove(pos);
            }
        }
    }

    /// Renames every vertex by `f`, which must be a bijection on inserted
    /// vertices and the identity outside a complete set `moved`. Returns the
    /// faces that changed as `(old, new)` pairs.
    pub(crate) fn relabel_complete_set(
        &mut self,
        moved: &[VertexId],
        f: impl Fn(VertexId) -> VertexId,
    ) -> (Vec<Face>, Vec<Face>) {
        let mut touched: BTreeSet<Face> = BTreeSet::new();
        for &x in moved {
            touched.extend(self.incident[x.index()].iter().copied());
        }
        let old_faces: Vec<Face> = touched.into_iter().collect();
        for g in &old_faces {
            self.remove_face(g);
        }
        // outside neighbours of each moved vertex, keyed by its new name
        let external: Vec<(VertexId, Vec<VertexId>)> = moved
            .iter()
            .map(|&x| {
                let ext = self.adjacency[x.index()]
                    .iter()
                    .copied()
                    .filter(|y| !moved.contains(y))
                    .collect();
                (f(x), ext)
            })
            .collect();
        for (_, ext) in &external {
            for y in ext {
                let ns = &mut self.adjacency[y.index()];
                for x in moved {
                    ns.remove(x);
                }
            }
        }
        for (fx, ext) in &external {
            let mut ns: BTreeSet<VertexId> = ext.iter().copied().collect();
            ns.extend(moved.iter().copied().filter(|m| m != fx));
            for y in ext {
                self.adjacency[y.index()].insert(*fx);
            }
            self.adjacency[fx.index()] = ns;
        }
        let new_faces: Vec<Face> = old_faces.iter().map(|g| g.map(&f)).collect();
        for g in &new_faces {
            self.add_face(*g);
        }
        (old_faces, new_faces)
    }

    /// Checks the closed-surface laws: `|E| = 3p - 6`, `|F| = 2p - 4` and
    /// every edge on exactly two registered faces (`p` = inserted vertices).
    pub fn verify_sphere_triangulation(&self) -> SphereReport {
        let p = self.inserted_count;
        let mut violations = Vec::new();
        if p < 4 {
            violations.push(format!("only {p} inserted vertices, need at least 4"));
            return SphereReport { violations };
        }
        if self.edge_count != 3 * p - 6 {
            violations.push(format!(
                "edge count {} differs from 3p-6 = {}",
                self.edge_count,
                3 * p - 6
            ));
        }
        if self.faces.len() != 2 * p - 4 {
            violations.push(format!(
                "face count {} differs from 2p-4 = {}",
                self.faces.len(),
                2 * p - 4
            ));
        }
        let mut per_edge: BTreeMap<Edge, usize> = self.edges().map(|e| (e, 0)).collect();
        for f in &self.faces {
            for e in f.edges() {
                match per_edge.get_mut(&e) {
                    Some(n) => *n += 1,
                    None => violations.push(format!("face {f} uses missing edge {e}")),
                }
            }
        }
        for (e, n) in per_edge {
            match n {
                2 => {}
                1 => violations.push(format!("edge {e} lies in one face")),
                _ => violations.push(format!("edge {e} lies in {n} faces")),
            }
        }
        for (i, ns) in self.adjacency.iter().enumerate() {
            if !self.inserted[i] && !ns.is_empty() {
                violations.push(format!("uninserted vertex v{i} has edges"));
            }
        }
        SphereReport { violations }
    }

    /// `Σ w(i, j)` over the edge set.
    pub fn total_weight(&self, w: &WeightOracle) -> Result<f64> {
        total_weight(self, w)
    }
}

/// Sum of oracle weights over the edges of `tri`.
pub fn total_weight(tri: &Triangulation, w: &WeightOracle) -> Result<f64> {
    if let Some(e) = tri.edges().last() {
        if e.high().index() >= w.dim() {
            return Err(Error::DimensionMismatch {
                expected: w.dim(),
                actual: e.high().index() + 1,
            });
        }
    }
    Ok(tri.edges().map(|e| w.weight(e.low(), e.high())).sum())
}

/// Outcome of [`Triangulation::verify_sphere_triangulation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereReport {
    pub violations: Vec<String>,
}

impl SphereReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The 4-cliques and 3-separators produced by T2 insertions.
///
/// `separators[i]` joins `cliques[i + 1]` to its parent clique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueTree {
    cliques: Vec<[VertexId; 4]>,
    separators: Vec<[VertexId; 3]>,
    parents: Vec<Option<usize>>,
}

impl CliqueTree {
    pub fn with_root(root: [VertexId; 4]) -> Self {
        let mut root = root;
        root.sort_unstable();
        CliqueTree {
            cliques: vec![root],
            separators: Vec::new(),
            parents: vec![None],
        }
    }

    /// Builds a tree from explicit parts; no consistency checks are made
    /// (see `validate::check_clique_tree`).
    pub fn from_parts(
        cliques: Vec<[VertexId; 4]>,
        separators: Vec<[VertexId; 3]>,
        parents: Vec<Option<usize>>,
    ) -> Self {
        CliqueTree {
            cliques,
            separators,
            parents,
        }
    }

    /// Appends a clique hanging off `parent` through `separator`; returns its index.
    pub fn push(&mut self, clique: [VertexId; 4], separator: [VertexId; 3], parent: usize) -> usize {
        let mut clique = clique;
        clique.sort_unstable();
        let mut separator = separator;
        separator.sort_unstable();
        self.cliques.push(clique);
        self.separators.push(separator);
        self.parents.push(Some(parent));
        self.cliques.len() - 1
    }

    pub fn cliques(&self) -> &[[VertexId; 4]] {
        &self.cliques
    }

    pub fn separators(&self) -> &[[VertexId; 3]] {
        &self.separators
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parents
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub(crate) fn relabel(&mut self, clique_indices: &BTreeSet<usize>, f: impl Fn(VertexId) -> VertexId) {
        for &c in clique_indices {
            for v in self.cliques[c].iter_mut() {
                *v = f(*v);
            }
            self.cliques[c].sort_unstable();
            if c > 0 {
                for v in self.separators[c - 1].iter_mut() {
                    *v = f(*v);
                }
                self.separators[c - 1].sort_unstable();
            }
        }
    }

    /// Drops the leaf clique `idx` (no other clique may name it as parent).
    pub(crate) fn remove_leaf(&mut self, idx: usize) {
        debug_assert!(self.parents.iter().all(|p| *p != Some(idx)));
        debug_assert!(idx > 0);
        self.cliques.remove(idx);
        self.separators.remove(idx - 1);
        self.parents.remove(idx);
        for p in self.parents.iter_mut().flatten() {
            if *p > idx {
                *p -= 1;
            }
        }
    }

    /// Drops the root, promoting its only child (if any) to root.
    pub(crate) fn remove_root(&mut self) {
        let children: Vec<usize> = (1..self.len())
            .filter(|&c| self.parents[c] == Some(0))
            .collect();
        debug_assert!(children.len() <= 1);
        let Some(&child) = children.first() else {
            self.cliques.clear();
            self.separators.clear();
            self.parents.clear();
            return;
        };
        // Re-root at `child`, then emit cliques in breadth-first order so
        // that parents always precede children.
        let n = self.len();
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
        for c in 1..n {
            if c != child {
                if let Some(p) = self.parents[c] {
                    kids[p].push(c);
                }
            }
        }
        let mut order = vec![child];
        let mut new_index = vec![usize::MAX; n];
        new_index[child] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for &k in &kids[c] {
                new_index[k] = order.len();
                order.push(k);
            }
        }
        let mut cliques = Vec::with_capacity(order.len());
        let mut separators = Vec::with_capacity(order.len().saturating_sub(1));
        let mut parents = Vec::with_capacity(order.len());
        for &c in &order {
            cliques.push(self.cliques[c]);
            if c == child {
                parents.push(None);
            } else {
                separators.push(self.separators[c - 1]);
                parents.push(self.parents[c].map(|p| new_index[p]));
            }
        }
        *self = CliqueTree {
            cliques,
            separators,
            parents,
        };
    }
}

/// Per-face record of the best insertable vertex and its score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CacheEntry {
    pub gain: f64,
    pub vertex: VertexId,
}

/// The MaxGain / BestVertex vectors, keyed by current face, plus the set of
/// vertices still waiting for insertion.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GainCache {
    pub(crate) entries: BTreeMap<Face, CacheEntry>,
    // sorted ascending
    pub(crate) remaining: Vec<VertexId>,
}

impl GainCache {
    pub fn max_gain(&self, f: &Face) -> Option<f64> {
        self.entries.get(f).map(|e| e.gain)
    }

    pub fn best_vertex(&self, f: &Face) -> Option<VertexId> {
        self.entries.get(f).map(|e| e.vertex)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Face, &CacheEntry)> {
        self.entries.iter()
    }

    pub fn remaining(&self) -> &[VertexId] {
        &self.remaining
    }

    /// The face with the highest cached gain; ties go to the smallest face.
    pub fn best(&self) -> Option<(Face, CacheEntry)> {
        let mut best: Option<(Face, CacheEntry)> = None;
        for (f, e) in &self.entries {
            if best.is_none_or(|(_, b)| e.gain > b.gain) {
                best = Some((*f, *e));
            }
        }
        best
    }
}

/// Algorithm identifier recorded in every result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Tmfg,
    TmfgT1,
    TmfgS,
    TmfgA,
    Pmfg,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Tmfg,
        Method::TmfgT1,
        Method::TmfgS,
        Method::TmfgA,
        Method::Pmfg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Tmfg => "tmfg",
            Method::TmfgT1 => "tmfg-t1",
            Method::TmfgS => "tmfg-s",
            Method::TmfgA => "tmfg-a",
            Method::Pmfg => "pmfg",
        }
    }

    /// Whether outputs of this method are guaranteed chordal.
    pub fn is_chordal(self) -> bool {
        matches!(self, Method::Tmfg | Method::TmfgS)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

/// Number of moves of each kind applied during a build.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveCounts {
    pub t2: u64,
    pub t2_inverse: u64,
    pub t1: u64,
    pub a: u64,
    pub a_inverse: u64,
    pub s: u64,
}

/// A retained edge with its oracle weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedEdge {
    pub i: VertexId,
    pub j: VertexId,
    pub weight: f64,
}

/// Output of a filtering run.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterResult {
    pub method: Method,
    /// Vertex capacity; ids range over `[0, p)`.
    pub p: usize,
    /// Each unordered pair once, sorted by `(i, j)` with `i < j`.
    pub edges: Vec<WeightedEdge>,
    pub total_weight: f64,
    /// Present only when the output is a T2/S clique tree.
    pub clique_tree: Option<CliqueTree>,
    /// Face registry of TMFG outputs, needed for online updates.
    pub triangulation: Option<Triangulation>,
    pub elapsed: Duration,
    pub moves: MoveCounts,
    pub stats: BuildStats,
}

/// Counters collected during a build.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BuildStats {
    /// Number of score-function evaluations.
    pub score_evaluations: u64,
    /// Running total kept as "clique weight minus separator weight" while
    /// inserting; `None` for builds that are not pure T2 sequences.
    pub bookkeeping_total: Option<f64>,
    /// Planarity tests performed (PMFG).
    pub planarity_tests: u64,
    /// A variant build that returned the base graph because its own moves
    /// ended lower.
    pub base_fallback: bool,
}

impl FilterResult {
    /// Assembles a result from a triangulation, reading weights from `w`.
    pub(crate) fn from_triangulation(
        method: Method,
        tri: Triangulation,
        w: &WeightOracle,
        clique_tree: Option<CliqueTree>,
    ) -> Self {
        let edges: Vec<WeightedEdge> = tri
            .edges()
            .map(|e| WeightedEdge {
                i: e.low(),
                j: e.high(),
                weight: w.weight(e.low(), e.high()),
            })
            .collect();
        let total_weight = edges.iter().map(|e| e.weight).sum();
        FilterResult {
            method,
            p: tri.capacity(),
            edges,
            total_weight,
            clique_tree,
            triangulation: Some(tri),
            elapsed: Duration::ZERO,
            moves: MoveCounts::default(),
            stats: BuildStats::default(),
        }
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().map(|e| Edge::new(e.i, e.j)).collect()
    }

    /// Number of distinct vertices touched by an edge.
    pub fn vertex_count(&self) -> usize {
        match &self.triangulation {
            Some(t) => t.inserted_count(),
            None => {
                let mut seen = BTreeSet::new();
                for e in &self.edges {
                    seen.insert(e.i);
                    seen.insert(e.j);
                }
                seen.len()
            }
        }
    }
}
