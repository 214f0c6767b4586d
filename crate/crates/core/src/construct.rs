//! Greedy construction of the filtered graph by repeated vertex insertion,
//! its locally optimized variants, and online insertion/removal.
//!
//! A build starts from a seed tetrahedron and inserts the remaining
//! vertices one at a time. Each step takes the (face, vertex) pair with the
//! largest score from a [`GainCache`], which is refreshed only where the
//! step changed something.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{
    BuildStats, CacheEntry, CliqueTree, Edge, Face, FilterResult, GainCache, Method, MoveCounts,
    Triangulation, VertexId,
};
use crate::moves::{
    a_blocker, apply_a, apply_a_inverse, apply_s, apply_t1, apply_t2, apply_t2_inverse,
    permutations4, plaquette, s_gain, s_gain_matrix, t1_gain, MoveRecord,
};
use crate::scores::{score_entropy_gaussian, ScoreFunction, WeightOracle};

/// Which local optimization runs on top of plain insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Insertions only; the output is chordal.
    #[default]
    Base,
    /// Edge flips around each insertion.
    T1,
    /// Best relabeling of each new 4-clique; the output stays chordal.
    S,
    /// Plaquette insertions compete with face insertions, followed by flips.
    A,
}

impl Variant {
    pub fn method(self) -> Method {
        match self {
            Variant::Base => Method::Tmfg,
            Variant::T1 => Method::TmfgT1,
            Variant::S => Method::TmfgS,
            Variant::A => Method::TmfgA,
        }
    }

    pub fn from_method(m: Method) -> Option<Variant> {
        match m {
            Method::Tmfg => Some(Variant::Base),
            Method::TmfgT1 => Some(Variant::T1),
            Method::TmfgS => Some(Variant::S),
            Method::TmfgA => Some(Variant::A),
            Method::Pmfg => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedStrategy {
    /// Heaviest edge, then twice the vertex adding the most weight. O(p²).
    #[default]
    GreedyExpansion,
    /// Heaviest of all `C(p, 4)` tetrahedra. Guarded by
    /// [`BuildConfig::exhaustive_seed_limit`].
    Exhaustive,
}

/// How ties are broken. Only one rule exists: lowest vertex index, and among
/// faces the lexicographically smallest sorted triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    #[default]
    LowestIndex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuildConfig {
    pub variant: Variant,
    pub score: ScoreFunction,
    pub seed_strategy: SeedStrategy,
    /// Largest `p` for which the exhaustive seed search is allowed.
    pub exhaustive_seed_limit: usize,
    /// Maximum number of flips after each insertion (T1 and A variants).
    pub t1_sweep_cap: usize,
    pub tie_break: TieBreak,
    /// Recompute every cache entry from scratch after each step and fail on
    /// any disagreement. Slow; meant for tests.
    pub verify_cache: bool,
    /// For the T1, S and A variants: also run the base build and return it
    /// instead whenever the local moves ended with less total weight.
    pub base_floor: bool,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            variant: Variant::Base,
            score: ScoreFunction::EdgeWeightSum,
            seed_strategy: SeedStrategy::GreedyExpansion,
            exhaustive_seed_limit: 64,
            t1_sweep_cap: 10,
            tie_break: TieBreak::LowestIndex,
            verify_cache: false,
            base_floor: true,
        }
    }
}

impl BuildConfig {
    pub fn new(variant: Variant) -> Self {
        BuildConfig {
            variant,
            ..BuildConfig::default()
        }
    }

    fn check(&self, w: &WeightOracle) -> Result<()> {
        if let ScoreFunction::GaussianEntropy(m) = &self.score {
            if self.variant != Variant::Base {
                return Err(Error::Unsupported(format!(
                    "the entropy score is only available for the base variant, not {}",
                    self.variant.method()
                )));
            }
            if m.dim() != w.dim() {
                return Err(Error::DimensionMismatch {
                    expected: w.dim(),
                    actual: m.dim(),
                });
            }
        }
        Ok(())
    }
}

/// The starting tetrahedron, sorted.
pub fn select_seed_clique(
    w: &WeightOracle,
    strategy: SeedStrategy,
    exhaustive_limit: usize,
) -> Result<[VertexId; 4]> {
    let p = w.dim();
    if p < 4 {
        return Err(Error::TooFewVertices {
            required: 4,
            actual: p,
        });
    }
    let v = VertexId::new;
    let mut seed = match strategy {
        SeedStrategy::GreedyExpansion => {
            let mut best = (f64::NEG_INFINITY, 0, 1);
            for i in 0..p {
                for j in i + 1..p {
                    let x = w.weight(v(i), v(j));
                    if x > best.0 {
                        best = (x, i, j);
                    }
                }
            }
            let mut members = vec![v(best.1), v(best.2)];
            for _ in 0..2 {
                let mut pick = (f64::NEG_INFINITY, 0);
                for u in 0..p {
                    if members.contains(&v(u)) {
                        continue;
                    }
                    let s: f64 = members.iter().map(|&m| w.weight(v(u), m)).sum();
                    if s > pick.0 {
                        pick = (s, u);
                    }
                }
                members.push(v(pick.1));
            }
            [members[0], members[1], members[2], members[3]]
        }
        SeedStrategy::Exhaustive => {
            if p > exhaustive_limit {
                return Err(Error::SizeGuard {
                    actual: p,
                    limit: exhaustive_limit,
                });
            }
            let mut best = (f64::NEG_INFINITY, [v(0), v(1), v(2), v(3)]);
            for a in 0..p {
                for b in a + 1..p {
                    let ab = w.weight(v(a), v(b));
                    for c in b + 1..p {
                        let abc = ab + w.weight(v(a), v(c)) + w.weight(v(b), v(c));
                        for d in c + 1..p {
                            let s = abc
                                + w.weight(v(a), v(d))
                                + w.weight(v(b), v(d))
                                + w.weight(v(c), v(d));
                            if s > best.0 {
                                best = (s, [v(a), v(b), v(c), v(d)]);
                            }
                        }
                    }
                }
            }
            best.1
        }
    };
    seed.sort_unstable();
    Ok(seed)
}

/// Best vertex for `f` among `remaining` (lowest index on ties).
fn best_for_face(
    f: &Face,
    remaining: &[VertexId],
    score: &ScoreFunction,
    w: &WeightOracle,
    evaluations: &mut u64,
) -> Result<Option<CacheEntry>> {
    let mut best: Option<CacheEntry> = None;
    for &u in remaining {
        let g = score.evaluate_fast(w, u, f)?;
        if best.is_none_or(|b| g > b.gain) {
            best = Some(CacheEntry { gain: g, vertex: u });
        }
    }
    *evaluations += remaining.len() as u64;
    Ok(best)
}

/// Counters reported by [`refresh_cache`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RefreshStats {
    pub deleted: usize,
    pub inserted: usize,
    pub recomputed: usize,
    pub evaluations: u64,
}

/// Brings `cache` up to date after a move that removed `removed_faces`,
/// added `new_faces` and (optionally) inserted vertex `inserted`.
///
/// Entries of removed faces are dropped, entries of new faces are computed
/// over the remaining vertices, and any other face whose best vertex was
/// just inserted is recomputed. Nothing else is touched.
pub fn refresh_cache(
    cache: &mut GainCache,
    inserted: Option<VertexId>,
    removed_faces: &[Face],
    new_faces: &[Face],
    score: &ScoreFunction,
    w: &WeightOracle,
) -> Result<RefreshStats> {
    let mut stats = RefreshStats::default();
    for f in removed_faces {
        if cache.entries.remove(f).is_some() {
            stats.deleted += 1;
        }
    }
    if let Some(v) = inserted {
        match cache.remaining.binary_search(&v) {
            Ok(i) => {
                cache.remaining.remove(i);
            }
            Err(_) => {
                return Err(Error::Internal(format!(
                    "{v} inserted but not waiting in the cache"
                )))
            }
        }
        let stale: Vec<Face> = cache
            .entries
            .iter()
            .filter(|(_, e)| e.vertex == v)
            .map(|(f, _)| *f)
            .collect();
        for f in stale {
            match best_for_face(&f, &cache.remaining, score, w, &mut stats.evaluations)? {
                Some(e) => {
                    cache.entries.insert(f, e);
                }
                None => {
                    cache.entries.remove(&f);
                }
            }
            stats.recomputed += 1;
        }
    }
    for f in new_faces {
        if let Some(e) = best_for_face(f, &cache.remaining, score, w, &mut stats.evaluations)? {
            cache.entries.insert(*f, e);
            stats.inserted += 1;
        }
    }
    Ok(stats)
}

/// Per-edge cache of the best plaquette insertion.
#[derive(Debug, Default)]
struct ACache {
    entries: BTreeMap<Edge, CacheEntry>,
}

fn a_gain(w: &WeightOracle, u: VertexId, e: Edge, x: VertexId, y: VertexId) -> f64 {
    let (v1, v3) = e.endpoints();
    w.weight(u, v1) + w.weight(u, x) + w.weight(u, v3) + w.weight(u, y) - w.weight(v1, v3)
}

fn best_for_edge(
    tri: &Triangulation,
    e: Edge,
    remaining: &[VertexId],
    w: &WeightOracle,
    evaluations: &mut u64,
) -> Option<CacheEntry> {
    let (_, [x, y]) = plaquette(tri, e).ok()?;
    let mut best: Option<CacheEntry> = None;
    for &u in remaining {
        let g = a_gain(w, u, e, x, y);
        if best.is_none_or(|b| g > b.gain) {
            best = Some(CacheEntry { gain: g, vertex: u });
        }
    }
    *evaluations += remaining.len() as u64;
    best
}

struct Engine<'a> {
    w: &'a WeightOracle,
    cfg: &'a BuildConfig,
    tri: Triangulation,
    cache: GainCache,
    a_cache: Option<ACache>,
    // clique that created each current face (chordal variants only)
    owner: Option<HashMap<Face, usize>>,
    tree: Option<CliqueTree>,
    bookkeeping: Option<f64>,
    moves: MoveCounts,
    evaluations: u64,
}

impl<'a> Engine<'a> {
    fn new(w: &'a WeightOracle, cfg: &'a BuildConfig, seed: [VertexId; 4]) -> Result<Self> {
        let p = w.dim();
        let tri = Triangulation::from_tetrahedron(p, seed)?;
        let chordal = matches!(cfg.variant, Variant::Base | Variant::S);
        let mut owner = HashMap::new();
        for f in tri.faces() {
            owner.insert(*f, 0);
        }
        let mut seed_weight = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                seed_weight += w.weight(seed[i], seed[j]);
            }
        }
        let remaining: Vec<VertexId> = (0..p)
            .map(VertexId::new)
            .filter(|v| !seed.contains(v))
            .collect();
        let mut engine = Engine {
            w,
            cfg,
            tri,
            cache: GainCache {
                entries: BTreeMap::new(),
                remaining,
            },
            a_cache: (cfg.variant == Variant::A).then(ACache::default),
            owner: chordal.then_some(owner),
            tree: chordal.then(|| CliqueTree::with_root(seed)),
            bookkeeping: (cfg.variant == Variant::Base).then_some(seed_weight),
            moves: MoveCounts::default(),
            evaluations: 0,
        };
        let faces: Vec<Face> = engine.tri.faces().copied().collect();
        let st = refresh_cache(&mut engine.cache, None, &[], &faces, &cfg.score, w)?;
        engine.evaluations += st.evaluations;
        if let Some(ac) = &mut engine.a_cache {
            let edges: Vec<Edge> = engine.tri.edges().collect();
            for e in edges {
                if let Some(entry) = best_for_edge(
                    &engine.tri,
                    e,
                    &engine.cache.remaining,
                    w,
                    &mut engine.evaluations,
                ) {
                    ac.entries.insert(e, entry);
                }
            }
        }
        Ok(engine)
    }

    fn run(&mut self) -> Result<()> {
        while !self.cache.remaining.is_empty() {
            let (face, entry) = self
                .cache
                .best()
                .ok_or_else(|| Error::Internal("no face entry while vertices remain".into()))?;
            let plaquette_pick = self.best_a().filter(|(_, a)| a.gain > entry.gain);
            let new_faces = match plaquette_pick {
                Some((e, a)) => self.insert_a(e, a.vertex)?,
                None => self.insert_t2(face, entry.vertex)?,
            };
            match self.cfg.variant {
                Variant::Base => {}
                Variant::S => self.s_step()?,
                Variant::T1 | Variant::A => self.t1_sweep(&new_faces)?,
            }
            if self.cfg.verify_cache {
                self.verify()?;
            }
        }
        Ok(())
    }

    fn insert_t2(&mut self, face: Face, v: VertexId) -> Result<Vec<Face>> {
        let out = apply_t2(&mut self.tri, v, face, self.w)?;
        self.moves.t2 += 1;
        if let (Some(tree), Some(owner)) = (&mut self.tree, &mut self.owner) {
            let parent = owner
                .remove(&face)
                .ok_or_else(|| Error::Internal(format!("face {face} has no owner")))?;
            let idx = tree.push(out.clique, face.vertices(), parent);
            for f in out.faces {
                owner.insert(f, idx);
            }
        }
        if let Some(total) = &mut self.bookkeeping {
            let c = out.clique;
            let mut cw = 0.0;
            for i in 0..4 {
                for j in i + 1..4 {
                    cw += self.w.weight(c[i], c[j]);
                }
            }
            let [a, b, d] = face.vertices();
            let sw = self.w.weight(a, b) + self.w.weight(a, d) + self.w.weight(b, d);
            *total += cw - sw;
        }
        self.after_move(Some(v), &out.record)?;
        Ok(out.faces.to_vec())
    }

    fn insert_a(&mut self, e: Edge, v: VertexId) -> Result<Vec<Face>> {
        let rec = apply_a(&mut self.tri, e, v, self.w)?;
        self.moves.a += 1;
        self.after_move(Some(v), &rec)?;
        Ok(rec.added_faces)
    }

    fn after_move(&mut self, inserted: Option<VertexId>, rec: &MoveRecord) -> Result<()> {
        let st = refresh_cache(
            &mut self.cache,
            inserted,
            &rec.removed_faces,
            &rec.added_faces,
            &self.cfg.score,
            self.w,
        )?;
        self.evaluations += st.evaluations;
        if let Some(ac) = &mut self.a_cache {
            let mut touched: BTreeSet<Edge> = BTreeSet::new();
            for f in rec.removed_faces.iter().chain(&rec.added_faces) {
                touched.extend(f.edges());
            }
            if let Some(v) = inserted {
                touched.extend(
                    ac.entries
                        .iter()
                        .filter(|(_, x)| x.vertex == v)
                        .map(|(e, _)| *e),
                );
            }
            for e in touched {
                ac.entries.remove(&e);
                if self.tri.has_edge(e.low(), e.high()) {
                    if let Some(entry) = best_for_edge(
                        &self.tri,
                        e,
                        &self.cache.remaining,
                        self.w,
                        &mut self.evaluations,
                    ) {
                        ac.entries.insert(e, entry);
                    }
                }
            }
        }
        Ok(())
    }

    /// Highest cached plaquette insertion among edges where A is allowed.
    fn best_a(&self) -> Option<(Edge, CacheEntry)> {
        let ac = self.a_cache.as_ref()?;
        let mut best: Option<(Edge, CacheEntry)> = None;
        for (e, entry) in &ac.entries {
            if best.is_some_and(|(_, b)| entry.gain <= b.gain) {
                continue;
            }
            if a_blocker(&self.tri, *e).is_none() {
                best = Some((*e, *entry));
            }
        }
        best
    }

    fn t1_sweep(&mut self, new_faces: &[Face]) -> Result<()> {
        let mut candidates: BTreeSet<Edge> = new_faces.iter().flat_map(|f| f.edges()).collect();
        for _ in 0..self.cfg.t1_sweep_cap {
            let mut best: Option<(Edge, f64)> = None;
            for &e in &candidates {
                if let Some(g) = t1_gain(&self.tri, e, self.w) {
                    if g > 0.0 && best.is_none_or(|(_, b)| g > b) {
                        best = Some((e, g));
                    }
                }
            }
            let Some((e, _)) = best else { break };
            let rec = apply_t1(&mut self.tri, e, self.w)?;
            self.moves.t1 += 1;
            candidates.remove(&e);
            candidates.extend(rec.added_faces.iter().flat_map(|f| f.edges()));
            self.after_move(None, &rec)?;
        }
        Ok(())
    }

    fn s_step(&mut self) -> Result<()> {
        let tree = self.tree.as_ref().expect("S variant keeps a clique tree");
        let clique = *tree.cliques().last().expect("tree is never empty");
        let b = s_gain_matrix(&self.tri, &clique, self.w);
        let mut best: Option<([usize; 4], f64)> = None;
        for perm in permutations4() {
            let g = s_gain(&b, &perm);
            if g > 0.0 && best.is_none_or(|(_, x)| g > x) {
                best = Some((perm, g));
            }
        }
        let Some((perm, _)) = best else {
            return Ok(());
        };
        let image = perm.map(|i| clique[i]);
        let out = apply_s(&mut self.tri, clique, image, self.w)?;
        self.moves.s += 1;
        let r = out.relabeling;
        if let Some(tree) = &mut self.tree {
            let hit: BTreeSet<usize> = tree
                .cliques()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.iter().any(|x| clique.contains(x)))
                .map(|(i, _)| i)
                .collect();
            tree.relabel(&hit, |x| r.apply(x));
        }
        if let Some(owner) = &mut self.owner {
            let moved: Vec<(Face, usize)> = out
                .record
                .removed_faces
                .iter()
                .map(|f| (f.map(|x| r.apply(x)), owner.remove(f).expect("face has an owner")))
                .collect();
            owner.extend(moved);
        }
        self.bookkeeping = None;
        self.after_move(None, &out.record)
    }

    fn verify(&self) -> Result<()> {
        let keys: Vec<Face> = self.cache.entries.keys().copied().collect();
        let faces: Vec<Face> = self.tri.faces().copied().collect();
        let remaining = &self.cache.remaining;
        if !remaining.is_empty() && keys != faces {
            return Err(Error::Internal("cache keys differ from current faces".into()));
        }
        let mut scratch = 0;
        for f in &faces {
            let fresh = best_for_face(f, remaining, &self.cfg.score, self.w, &mut scratch)?;
            if fresh != self.cache.entries.get(f).copied() {
                return Err(Error::Internal(format!(
                    "cache entry for {f} is {:?}, recomputation gives {fresh:?}",
                    self.cache.entries.get(f)
                )));
            }
        }
        if let Some(ac) = &self.a_cache {
            let edges: Vec<Edge> = self.tri.edges().collect();
            for e in edges {
                let fresh = best_for_edge(&self.tri, e, remaining, self.w, &mut scratch);
                if fresh != ac.entries.get(&e).copied() {
                    return Err(Error::Internal(format!(
                        "plaquette cache entry for {e} is stale"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds the filtered graph of `w` with the given configuration.
pub fn build(w: &WeightOracle, cfg: &BuildConfig) -> Result<FilterResult> {
    let start = Instant::now();
    let mut result = build_trajectory(w, cfg)?;
    if cfg.base_floor && cfg.variant != Variant::Base {
        let base = build_trajectory(w, &BuildConfig { variant: Variant::Base, ..cfg.clone() })?;
        if base.total_weight > result.total_weight {
            result = FilterResult {
                method: cfg.variant.method(),
                stats: BuildStats {
                    base_fallback: true,
                    ..base.stats
                },
                ..base
            };
        }
    }
    result.elapsed = start.elapsed();
    Ok(result)
}

fn build_trajectory(w: &WeightOracle, cfg: &BuildConfig) -> Result<FilterResult> {
    let start = Instant::now();
    cfg.check(w)?;
    let seed = select_seed_clique(w, cfg.seed_strategy, cfg.exhaustive_seed_limit)?;
    let mut engine = Engine::new(w, cfg, seed)?;
    engine.run()?;
    if cfg.verify_cache {
        engine.verify()?;
    }
    let Engine {
        tri,
        tree,
        bookkeeping,
        moves,
        evaluations,
        ..
    } = engine;
    let mut result = FilterResult::from_triangulation(cfg.variant.method(), tri, w, tree);
    result.moves = moves;
    result.stats = BuildStats {
        score_evaluations: evaluations,
        bookkeeping_total: bookkeeping,
        planarity_tests: 0,
        base_fallback: false,
    };
    result.elapsed = start.elapsed();
    Ok(result)
}

/// Recovers the insertion tree of a maximal planar graph that can be built
/// from a tetrahedron by face insertions alone, by repeatedly peeling the
/// smallest degree-3 vertex. `None` when the graph is not of that kind.
pub fn clique_tree_by_peeling(tri: &Triangulation) -> Option<CliqueTree> {
    let n = tri.inserted_count();
    if n < 4 || !tri.verify_sphere_triangulation().passed() {
        return None;
    }
    let mut adj: Vec<BTreeSet<VertexId>> = (0..tri.capacity())
        .map(|i| tri.neighbors(VertexId::new(i)).collect())
        .collect();
    let mut alive: BTreeSet<VertexId> = tri.inserted_vertices().collect();
    let mut ready: BTreeSet<VertexId> = alive.iter().copied().filter(|&v| adj[v.index()].len() == 3).collect();
    let mut peeled: Vec<(VertexId, [VertexId; 3])> = Vec::new();
    while alive.len() > 4 {
        let v = ready.pop_first()?;
        let ns: Vec<VertexId> = adj[v.index()].iter().copied().collect();
        if ns.len() != 3 {
            return None;
        }
        for &x in &ns {
            adj[x.index()].remove(&v);
            match adj[x.index()].len() {
                3 => {
                    ready.insert(x);
                }
                _ => {
                    ready.remove(&x);
                }
            }
        }
        adj[v.index()].clear();
        alive.remove(&v);
        peeled.push((v, [ns[0], ns[1], ns[2]]));
    }
    let root: Vec<VertexId> = alive.into_iter().collect();
    let mut tree = CliqueTree::with_root([root[0], root[1], root[2], root[3]]);
    for (v, sep) in peeled.into_iter().rev() {
        let parent = tree
            .cliques()
            .iter()
            .rposition(|c| sep.iter().all(|x| c.contains(x)))?;
        let mut clique = [sep[0], sep[1], sep[2], v];
        clique.sort_unstable();
        tree.push(clique, sep, parent);
    }
    Some(tree)
}

fn rebuild_result(
    template: &FilterResult,
    tri: Triangulation,
    w: &WeightOracle,
    tree: Option<CliqueTree>,
) -> FilterResult {
    let mut out = FilterResult::from_triangulation(template.method, tri, w, tree);
    out.moves = template.moves;
    out.stats = BuildStats {
        bookkeeping_total: None,
        ..template.stats
    };
    out
}

/// Adds a new vertex (id `p`) to a finished build, given its weights to the
/// existing `p` vertices. The vertex goes into the highest-scoring face
/// (ties: smallest face); with `allow_a`, a plaquette insertion is used
/// instead when it gains strictly more.
pub fn insert_vertex_online(
    result: &FilterResult,
    new_weights: &[f64],
    score: &ScoreFunction,
    allow_a: bool,
) -> Result<FilterResult> {
    let start = Instant::now();
    let p = result.p;
    let tri0 = result.triangulation.as_ref().ok_or_else(|| {
        Error::Unsupported("online insertion needs the face registry of a TMFG build".into())
    })?;
    if new_weights.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            actual: new_weights.len(),
        });
    }
    let v = VertexId::new(p);
    // previous edges keep their weights; the new row is appended
    let mut old: HashMap<(usize, usize), f64> = HashMap::new();
    for e in &result.edges {
        old.insert((e.i.index(), e.j.index()), e.weight);
    }
    for (i, &x) in new_weights.iter().enumerate() {
        if !(x.is_finite() && x >= 0.0) && tri0.is_inserted(VertexId::new(i)) {
            return Err(Error::InvalidWeight { i, j: p, value: x });
        }
    }
    let w = WeightOracle::from_fn(p + 1, |i, j| {
        if j == p {
            let x = new_weights[i];
            if x.is_finite() && x >= 0.0 {
                x
            } else {
                0.0
            }
        } else {
            old.get(&(i, j)).copied().unwrap_or(0.0)
        }
    })?;
    if let ScoreFunction::GaussianEntropy(m) = score {
        if m.dim() < p + 1 {
            return Err(Error::DimensionMismatch {
                expected: p + 1,
                actual: m.dim(),
            });
        }
    }
    let mut tri = tri0.clone();
    tri.grow(1);
    let mut best: Option<(Face, f64)> = None;
    for f in tri.faces() {
        let g = match score {
            ScoreFunction::EdgeWeightSum => f.vertices().iter().map(|&x| w.weight(v, x)).sum(),
            ScoreFunction::GaussianEntropy(m) => score_entropy_gaussian(v, f, m)?,
        };
        if best.is_none_or(|(_, b)| g > b) {
            best = Some((*f, g));
        }
    }
    let (face, t2_gain) = best.ok_or_else(|| Error::Internal("no faces".into()))?;
    let mut a_pick: Option<(Edge, f64)> = None;
    if allow_a {
        for e in tri.edges() {
            if a_blocker(&tri, e).is_some() {
                continue;
            }
            let (_, [x, y]) = plaquette(&tri, e)?;
            let g = a_gain(&w, v, e, x, y);
            if a_pick.is_none_or(|(_, b)| g > b) {
                a_pick = Some((e, g));
            }
        }
    }
    let mut moves = result.moves;
    let tree = match a_pick.filter(|(_, g)| *g > t2_gain) {
        Some((e, _)) => {
            apply_a(&mut tri, e, v, &w)?;
            moves.a += 1;
            if result.clique_tree.is_some() {
                clique_tree_by_peeling(&tri)
            } else {
                None
            }
        }
        None => {
            let out = apply_t2(&mut tri, v, face, &w)?;
            moves.t2 += 1;
            result.clique_tree.as_ref().and_then(|ct| {
                let parent = ct
                    .cliques()
                    .iter()
                    .position(|c| face.vertices().iter().all(|x| c.contains(x)))?;
                let mut ct = ct.clone();
                ct.push(out.clique, face.vertices(), parent);
                Some(ct)
            })
        }
    };
    let mut out = rebuild_result(result, tri, &w, tree);
    out.moves = moves;
    out.elapsed = start.elapsed();
    Ok(out)
}

/// Removes vertex `v` from a finished build: degree 3 by T2⁻¹, degree 4 by
/// A⁻¹ (diagonal chosen by the weights in `w`). Higher degrees are refused.
pub fn remove_vertex_online(
    result: &FilterResult,
    v: VertexId,
    w: &WeightOracle,
) -> Result<FilterResult> {
    let start = Instant::now();
    let tri0 = result.triangulation.as_ref().ok_or_else(|| {
        Error::Unsupported("online removal needs the face registry of a TMFG build".into())
    })?;
    tri0.check_range(v)?;
    if w.dim() < result.p {
        return Err(Error::DimensionMismatch {
            expected: result.p,
            actual: w.dim(),
        });
    }
    if !tri0.is_inserted(v) {
        return Err(Error::NotInserted(v));
    }
    if tri0.inserted_count() <= 4 {
        return Err(Error::BelowMinimumSize(v));
    }
    let mut tri = tri0.clone();
    let mut moves = result.moves;
    let degree = tri.degree(v);
    let tree = match degree {
        3 => {
            apply_t2_inverse(&mut tri, v, w)?;
            moves.t2_inverse += 1;
            result.clique_tree.as_ref().and_then(|ct| {
                let idx = ct.cliques().iter().position(|c| c.contains(&v))?;
                let mut ct = ct.clone();
                if idx == 0 {
                    ct.remove_root();
                } else if ct.parents().contains(&Some(idx)) {
                    return clique_tree_by_peeling(&tri);
                } else {
                    ct.remove_leaf(idx);
                }
                Some(ct)
            })
        }
        4 => {
            apply_a_inverse(&mut tri, v, w)?;
            moves.a_inverse += 1;
            if result.clique_tree.is_some() || result.method.is_chordal() {
                clique_tree_by_peeling(&tri)
            } else {
                None
            }
        }
        _ => return Err(Error::NotRemovable { vertex: v, degree }),
    };
    let mut out = rebuild_result(result, tri, w, tree);
    out.moves = moves;
    out.elapsed = start.elapsed();
    Ok(out)
}
