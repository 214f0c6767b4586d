//! Left-right planarity test.
//!
//! The test orients the graph by a depth-first search, computes the lowpoint
//! and nesting order of every edge, and then runs a second search that
//! maintains a stack of conflict pairs (intervals of return edges that must
//! go on opposite sides). The graph is planar iff no conflict is forced onto
//! both sides. Linear time in the size of the graph.
//!
//! [`LrTester`] keeps its buffers between calls, so repeated tests on
//! graphs of similar size do not reallocate.

/// Vertex or edge index inside one test; `u32` keeps the working set small.
type Ix = u32;
const NONE: Ix = Ix::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Interval {
    low: Ix,
    high: Ix,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    const EMPTY: ConflictPair = ConflictPair {
        left: Interval::EMPTY,
        right: Interval::EMPTY,
    };

    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Everything the two passes know about one edge, kept together so a
/// visit touches a single cache line.
#[derive(Debug, Clone, Copy)]
struct EdgeState {
    source: Ix,
    target: Ix,
    lowpt: Ix,
    lowpt2: Ix,
    nesting: Ix,
    reference: Ix,
    lowpt_edge: Ix,
    stack_bottom: Ix,
    oriented: bool,
    skip: bool,
}

impl EdgeState {
    const FRESH: EdgeState = EdgeState {
        source: NONE,
        target: NONE,
        lowpt: 0,
        lowpt2: 0,
        nesting: 0,
        reference: NONE,
        lowpt_edge: NONE,
        stack_bottom: 0,
        oriented: false,
        skip: false,
    };
}

/// Reusable left-right planarity tester.
#[derive(Debug, Default, Clone)]
pub struct LrTester {
    // neighbours of v are nbr[start[v]..start[v + 1]], each with its edge
    start: Vec<Ix>,
    nbr: Vec<(Ix, Ix)>,
    edge: Vec<EdgeState>,
    height: Vec<Ix>,
    parent_edge: Vec<Ix>,
    // outgoing edges of v by nesting depth: out[out_start[v]..out_start[v + 1]]
    out_start: Vec<Ix>,
    out: Vec<Ix>,
    by_nesting: Vec<Ix>,
    order: Vec<Ix>,
    conflicts: Vec<ConflictPair>,
    cursor: Vec<Ix>,
    dfs: Vec<Ix>,
}

impl LrTester {
    pub fn new() -> Self {
        LrTester::default()
    }

    /// Whether the simple graph on vertices `0..n` with the given edges is
    /// planar. Edges must be distinct pairs of distinct vertices.
    pub fn is_planar(&mut self, n: usize, edges: &[(usize, usize)]) -> bool {
        let m = edges.len();
        if n > 2 && m > 3 * n - 6 {
            return false;
        }
        assert!(n < NONE as usize && 2 * m < NONE as usize, "graph too large");
        self.load(n, edges);
        let mut roots = Vec::new();
        for v in 0..n as Ix {
            if self.height[v as usize] == NONE {
                self.height[v as usize] = 0;
                roots.push(v);
                self.orient(v);
            }
        }
        self.sort_out_edges(n);
        for e in &mut self.edge {
            e.skip = false;
        }
        roots.into_iter().all(|r| self.test(r))
    }

    fn load(&mut self, n: usize, edges: &[(usize, usize)]) {
        self.height.clear();
        self.height.resize(n, NONE);
        self.parent_edge.clear();
        self.parent_edge.resize(n, NONE);
        self.edge.clear();
        self.edge.resize(edges.len(), EdgeState::FRESH);
        self.conflicts.clear();
        self.dfs.clear();

        self.start.clear();
        self.start.resize(n + 1, 0);
        for &(u, v) in edges {
            self.start[u + 1] += 1;
            self.start[v + 1] += 1;
        }
        for v in 0..n {
            self.start[v + 1] += self.start[v];
        }
        self.cursor.clear();
        self.cursor.extend_from_slice(&self.start[..n]);
        self.nbr.clear();
        self.nbr.resize(2 * edges.len(), (0, 0));
        for (k, &(u, v)) in edges.iter().enumerate() {
            self.nbr[self.cursor[u] as usize] = (v as Ix, k as Ix);
            self.cursor[u] += 1;
            self.nbr[self.cursor[v] as usize] = (u as Ix, k as Ix);
            self.cursor[v] += 1;
        }
        self.cursor.copy_from_slice(&self.start[..n]);
    }

    /// Groups oriented edges by source, each group in non-decreasing
    /// nesting depth (counting sort: depths are below `2n + 2`).
    fn sort_out_edges(&mut self, n: usize) {
        let m = self.edge.len();
        let count = &mut self.by_nesting;
        count.clear();
        count.resize(2 * n + 3, 0);
        for e in &self.edge {
            count[e.nesting as usize + 1] += 1;
        }
        for d in 0..2 * n + 2 {
            count[d + 1] += count[d];
        }
        self.order.clear();
        self.order.resize(m, 0);
        for (k, e) in self.edge.iter().enumerate() {
            let d = e.nesting as usize;
            self.order[count[d] as usize] = k as Ix;
            count[d] += 1;
        }

        self.out_start.clear();
        self.out_start.resize(n + 1, 0);
        for e in &self.edge {
            self.out_start[e.source as usize + 1] += 1;
        }
        for v in 0..n {
            self.out_start[v + 1] += self.out_start[v];
        }
        self.cursor.copy_from_slice(&self.out_start[..n]);
        self.out.clear();
        self.out.resize(m, 0);
        for &k in &self.order {
            let v = self.edge[k as usize].source as usize;
            self.out[self.cursor[v] as usize] = k;
            self.cursor[v] += 1;
        }
        self.cursor.copy_from_slice(&self.out_start[..n]);
    }

    fn orient(&mut self, root: Ix) {
        self.dfs.push(root);
        while let Some(v) = self.dfs.pop() {
            let vi = v as usize;
            let e = self.parent_edge[vi];
            let hv = self.height[vi];
            let end = self.start[vi + 1];
            while self.cursor[vi] < end {
                let (w, k) = self.nbr[self.cursor[vi] as usize];
                let ki = k as usize;
                if !self.edge[ki].skip {
                    if self.edge[ki].oriented {
                        self.cursor[vi] += 1;
                        continue;
                    }
                    let ek = &mut self.edge[ki];
                    ek.oriented = true;
                    ek.source = v;
                    ek.target = w;
                    ek.lowpt = hv;
                    ek.lowpt2 = hv;
                    let hw = self.height[w as usize];
                    if hw == NONE {
                        // tree edge: finish w first, then come back here
                        ek.skip = true;
                        self.parent_edge[w as usize] = k;
                        self.height[w as usize] = hv + 1;
                        self.dfs.push(v);
                        self.dfs.push(w);
                        break;
                    }
                    ek.lowpt = hw;
                }
                let ek = self.edge[ki];
                self.edge[ki].nesting = 2 * ek.lowpt + Ix::from(ek.lowpt2 < hv);
                if e != NONE {
                    let pe = &mut self.edge[e as usize];
                    if ek.lowpt < pe.lowpt {
                        pe.lowpt2 = pe.lowpt.min(ek.lowpt2);
                        pe.lowpt = ek.lowpt;
                    } else if ek.lowpt > pe.lowpt {
                        pe.lowpt2 = pe.lowpt2.min(ek.lowpt);
                    } else {
                        pe.lowpt2 = pe.lowpt2.min(ek.lowpt2);
                    }
                }
                self.cursor[vi] += 1;
            }
        }
    }

    fn lowpt(&self, k: Ix) -> Ix {
        self.edge[k as usize].lowpt
    }

    fn conflicting(&self, i: &Interval, b: Ix) -> bool {
        !i.is_empty() && self.lowpt(i.high) > self.lowpt(b)
    }

    fn lowest(&self, p: &ConflictPair) -> Ix {
        if p.left.is_empty() && p.right.is_empty() {
            NONE
        } else if p.left.is_empty() {
            self.lowpt(p.right.low)
        } else if p.right.is_empty() {
            self.lowpt(p.left.low)
        } else {
            self.lowpt(p.left.low).min(self.lowpt(p.right.low))
        }
    }

    fn set_ref(&mut self, at: Ix, to: Ix) {
        if at != NONE {
            self.edge[at as usize].reference = to;
        }
    }

    fn test(&mut self, root: Ix) -> bool {
        self.dfs.push(root);
        while let Some(v) = self.dfs.pop() {
            let vi = v as usize;
            let e = self.parent_edge[vi];
            let hv = self.height[vi];
            let (first, end) = (self.out_start[vi], self.out_start[vi + 1]);
            let mut descended = false;
            while self.cursor[vi] < end {
                let k = self.out[self.cursor[vi] as usize];
                let ki = k as usize;
                if !self.edge[ki].skip {
                    let w = self.edge[ki].target;
                    self.edge[ki].stack_bottom = self.conflicts.len() as Ix;
                    if k == self.parent_edge[w as usize] {
                        self.edge[ki].skip = true;
                        self.dfs.push(v);
                        self.dfs.push(w);
                        descended = true;
                        break;
                    }
                    self.edge[ki].lowpt_edge = k;
                    self.conflicts.push(ConflictPair {
                        left: Interval::EMPTY,
                        right: Interval { low: k, high: k },
                    });
                }
                if self.edge[ki].lowpt < hv {
                    if self.cursor[vi] == first {
                        self.edge[e as usize].lowpt_edge = self.edge[ki].lowpt_edge;
                    } else if !self.add_constraints(k, e) {
                        return false;
                    }
                }
                self.cursor[vi] += 1;
            }
            if !descended && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: Ix, e: Ix) -> bool {
        let mut p = ConflictPair::EMPTY;
        let bottom = self.edge[ei as usize].stack_bottom as usize;
        // merge the return edges of ei into p.right
        loop {
            let Some(mut q) = self.conflicts.pop() else {
                break;
            };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt(q.right.low) > self.lowpt(e) {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                let le = self.edge[e as usize].lowpt_edge;
                self.set_ref(q.right.low, le);
            }
            if self.conflicts.len() == bottom {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.conflicts.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.conflicts.pop().expect("top exists");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.conflicts.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: Ix) {
        let u = self.edge[e as usize].source;
        let hu = self.height[u as usize];
        while let Some(top) = self.conflicts.last() {
            if self.lowest(top) != hu {
                break;
            }
            self.conflicts.pop();
        }
        if let Some(mut p) = self.conflicts.pop() {
            while p.left.high != NONE && self.edge[p.left.high as usize].target == u {
                p.left.high = self.edge[p.left.high as usize].reference;
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.edge[p.left.low as usize].reference = p.right.low;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.edge[p.right.high as usize].target == u {
                p.right.high = self.edge[p.right.high as usize].reference;
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.edge[p.right.low as usize].reference = p.left.low;
                p.right.low = NONE;
            }
            self.conflicts.push(p);
        }
        if self.lowpt(e) < hu {
            if let Some(top) = self.conflicts.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                self.edge[e as usize].reference =
                    if hl != NONE && (hr == NONE || self.lowpt(hl) > self.lowpt(hr)) {
                        hl
                    } else {
                        hr
                    };
            }
        }
    }
}

/// One-shot planarity test of a simple graph on `0..n`.
pub fn is_planar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    LrTester::new().is_planar(n, edges)
}
