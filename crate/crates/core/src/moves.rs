//! Local topological moves on a [`Triangulation`].
//!
//! | move | effect |
//! |------|--------|
//! | T2   | insert a vertex inside a face |
//! | T2⁻¹ | remove a degree-3 vertex |
//! | T1   | flip the shared edge of two adjacent faces |
//! | A    | insert a vertex inside a plaquette, dropping its shared edge |
//! | A⁻¹  | remove a degree-4 vertex, restoring one diagonal |
//! | S    | permute the labels of a 4-clique |
//!
//! Every move validates its preconditions before touching the graph, so a
//! failed call leaves the triangulation unchanged. Each returns a
//! [`MoveRecord`] whose `gain` is the change in total weight under the
//! oracle passed in.

use crate::error::{Error, Result};
use crate::graph::{Edge, Face, Triangulation, VertexId};
use crate::scores::WeightOracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    T2,
    T2Inverse,
    T1,
    A,
    AInverse,
    S,
}

/// What a move touched and how much weight it gained.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveRecord {
    pub kind: MoveKind,
    /// Vertices named by the move, in the order the move uses them.
    pub vertices: Vec<VertexId>,
    pub removed_edges: Vec<Edge>,
    pub added_edges: Vec<Edge>,
    pub removed_faces: Vec<Face>,
    pub added_faces: Vec<Face>,
    pub gain: f64,
}

/// Result of a T2 insertion.
#[derive(Debug, Clone, PartialEq)]
pub struct T2Outcome {
    /// `t ∪ {v}`, sorted.
    pub clique: [VertexId; 4],
    /// The consumed face `t`.
    pub separator: Face,
    /// `{a,b,v}`, `{a,c,v}`, `{b,c,v}` for `t = {a,b,c}`.
    pub faces: [Face; 3],
    pub record: MoveRecord,
}

/// A permutation of four vertices, `from[i] ↦ to[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relabeling {
    pub from: [VertexId; 4],
    pub to: [VertexId; 4],
}

impl Relabeling {
    pub fn identity(clique: [VertexId; 4]) -> Self {
        Relabeling {
            from: clique,
            to: clique,
        }
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        match self.from.iter().position(|&x| x == v) {
            Some(i) => self.to[i],
            None => v,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.from == self.to
    }
}

/// Result of an S move.
#[derive(Debug, Clone, PartialEq)]
pub struct SOutcome {
    pub relabeling: Relabeling,
    pub record: MoveRecord,
}

/// Inserts `v` inside face `t`.
pub fn apply_t2(
    tri: &mut Triangulation,
    v: VertexId,
    t: Face,
    w: &WeightOracle,
) -> Result<T2Outcome> {
    tri.check_range(v)?;
    if tri.is_inserted(v) {
        return Err(Error::AlreadyInserted(v));
    }
    if !tri.has_face(&t) {
        return Err(Error::NotAFace(t));
    }
    let [a, b, c] = t.vertices();
    tri.mark_inserted(v);
    tri.remove_face(&t);
    for x in [a, b, c] {
        tri.add_edge(v, x);
    }
    let faces = [Face::new(a, b, v), Face::new(a, c, v), Face::new(b, c, v)];
    for f in faces {
        tri.add_face(f);
    }
    let gain = w.weight(v, a) + w.weight(v, b) + w.weight(v, c);
    Ok(T2Outcome {
        clique: t.with(v),
        separator: t,
        faces,
        record: MoveRecord {
            kind: MoveKind::T2,
            vertices: vec![v, a, b, c],
            removed_edges: Vec::new(),
            added_edges: vec![Edge::new(v, a), Edge::new(v, b), Edge::new(v, c)],
            removed_faces: vec![t],
            added_faces: faces.to_vec(),
            gain,
        },
    })
}

/// Removes the degree-3 vertex `v`, restoring the face of its neighbours.
pub fn apply_t2_inverse(
    tri: &mut Triangulation,
    v: VertexId,
    w: &WeightOracle,
) -> Result<MoveRecord> {
    tri.check_range(v)?;
    if !tri.is_inserted(v) {
        return Err(Error::NotInserted(v));
    }
    let degree = tri.degree(v);
    if degree != 3 {
        return Err(Error::WrongDegree {
            vertex: v,
            degree,
            expected: 3,
        });
    }
    if tri.inserted_count() <= 4 {
        return Err(Error::BelowMinimumSize(v));
    }
    let ns: Vec<VertexId> = tri.neighbors(v).collect();
    let (a, b, c) = (ns[0], ns[1], ns[2]);
    let old = [Face::new(a, b, v), Face::new(a, c, v), Face::new(b, c, v)];
    if let Some(f) = old.iter().find(|f| !tri.has_face(f)) {
        return Err(Error::NotAFace(*f));
    }
    let restored = Face::new(a, b, c);
    if tri.has_face(&restored) {
        return Err(Error::Internal(format!(
            "{restored} is already a face around {v}"
        )));
    }
    for f in &old {
        tri.remove_face(f);
    }
    for x in [a, b, c] {
        tri.remove_edge(v, x);
    }
    tri.unmark_inserted(v);
    tri.add_face(restored);
    let gain = -(w.weight(v, a) + w.weight(v, b) + w.weight(v, c));
    Ok(MoveRecord {
        kind: MoveKind::T2Inverse,
        vertices: vec![v, a, b, c],
        removed_edges: vec![Edge::new(v, a), Edge::new(v, b), Edge::new(v, c)],
        added_edges: Vec::new(),
        removed_faces: old.to_vec(),
        added_faces: vec![restored],
        gain,
    })
}

/// The two faces on `e` and their vertices opposite `e`, in face order.
pub fn plaquette(tri: &Triangulation, e: Edge) -> Result<([Face; 2], [VertexId; 2])> {
    if !tri.has_edge(e.low(), e.high()) {
        return Err(Error::MovePrecondition {
            edge: e,
            reason: "edge is not present",
        });
    }
    let faces = tri.faces_on_edge(e);
    if faces.len() != 2 {
        return Err(Error::MovePrecondition {
            edge: e,
            reason: "edge does not lie in exactly two faces",
        });
    }
    let fs = [faces[0], faces[1]];
    Ok((fs, [fs[0].opposite(e), fs[1].opposite(e)]))
}

/// Why a T1 flip of `e` is impossible, if it is.
pub fn t1_blocker(tri: &Triangulation, e: Edge) -> Option<Error> {
    let (_, [x, y]) = match plaquette(tri, e) {
        Ok(p) => p,
        Err(err) => return Some(err),
    };
    if tri.has_edge(x, y) {
        return Some(Error::MovePrecondition {
            edge: e,
            reason: "opposite vertices are already adjacent",
        });
    }
    if tri.degree(e.low()) < 4 || tri.degree(e.high()) < 4 {
        return Some(Error::MovePrecondition {
            edge: e,
            reason: "an endpoint has degree below 4",
        });
    }
    None
}

/// Gain of flipping `e`, or `None` when the flip is not allowed.
pub fn t1_gain(tri: &Triangulation, e: Edge, w: &WeightOracle) -> Option<f64> {
    if t1_blocker(tri, e).is_some() {
        return None;
    }
    let (_, [x, y]) = plaquette(tri, e).ok()?;
    Some(w.weight(x, y) - w.weight(e.low(), e.high()))
}

/// Replaces the shared edge `(v1, v3)` of faces `{v1,v2,v3}`, `{v1,v3,v4}`
/// with `(v2, v4)`.
pub fn apply_t1(tri: &mut Triangulation, e: Edge, w: &WeightOracle) -> Result<MoveRecord> {
    if let Some(err) = t1_blocker(tri, e) {
        return Err(err);
    }
    let ([f1, f2], [x, y]) = plaquette(tri, e)?;
    let (v1, v3) = e.endpoints();
    tri.remove_face(&f1);
    tri.remove_face(&f2);
    tri.remove_edge(v1, v3);
    tri.add_edge(x, y);
    let new = [Face::new(v1, x, y), Face::new(v3, x, y)];
    for f in new {
        tri.add_face(f);
    }
    Ok(MoveRecord {
        kind: MoveKind::T1,
        vertices: vec![v1, x, v3, y],
        removed_edges: vec![e],
        added_edges: vec![Edge::new(x, y)],
        removed_faces: vec![f1, f2],
        added_faces: new.to_vec(),
        gain: w.weight(x, y) - w.weight(v1, v3),
    })
}

/// Why an A insertion on `e` is impossible, if it is (vertex checks aside).
pub fn a_blocker(tri: &Triangulation, e: Edge) -> Option<Error> {
    if let Err(err) = plaquette(tri, e) {
        return Some(err);
    }
    if tri.degree(e.low()) < 4 || tri.degree(e.high()) < 4 {
        return Some(Error::MovePrecondition {
            edge: e,
            reason: "an endpoint has degree below 4",
        });
    }
    None
}

/// Inserts `v` inside the plaquette around `e` and removes `e`.
pub fn apply_a(
    tri: &mut Triangulation,
    e: Edge,
    v: VertexId,
    w: &WeightOracle,
) -> Result<MoveRecord> {
    tri.check_range(v)?;
    if tri.is_inserted(v) {
        return Err(Error::AlreadyInserted(v));
    }
    if let Some(err) = a_blocker(tri, e) {
        return Err(err);
    }
    let ([f1, f2], [x, y]) = plaquette(tri, e)?;
    let (v1, v3) = e.endpoints();
    tri.mark_inserted(v);
    tri.remove_face(&f1);
    tri.remove_face(&f2);
    tri.remove_edge(v1, v3);
    for u in [v1, x, v3, y] {
        tri.add_edge(v, u);
    }
    let new = [
        Face::new(v1, x, v),
        Face::new(x, v3, v),
        Face::new(v3, y, v),
        Face::new(y, v1, v),
    ];
    for f in new {
        tri.add_face(f);
    }
    let gain = w.weight(v, v1) + w.weight(v, x) + w.weight(v, v3) + w.weight(v, y)
        - w.weight(v1, v3);
    Ok(MoveRecord {
        kind: MoveKind::A,
        vertices: vec![v, v1, x, v3, y],
        removed_edges: vec![e],
        added_edges: vec![
            Edge::new(v, v1),
            Edge::new(v, x),
            Edge::new(v, v3),
            Edge::new(v, y),
        ],
        removed_faces: vec![f1, f2],
        added_faces: new.to_vec(),
        gain,
    })
}

/// The neighbours of a degree-4 vertex in cyclic order, starting from the
/// smallest and continuing to its smaller cycle neighbour.
fn four_cycle(tri: &Triangulation, v: VertexId) -> Result<[VertexId; 4]> {
    let faces = tri.faces_at(v);
    let broken = || Error::Internal(format!("faces around {v} do not form a 4-cycle"));
    if faces.len() != 4 {
        return Err(broken());
    }
    let pairs: Vec<(VertexId, VertexId)> = faces
        .iter()
        .map(|f| {
            let [a, b] = f
                .vertices()
                .into_iter()
                .filter(|&x| x != v)
                .collect::<Vec<_>>()
                .try_into()
                .expect("face around v has two other vertices");
            (a, b)
        })
        .collect();
    let ns: Vec<VertexId> = tri.neighbors(v).collect();
    let mates = |x: VertexId| -> Vec<VertexId> {
        let mut m: Vec<VertexId> = pairs
            .iter()
            .filter_map(|&(a, b)| {
                if a == x {
                    Some(b)
                } else if b == x {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        m.sort_unstable();
        m
    };
    let n1 = ns[0];
    let m1 = mates(n1);
    if m1.len() != 2 {
        return Err(broken());
    }
    let (n2, n4) = (m1[0], m1[1]);
    let n3 = *ns
        .iter()
        .find(|&&x| x != n1 && x != n2 && x != n4)
        .ok_or_else(broken)?;
    if mates(n3) != {
        let mut s = vec![n2, n4];
        s.sort_unstable();
        s
    } {
        return Err(broken());
    }
    Ok([n1, n2, n3, n4])
}

/// Removes the degree-4 vertex `v` and closes the hole with whichever absent
/// diagonal of its neighbour cycle weighs more (ties: smaller vertex pair).
pub fn apply_a_inverse(
    tri: &mut Triangulation,
    v: VertexId,
    w: &WeightOracle,
) -> Result<MoveRecord> {
    tri.check_range(v)?;
    if !tri.is_inserted(v) {
        return Err(Error::NotInserted(v));
    }
    let degree = tri.degree(v);
    if degree != 4 {
        return Err(Error::WrongDegree {
            vertex: v,
            degree,
            expected: 4,
        });
    }
    if tri.inserted_count() <= 4 {
        return Err(Error::BelowMinimumSize(v));
    }
    let [n1, n2, n3, n4] = four_cycle(tri, v)?;
    let d13 = Edge::new(n1, n3);
    let d24 = Edge::new(n2, n4);
    let open: Vec<Edge> = [d13, d24]
        .into_iter()
        .filter(|d| !tri.has_edge(d.low(), d.high()))
        .collect();
    let diagonal = match open.as_slice() {
        [] => {
            return Err(Error::MovePrecondition {
                edge: d13,
                reason: "both diagonals of the neighbour cycle are present",
            })
        }
        [d] => *d,
        _ => {
            let (wa, wb) = (w.weight(n1, n3), w.weight(n2, n4));
            if wa > wb || (wa == wb && d13 < d24) {
                d13
            } else {
                d24
            }
        }
    };
    let old: Vec<Face> = tri.faces_at(v).to_vec();
    for f in &old {
        tri.remove_face(f);
    }
    let removed_edges: Vec<Edge> = [n1, n2, n3, n4].iter().map(|&x| Edge::new(v, x)).collect();
    let mut gain = 0.0;
    for x in [n1, n2, n3, n4] {
        tri.remove_edge(v, x);
        gain -= w.weight(v, x);
    }
    tri.unmark_inserted(v);
    let (a, b) = diagonal.endpoints();
    tri.add_edge(a, b);
    gain += w.weight(a, b);
    let (c, d) = if diagonal == d13 { (n2, n4) } else { (n1, n3) };
    let new = [Face::new(a, b, c), Face::new(a, b, d)];
    for f in new {
        tri.add_face(f);
    }
    let mut removed_faces = old;
    removed_faces.sort_unstable();
    Ok(MoveRecord {
        kind: MoveKind::AInverse,
        vertices: vec![v, n1, n2, n3, n4],
        removed_edges,
        added_edges: vec![diagonal],
        removed_faces,
        added_faces: new.to_vec(),
        gain,
    })
}

/// All 24 permutations of `0..4` in lexicographic order.
pub fn permutations4() -> [[usize; 4]; 24] {
    let mut out = [[0; 4]; 24];
    let mut k = 0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if a == b || a == c || b == c {
                    continue;
                }
                out[k] = [a, b, c, 6 - a - b - c];
                k += 1;
            }
        }
    }
    out
}

fn check_clique(tri: &Triangulation, clique: &[VertexId; 4]) -> Result<()> {
    for i in 0..4 {
        tri.check_range(clique[i])?;
        for j in i + 1..4 {
            if !tri.has_edge(clique[i], clique[j]) {
                return Err(Error::InvalidRelabeling(format!(
                    "{:?} is not a 4-clique",
                    clique
                )));
            }
        }
    }
    Ok(())
}

/// `B[x][z] = Σ_{y ∈ N(clique[x]) \ clique} w(clique[z], y)`; the gain of
/// the permutation `π` is `Σ_x B[x][π(x)] − B[x][x]`.
pub fn s_gain_matrix(tri: &Triangulation, clique: &[VertexId; 4], w: &WeightOracle) -> [[f64; 4]; 4] {
    let mut b = [[0.0; 4]; 4];
    for (x, &cx) in clique.iter().enumerate() {
        for y in tri.neighbors(cx) {
            if clique.contains(&y) {
                continue;
            }
            for (z, &cz) in clique.iter().enumerate() {
                b[x][z] += w.weight(cz, y);
            }
        }
    }
    b
}

/// Gain of `clique[i] ↦ clique[perm[i]]` given its [`s_gain_matrix`].
pub fn s_gain(b: &[[f64; 4]; 4], perm: &[usize; 4]) -> f64 {
    (0..4).map(|x| b[x][perm[x]] - b[x][x]).sum()
}

/// Relabels the 4-clique `clique` by `clique[i] ↦ image[i]`. Edges inside
/// the clique stay put; every edge from `clique[i]` to an outside vertex is
/// re-attached to `image[i]`.
pub fn apply_s(
    tri: &mut Triangulation,
    clique: [VertexId; 4],
    image: [VertexId; 4],
    w: &WeightOracle,
) -> Result<SOutcome> {
    check_clique(tri, &clique)?;
    let mut a = clique;
    let mut b = image;
    a.sort_unstable();
    b.sort_unstable();
    if a != b || a.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::InvalidRelabeling(format!(
            "{image:?} is not a permutation of {clique:?}"
        )));
    }
    let relabeling = Relabeling {
        from: clique,
        to: image,
    };
    let mut removed_edges = Vec::new();
    let mut added_edges = Vec::new();
    let mut gain = 0.0;
    for (i, &x) in clique.iter().enumerate() {
        let fx = image[i];
        if fx == x {
            continue;
        }
        for y in tri.neighbors(x) {
            if clique.contains(&y) {
                continue;
            }
            removed_edges.push(Edge::new(x, y));
            added_edges.push(Edge::new(fx, y));
            gain += w.weight(fx, y) - w.weight(x, y);
        }
    }
    // An outside vertex only ever sees the clique through a bijection, so
    // re-routing cannot merge two edges; checked anyway in debug builds.
    debug_assert!({
        let mut s = added_edges.clone();
        s.sort_unstable();
        s.windows(2).all(|p| p[0] != p[1])
    });
    let (removed_faces, added_faces) = tri.relabel_complete_set(&clique, |v| relabeling.apply(v));
    removed_edges.sort_unstable();
    added_edges.sort_unstable();
    let mut vertices = clique.to_vec();
    vertices.extend_from_slice(&image);
    Ok(SOutcome {
        relabeling,
        record: MoveRecord {
            kind: MoveKind::S,
            vertices,
            removed_edges,
            added_edges,
            removed_faces,
            added_faces,
            gain,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::total_weight;

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    fn lcg_weights(p: usize, seed: u64) -> WeightOracle {
        let mut s = seed;
        WeightOracle::from_fn(p, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        })
        .unwrap()
    }

    fn ones(p: usize) -> WeightOracle {
        WeightOracle::from_fn(p, |_, _| 1.0).unwrap()
    }

    #[test]
    fn t2_into_face_replaces_it_by_three() {
        let w = ones(5);
        let mut t = Triangulation::from_tetrahedron(5, [v(1), v(2), v(3), v(0)]).unwrap();
        let out = apply_t2(&mut t, v(4), Face::new(1, 2, 3), &w).unwrap();
        assert!(!t.has_face(&Face::new(1, 2, 3)));
        for f in [Face::new(1, 2, 4), Face::new(1, 3, 4), Face::new(2, 3, 4)] {
            assert!(t.has_face(&f));
        }
        assert_eq!(out.clique, [v(1), v(2), v(3), v(4)]);
        assert_eq!(out.separator, Face::new(1, 2, 3));
        assert_eq!(t.edge_count(), 9);
        assert!(t.verify_sphere_triangulation().passed());
    }

    #[test]
    fn t2_errors() {
        let w = ones(6);
        let mut t = Triangulation::from_tetrahedron(6, [v(0), v(1), v(2), v(3)]).unwrap();
        assert_eq!(
            apply_t2(&mut t, v(2), Face::new(0, 1, 3), &w).unwrap_err(),
            Error::AlreadyInserted(v(2))
        );
        assert_eq!(
            apply_t2(&mut t, v(4), Face::new(0, 1, 5), &w).unwrap_err(),
            Error::NotAFace(Face::new(0, 1, 5))
        );
    }

    #[test]
    fn t2_inverse_restores_and_guards_minimum() {
        let w = lcg_weights(5, 3);
        let mut t = Triangulation::from_tetrahedron(5, [v(0), v(1), v(2), v(3)]).unwrap();
        assert_eq!(
            apply_t2_inverse(&mut t, v(0), &w).unwrap_err(),
            Error::BelowMinimumSize(v(0))
        );
        let before = t.clone();
        apply_t2(&mut t, v(4), Face::new(0, 2, 3), &w).unwrap();
        let r = apply_t2_inverse(&mut t, v(4), &w).unwrap();
        assert_eq!(t, before);
        let expected = -(w.weight(v(4), v(0)) + w.weight(v(4), v(2)) + w.weight(v(4), v(3)));
        assert_eq!(r.gain, expected);
    }

    #[test]
    fn t2_inverse_rejects_wrong_degree() {
        let w = ones(5);
        let mut t = Triangulation::from_tetrahedron(5, [v(0), v(1), v(2), v(3)]).unwrap();
        apply_t2(&mut t, v(4), Face::new(0, 1, 2), &w).unwrap();
        let err = apply_t2_inverse(&mut t, v(0), &w).unwrap_err();
        assert!(err.to_string().contains("vertex not inside a three-clique"));
    }

    /// Octahedron-like patch: K4 {0,1,2,3}, then 4 into {0,1,2}.
    fn five() -> Triangulation {
        let w = ones(8);
        let mut t = Triangulation::from_tetrahedron(8, [v(0), v(1), v(2), v(3)]).unwrap();
        apply_t2(&mut t, v(4), Face::new(0, 1, 2), &w).unwrap();
        t
    }

    #[test]
    fn t1_flips_the_diagonal_and_back() {
        let w = lcg_weights(8, 9);
        let mut t = five();
        // (0,1) lies in {0,1,3} and {0,1,4}; 3 and 4 are not adjacent
        let before = t.clone();
        let tw0 = total_weight(&t, &w).unwrap();
        let r = apply_t1(&mut t, Edge::new(0, 1), &w).unwrap();
        assert!(t.has_edge(v(3), v(4)) && !t.has_edge(v(0), v(1)));
        assert!(t.verify_sphere_triangulation().passed());
        let tw1 = total_weight(&t, &w).unwrap();
        assert!((r.gain - (tw1 - tw0)).abs() < 1e-12);
        apply_t1(&mut t, Edge::new(3, 4), &w).unwrap();
        assert_eq!(t, before);
    }

    #[test]
    fn t1_preconditions_are_named() {
        let w = ones(8);
        let mut t = five();
        // (0,4): faces {0,1,4},{0,2,4}; 1 and 2 adjacent
        let e = apply_t1(&mut t, Edge::new(0, 4), &w).unwrap_err();
        assert!(e.to_string().contains("already adjacent"), "{e}");
        // K4: every pair adjacent
        let mut k = Triangulation::from_tetrahedron(4, [v(0), v(1), v(2), v(3)]).unwrap();
        assert!(apply_t1(&mut k, Edge::new(0, 1), &ones(4)).is_err());
        assert!(apply_t1(&mut t, Edge::new(3, 4), &w)
            .unwrap_err()
            .to_string()
            .contains("not present"));
    }

    #[test]
    fn a_inserts_degree_four_vertex_and_inverse_restores() {
        let w = lcg_weights(8, 21);
        let mut t = five();
        let before = t.clone();
        let tw0 = total_weight(&t, &w).unwrap();
        let r = apply_a(&mut t, Edge::new(0, 1), v(5), &w).unwrap();
        assert_eq!(t.degree(v(5)), 4);
        assert!(!t.has_edge(v(0), v(1)));
        assert_eq!(t.edge_count(), before.edge_count() + 3);
        assert!(t.verify_sphere_triangulation().passed());
        let tw1 = total_weight(&t, &w).unwrap();
        assert!((r.gain - (tw1 - tw0)).abs() < 1e-12);
        // both diagonals (0,1) and (3,4) absent: the heavier is restored
        let back = apply_a_inverse(&mut t, v(5), &w).unwrap();
        let chosen = back.added_edges[0];
        let heavier = if w.weight(v(0), v(1)) >= w.weight(v(3), v(4)) {
            Edge::new(0, 1)
        } else {
            Edge::new(3, 4)
        };
        assert_eq!(chosen, heavier);
        if chosen == Edge::new(0, 1) {
            assert_eq!(t, before);
        }
    }

    #[test]
    fn a_with_equal_weights_gains_three() {
        let w = WeightOracle::from_fn(8, |_, _| 0.25).unwrap();
        let mut t = five();
        let r = apply_a(&mut t, Edge::new(0, 1), v(6), &w).unwrap();
        assert_eq!(r.gain, 0.75);
    }

    #[test]
    fn a_inverse_rejects_degree_three() {
        let w = ones(8);
        let mut t = five();
        assert!(matches!(
            apply_a_inverse(&mut t, v(4), &w),
            Err(Error::WrongDegree { expected: 4, .. })
        ));
    }

    #[test]
    fn permutations_are_distinct() {
        let ps = permutations4();
        let set: std::collections::BTreeSet<_> = ps.iter().collect();
        assert_eq!(set.len(), 24);
        assert_eq!(ps[0], [0, 1, 2, 3]);
    }

    #[test]
    fn s_identity_and_isolated_clique_gain_zero() {
        let w = lcg_weights(4, 5);
        let mut k = Triangulation::from_tetrahedron(4, [v(0), v(1), v(2), v(3)]).unwrap();
        let before = k.clone();
        let r = apply_s(&mut k, [v(0), v(1), v(2), v(3)], [v(3), v(2), v(0), v(1)], &w).unwrap();
        assert_eq!(r.record.gain, 0.0);
        assert_eq!(k, before);
        let w = lcg_weights(8, 5);
        let mut t = five();
        let before = t.clone();
        let q = [v(0), v(1), v(2), v(4)];
        let r = apply_s(&mut t, q, q, &w).unwrap();
        assert_eq!(r.record.gain, 0.0);
        assert_eq!(t, before);
    }

    #[test]
    fn s_swap_gain_matches_total_weight_delta() {
        let w = lcg_weights(8, 77);
        let mut t = five();
        let q = [v(0), v(1), v(2), v(4)];
        let image = [v(4), v(1), v(2), v(0)];
        let b = s_gain_matrix(&t, &q, &w);
        let tw0 = total_weight(&t, &w).unwrap();
        let r = apply_s(&mut t, q, image, &w).unwrap();
        let tw1 = total_weight(&t, &w).unwrap();
        assert!((r.record.gain - (tw1 - tw0)).abs() < 1e-12);
        assert!((s_gain(&b, &[3, 1, 2, 0]) - r.record.gain).abs() < 1e-12);
        // vertex 3 used to see 0; now sees 4 instead
        assert!(t.has_edge(v(3), v(4)) && !t.has_edge(v(3), v(0)));
        assert!(t.verify_sphere_triangulation().passed());
    }

    #[test]
    fn s_rejects_non_clique_and_non_permutation() {
        let w = ones(8);
        let mut t = five();
        assert!(apply_s(&mut t, [v(0), v(1), v(3), v(4)], [v(0), v(1), v(3), v(4)], &w).is_err());
        assert!(apply_s(&mut t, [v(0), v(1), v(2), v(4)], [v(0), v(0), v(2), v(4)], &w).is_err());
    }
}
