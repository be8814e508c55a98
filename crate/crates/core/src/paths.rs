//! Shortest paths with deterministic canonical tie-breaking, plus the
//! crossing-number and enclosure predicates.
//!
//! Ties between equal-length paths are broken by comparing
//! `(length, dart count, dart sequence read backwards)`. This order has two
//! properties the algorithms lean on: it is computable with O(1) comparisons
//! inside the priority queue (two distinct candidate paths into a vertex
//! always differ in their final dart), and it is subpath-consistent — the
//! canonical shortest `x -> y` path is a function of `(x, y)` alone, so trees
//! from different roots agree on shared stretches. That consistency is what
//! makes the selected paths behave like the unique shortest paths the
//! divide-and-conquer steps assume.

use crate::embed::{DartId, Embedding, FaceId, VertexId};
use crate::weight::Weight;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("vertex {0:?} is unreachable from the tree root")]
    Unreachable(VertexId),
}

/// A directed path as a dart sequence with its total finite length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedPath {
    pub darts: Vec<DartId>,
    pub length: Weight,
}

impl DirectedPath {
    pub fn empty() -> DirectedPath {
        DirectedPath {
            darts: Vec::new(),
            length: Weight::ZERO,
        }
    }

    /// Vertex sequence `v_0 .. v_k`; needs the embedding for incidences.
    pub fn vertices(&self, e: &Embedding) -> Vec<VertexId> {
        if self.darts.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.darts.len() + 1);
        out.push(e.tail(self.darts[0]));
        for &d in &self.darts {
            out.push(e.head(d));
        }
        out
    }
}

/// A directed cycle; may revisit vertices but never repeats a dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedCycle {
    pub darts: Vec<DartId>,
    pub length: Weight,
}

impl DirectedCycle {
    pub fn from_darts(e: &Embedding, darts: Vec<DartId>) -> DirectedCycle {
        let length = darts.iter().map(|&d| e.weight(d)).sum();
        DirectedCycle { darts, length }
    }
}

/// Shortest path tree under the canonical tie-break.
#[derive(Clone, Debug)]
pub struct ShortestPathTree {
    pub root: VertexId,
    pub parent_dart: Vec<Option<DartId>>,
    pub dist: Vec<Weight>,
    pub hops: Vec<u32>,
}

#[inline]
fn key(dist: Weight, hops: u32, dart: u32) -> u128 {
    ((dist.raw() as u128) << 64) | ((hops as u128) << 32) | dart as u128
}

/// Dijkstra from `root` over finite-weight darts.
///
/// The produced tree is the unique canonical shortest-path tree: two runs
/// from the same root are identical, and trees from different roots select
/// identical subpaths between shared vertex pairs.
pub fn dijkstra(e: &Embedding, root: VertexId) -> ShortestPathTree {
    dijkstra_impl(e, root, None)
}

fn dijkstra_impl(e: &Embedding, root: VertexId, banned: Option<DartId>) -> ShortestPathTree {
    let n = e.vertex_count();
    let mut dist = vec![Weight::INF; n];
    let mut hops = vec![u32::MAX; n];
    let mut parent: Vec<Option<DartId>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(u128, u32)>> = BinaryHeap::new();
    dist[root.index()] = Weight::ZERO;
    hops[root.index()] = 0;
    heap.push(Reverse((key(Weight::ZERO, 0, 0), root.0)));
    while let Some(Reverse((_, v))) = heap.pop() {
        let vi = v as usize;
        if done[vi] {
            continue;
        }
        done[vi] = true;
        let dv = dist[vi];
        let hv = hops[vi];
        for &d in e.rotation(VertexId(v)) {
            let w = e.weight(d);
            if w.is_inf() || Some(d) == banned {
                continue;
            }
            let u = e.head(d).index();
            if done[u] {
                continue;
            }
            let nd = dv + w;
            let nh = hv + 1;
            let better = match nd.cmp(&dist[u]) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => match nh.cmp(&hops[u]) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    // equal length and hop count: smaller final dart wins
                    std::cmp::Ordering::Equal => parent[u].map_or(false, |p| d < p),
                },
            };
            if better {
                dist[u] = nd;
                hops[u] = nh;
                parent[u] = Some(d);
                heap.push(Reverse((key(nd, nh, d.0), u as u32)));
            }
        }
    }
    ShortestPathTree {
        root,
        parent_dart: parent,
        dist,
        hops,
    }
}

/// Dijkstra with a single dart removed from the graph; used by cycle
/// searches that must not return along the closing arc's own edge.
pub fn dijkstra_excluding(e: &Embedding, root: VertexId, banned: DartId) -> ShortestPathTree {
    dijkstra_impl(e, root, Some(banned))
}

/// Root-to-`v` path along tree parent darts.
pub fn extract_path(
    e: &Embedding,
    t: &ShortestPathTree,
    v: VertexId,
) -> Result<DirectedPath, PathError> {
    if t.dist[v.index()].is_inf() {
        return Err(PathError::Unreachable(v));
    }
    let mut darts = Vec::new();
    let mut cur = v;
    while let Some(d) = t.parent_dart[cur.index()] {
        darts.push(d);
        cur = e.tail(d);
    }
    darts.reverse();
    Ok(DirectedPath {
        darts,
        length: t.dist[v.index()],
    })
}

/// Side of a dart relative to a walk's passage through a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A borrowed walk: a dart sequence, open or closed.
#[derive(Clone, Copy)]
pub struct WalkRef<'a> {
    pub darts: &'a [DartId],
    pub closed: bool,
}

impl<'a> WalkRef<'a> {
    pub fn path(p: &'a DirectedPath) -> WalkRef<'a> {
        WalkRef {
            darts: &p.darts,
            closed: false,
        }
    }

    pub fn cycle(c: &'a DirectedCycle) -> WalkRef<'a> {
        WalkRef {
            darts: &c.darts,
            closed: true,
        }
    }

    pub fn open(darts: &'a [DartId]) -> WalkRef<'a> {
        WalkRef {
            darts,
            closed: false,
        }
    }

    pub fn closed(darts: &'a [DartId]) -> WalkRef<'a> {
        WalkRef {
            darts,
            closed: true,
        }
    }

    fn positions(&self) -> usize {
        if self.closed {
            self.darts.len()
        } else {
            self.darts.len() + 1
        }
    }

    fn vertex(&self, e: &Embedding, i: usize) -> VertexId {
        if i < self.darts.len() {
            e.tail(self.darts[i])
        } else {
            debug_assert!(!self.closed);
            e.head(self.darts[i - 1])
        }
    }

    /// Dart leaving position `i`, if any.
    fn dart_out(&self, i: usize) -> Option<DartId> {
        if i < self.darts.len() {
            Some(self.darts[i])
        } else {
            None
        }
    }

    /// Dart entering position `i`, if any.
    fn dart_in(&self, i: usize) -> Option<DartId> {
        if i > 0 {
            Some(self.darts[i - 1])
        } else if self.closed {
            self.darts.last().copied()
        } else {
            None
        }
    }
}

pub(crate) fn side_of(e: &Embedding, a: DartId, b: DartId, x: DartId) -> Side {
    // Walking clockwise from `a`, darts found before `b` are on the walk's
    // left; the rest are on its right.
    debug_assert_eq!(e.tail(a), e.tail(b));
    debug_assert_eq!(e.tail(a), e.tail(x));
    debug_assert!(x != a && x != b, "side query for a dart on the walk");
    debug_assert!(a != b, "degenerate corner (immediate backtrack)");
    let mut cur = e.rot_next(a);
    while cur != b {
        if cur == x {
            return Side::Left;
        }
        cur = e.rot_next(cur);
    }
    Side::Right
}

/// Signed crossing number of walk `p` over walk `q`.
///
/// Contacts are grouped into maximal shared stretches (single vertices or
/// runs of shared undirected edges, in either direction). A stretch internal
/// to both walks counts +1 when `p` enters from `q`'s right and leaves to its
/// left, -1 for the opposite, and 0 when it stays on one side.
pub fn crossing_number(e: &Embedding, p: WalkRef<'_>, q: WalkRef<'_>) -> i64 {
    if p.darts.is_empty() || q.darts.is_empty() {
        return 0;
    }
    let np = p.positions();
    let nq = q.positions();

    // Index q's vertex visits.
    let mut q_at: std::collections::HashMap<VertexId, Vec<usize>> = std::collections::HashMap::new();
    for j in 0..nq {
        q_at.entry(q.vertex(e, j)).or_default().push(j);
    }
    let mut contacts: Vec<(usize, usize)> = Vec::new();
    for i in 0..np {
        if let Some(js) = q_at.get(&p.vertex(e, i)) {
            for &j in js {
                contacts.push((i, j));
            }
        }
    }
    if contacts.is_empty() {
        return 0;
    }
    let contact_set: std::collections::HashSet<(usize, usize)> = contacts.iter().copied().collect();

    let p_next = |i: usize| -> Option<usize> {
        if i + 1 < np {
            Some(i + 1)
        } else if p.closed {
            Some((i + 1) % np)
        } else {
            None
        }
    };
    let q_next = |j: usize| -> Option<usize> {
        if j + 1 < nq {
            Some(j + 1)
        } else if q.closed {
            Some((j + 1) % nq)
        } else {
            None
        }
    };
    let q_prev = |j: usize| -> Option<usize> {
        if j > 0 {
            Some(j - 1)
        } else if q.closed {
            Some(nq - 1)
        } else {
            None
        }
    };

    // Forward link: both walks traverse the same dart. Backward link: p
    // traverses the twin of the dart q used to arrive here.
    let link_out = |i: usize, j: usize| -> Option<(usize, usize)> {
        let pd = p.dart_out(i)?;
        let i2 = p_next(i)?;
        if let Some(qd) = q.dart_out(j) {
            if qd == pd {
                if let Some(j2) = q_next(j) {
                    if contact_set.contains(&(i2, j2)) {
                        return Some((i2, j2));
                    }
                }
            }
        }
        if let Some(qd) = q.dart_in(j) {
            if qd.twin() == pd {
                if let Some(j2) = q_prev(j) {
                    if contact_set.contains(&(i2, j2)) {
                        return Some((i2, j2));
                    }
                }
            }
        }
        None
    };
    let has_link_in = |i: usize, j: usize| -> bool {
        // Mirror of link_out from the predecessor's point of view.
        let i1 = if i > 0 {
            i - 1
        } else if p.closed {
            np - 1
        } else {
            return false;
        };
        if let Some(pd) = p.dart_out(i1) {
            if let Some(j1) = q_prev(j) {
                if q.dart_out(j1) == Some(pd) && contact_set.contains(&(i1, j1)) {
                    return true;
                }
            }
            if let Some(j1) = q_next(j) {
                if q.dart_in(j1).map(DartId::twin) == Some(pd) && contact_set.contains(&(i1, j1)) {
                    return true;
                }
            }
        }
        false
    };

    let mut total = 0i64;
    for &(i0, j0) in &contacts {
        if has_link_in(i0, j0) {
            continue; // not the start of its stretch
        }
        // Walk the stretch to its end.
        let (mut i1, mut j1) = (i0, j0);
        let mut guard = 0usize;
        while let Some((i2, j2)) = link_out(i1, j1) {
            i1 = i2;
            j1 = j2;
            guard += 1;
            if guard > np + nq {
                break; // cyclic overlap; cannot cross
            }
        }
        if guard > np + nq {
            continue;
        }
        // Internal to p?
        let p_in = p.dart_in(i0);
        let p_out = p.dart_out(i1);
        let (p_in, p_out) = match (p_in, p_out) {
            (Some(a), Some(b)) => (a, b),
            _ => continue, // touches an endpoint of p
        };
        // Internal to q? Both boundary corners need q's passage darts.
        let q_entry = (q.dart_in(j0), q.dart_out(j0));
        let q_exit = (q.dart_in(j1), q.dart_out(j1));
        let ((qe_in, qe_out), (qx_in, qx_out)) = match (q_entry, q_exit) {
            ((Some(a), Some(b)), (Some(c), Some(d))) => ((a, b), (c, d)),
            _ => continue, // touches an endpoint of q
        };
        let s_in = side_of(e, qe_in.twin(), qe_out, p_in.twin());
        let s_out = side_of(e, qx_in.twin(), qx_out, p_out);
        if s_in != s_out {
            total += if s_in == Side::Right { 1 } else { -1 };
        }
    }
    total
}

/// Per-face enclosure parity of a closed walk: `true` for faces an arc from
/// the infinite face can only reach by crossing the walk an odd number of
/// times. Computed by a parity-labelled face search; only the walk's
/// edge multiplicities matter, so cyclic rotations of the dart list are
/// equivalent.
pub fn face_enclosure_parity(e: &Embedding, c: &[DartId]) -> Vec<bool> {
    let mut mult = vec![false; e.edge_count()];
    for &d in c {
        mult[d.edge()] ^= true;
    }
    let mut parity = vec![false; e.face_count()];
    let mut seen = vec![false; e.face_count()];
    let start = e.infinite_face();
    seen[start.index()] = true;
    let mut stack = vec![start];
    while let Some(f) = stack.pop() {
        for d in e.face_darts(f) {
            let g = e.face_of(d.twin());
            if !seen[g.index()] {
                seen[g.index()] = true;
                parity[g.index()] = parity[f.index()] ^ mult[d.edge()];
                stack.push(g);
            }
        }
    }
    debug_assert!(seen.iter().all(|&s| s), "face graph is connected");
    parity
}

/// True iff the closed walk `c` encloses face `f`.
pub fn encloses(e: &Embedding, c: &[DartId], f: FaceId) -> bool {
    face_enclosure_parity(e, c)[f.index()]
}

/// Per-vertex enclosure parity of a closed walk drawn in the dual plane:
/// stepping across an edge flips the side exactly when the walk uses that
/// edge's darts an odd number of times. `anchor` is the reference vertex
/// assigned parity 0.
pub fn vertex_enclosure_parity(e: &Embedding, c: &[DartId], anchor: VertexId) -> Vec<bool> {
    let mut mult = vec![false; e.edge_count()];
    for &d in c {
        mult[d.edge()] ^= true;
    }
    let n = e.vertex_count();
    let mut parity = vec![false; n];
    let mut seen = vec![false; n];
    seen[anchor.index()] = true;
    let mut stack = vec![anchor];
    while let Some(v) = stack.pop() {
        for &d in e.rotation(v) {
            let u = e.head(d);
            if !seen[u.index()] {
                seen[u.index()] = true;
                parity[u.index()] = parity[v.index()] ^ mult[d.edge()];
                stack.push(u);
            }
        }
    }
    parity
}
