//! Combinatorial planar embeddings: rotation systems over darts.
//!
//! A graph is stored as a list of *darts* (directed half-edges). Edge `k`
//! yields darts `2k` and `2k+1`, which are mutual twins; `twin(d) = d ^ 1`.
//! Each vertex carries the cyclic order of its outgoing darts as drawn
//! *clockwise* in the plane. Faces are traced with
//! `next(d) = rotation-successor of twin(d) at head(d)`, which walks every
//! face with its interior on the left of each dart. Validation checks Euler's
//! formula `V - E + F = 2` per connected component, which certifies that the
//! supplied rotation system is planar.

use crate::weight::Weight;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DartId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl DartId {
    /// The opposite dart of the same edge.
    #[inline]
    pub fn twin(self) -> DartId {
        DartId(self.0 ^ 1)
    }

    /// Edge index; darts `2k` and `2k+1` belong to edge `k`.
    #[inline]
    pub fn edge(self) -> usize {
        (self.0 >> 1) as usize
    }

    /// True for the `u -> v` dart of its edge (even id).
    #[inline]
    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl FaceId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}
impl fmt::Debug for DartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}
impl fmt::Debug for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// One undirected embedded edge with independent directed weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub u: VertexId,
    pub v: VertexId,
    /// Weight of the `u -> v` dart.
    pub w_uv: Weight,
    /// Weight of the `v -> u` dart.
    pub w_vu: Weight,
}

impl EdgeSpec {
    pub fn new(u: u32, v: u32, w_uv: Weight, w_vu: Weight) -> EdgeSpec {
        EdgeSpec {
            u: VertexId(u),
            v: VertexId(v),
            w_uv,
            w_vu,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("rotation system violates Euler's formula: V={v} E={e} F={f} gives {characteristic}, expected 2 per component")]
    NonPlanarRotation {
        v: usize,
        e: usize,
        f: usize,
        characteristic: i64,
    },
    #[error("malformed rotation: {0}")]
    MalformedRotation(String),
    #[error("negative weight on edge {0}")]
    NegativeWeight(usize),
    #[error("self-loop {0:?} not allowed in input graphs")]
    SelfLoop(usize),
    #[error("parallel edge duplicating {0:?}-{1:?} not allowed in input graphs")]
    ParallelEdge(VertexId, VertexId),
    #[error("edge {0} is absent in both directions")]
    AbsentEdge(usize),
    #[error("input graph is not connected")]
    Disconnected,
}

/// A directed planar multigraph with a fixed combinatorial embedding.
///
/// Immutable after construction; all surgery operations build fresh
/// embeddings.
#[derive(Clone)]
pub struct Embedding {
    tail: Vec<VertexId>,
    weight: Vec<Weight>,
    /// Per-vertex rotation stored as CSR: darts of vertex `v` are
    /// `rot_darts[rot_offsets[v]..rot_offsets[v+1]]` in clockwise order.
    rot_offsets: Vec<u32>,
    rot_darts: Vec<DartId>,
    /// Position of each dart inside its vertex rotation.
    rot_pos: Vec<u32>,
    face_of: Vec<FaceId>,
    face_rep: Vec<DartId>,
    face_sides: Vec<u32>,
    infinite_face: FaceId,
}

impl Embedding {
    /// Builds and validates an embedding for an input graph.
    ///
    /// Input graphs are simple: self-loops and parallel edges are rejected.
    /// `rotations[v]` lists the outgoing darts of `v` in clockwise order and
    /// must cover every dart exactly once. `infinite_face_dart` designates the
    /// infinite face as the face of that dart, defaulting to the face of
    /// dart 0.
    pub fn build(
        vertex_count: usize,
        edges: &[EdgeSpec],
        rotations: &[Vec<DartId>],
        infinite_face_dart: Option<DartId>,
    ) -> Result<Embedding, EmbedError> {
        for (k, e) in edges.iter().enumerate() {
            if e.u == e.v {
                return Err(EmbedError::SelfLoop(k));
            }
            if e.w_uv.is_inf() && e.w_vu.is_inf() {
                return Err(EmbedError::AbsentEdge(k));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for e in edges {
            let key = (e.u.min(e.v), e.u.max(e.v));
            if !seen.insert(key) {
                return Err(EmbedError::ParallelEdge(key.0, key.1));
            }
        }
        let emb = Self::assemble(vertex_count, edges, rotations, infinite_face_dart)?;
        if !emb.is_connected() {
            return Err(EmbedError::Disconnected);
        }
        Ok(emb)
    }

    /// Builds an embedding without the input-graph simplicity restrictions.
    ///
    /// Internal surgery (duals, incisions, triangulation chords) produces
    /// self-loops and parallel edges freely; planarity is still certified via
    /// Euler's formula per connected component.
    pub(crate) fn assemble(
        vertex_count: usize,
        edges: &[EdgeSpec],
        rotations: &[Vec<DartId>],
        infinite_face_dart: Option<DartId>,
    ) -> Result<Embedding, EmbedError> {
        let dart_count = edges.len() * 2;
        if rotations.len() != vertex_count {
            return Err(EmbedError::MalformedRotation(format!(
                "expected {} rotation lists, got {}",
                vertex_count,
                rotations.len()
            )));
        }
        let mut tail = Vec::with_capacity(dart_count);
        let mut weight = Vec::with_capacity(dart_count);
        for (k, e) in edges.iter().enumerate() {
            if e.u.index() >= vertex_count || e.v.index() >= vertex_count {
                return Err(EmbedError::MalformedRotation(format!(
                    "edge {k} references a vertex out of range"
                )));
            }
            tail.push(e.u);
            tail.push(e.v);
            weight.push(e.w_uv);
            weight.push(e.w_vu);
        }

        let mut rot_offsets = Vec::with_capacity(vertex_count + 1);
        let mut rot_darts = Vec::with_capacity(dart_count);
        let mut rot_pos = vec![u32::MAX; dart_count];
        rot_offsets.push(0u32);
        for (v, rot) in rotations.iter().enumerate() {
            for (pos, &d) in rot.iter().enumerate() {
                if d.index() >= dart_count {
                    return Err(EmbedError::MalformedRotation(format!(
                        "dart {:?} out of range in rotation of v{}",
                        d, v
                    )));
                }
                if tail[d.index()].index() != v {
                    return Err(EmbedError::MalformedRotation(format!(
                        "dart {:?} has tail {:?} but appears in rotation of v{}",
                        d,
                        tail[d.index()],
                        v
                    )));
                }
                if rot_pos[d.index()] != u32::MAX {
                    return Err(EmbedError::MalformedRotation(format!(
                        "dart {:?} appears twice in rotations",
                        d
                    )));
                }
                rot_pos[d.index()] = pos as u32;
                rot_darts.push(d);
            }
            rot_offsets.push(rot_darts.len() as u32);
        }
        if rot_darts.len() != dart_count {
            return Err(EmbedError::MalformedRotation(format!(
                "rotations cover {} darts, expected {}",
                rot_darts.len(),
                dart_count
            )));
        }

        let mut emb = Embedding {
            tail,
            weight,
            rot_offsets,
            rot_darts,
            rot_pos,
            face_of: Vec::new(),
            face_rep: Vec::new(),
            face_sides: Vec::new(),
            infinite_face: FaceId(0),
        };
        emb.trace_faces();
        emb.check_euler()?;
        let inf_dart = infinite_face_dart.unwrap_or(DartId(0));
        if dart_count > 0 {
            if inf_dart.index() >= dart_count {
                return Err(EmbedError::MalformedRotation(format!(
                    "infinite face dart {:?} out of range",
                    inf_dart
                )));
            }
            emb.infinite_face = emb.face_of[inf_dart.index()];
        }
        Ok(emb)
    }

    fn trace_faces(&mut self) {
        let n = self.dart_count();
        let mut face_of = vec![FaceId(u32::MAX); n];
        let mut face_rep = Vec::new();
        let mut face_sides = Vec::new();
        for start in 0..n {
            if face_of[start].0 != u32::MAX {
                continue;
            }
            let id = FaceId(face_rep.len() as u32);
            face_rep.push(DartId(start as u32));
            let mut sides = 0u32;
            let mut d = DartId(start as u32);
            loop {
                debug_assert_eq!(face_of[d.index()].0, u32::MAX);
                face_of[d.index()] = id;
                sides += 1;
                d = self.face_next(d);
                if d.index() == start {
                    break;
                }
            }
            face_sides.push(sides);
        }
        self.face_of = face_of;
        self.face_rep = face_rep;
        self.face_sides = face_sides;
    }

    fn check_euler(&self) -> Result<(), EmbedError> {
        // Euler characteristic per skeleton component; faces are attributed
        // to the component of their representative dart.
        let n = self.vertex_count();
        if n == 0 {
            return Ok(());
        }
        let mut comp = vec![u32::MAX; n];
        let mut comps = 0u32;
        for s in 0..n {
            if comp[s] != u32::MAX {
                continue;
            }
            let id = comps;
            comps += 1;
            let mut stack = vec![s];
            comp[s] = id;
            while let Some(v) = stack.pop() {
                for &d in self.rotation(VertexId(v as u32)) {
                    let h = self.head(d).index();
                    if comp[h] == u32::MAX {
                        comp[h] = id;
                        stack.push(h);
                    }
                }
            }
        }
        let mut vs = vec![0i64; comps as usize];
        let mut es = vec![0i64; comps as usize];
        let mut fs = vec![0i64; comps as usize];
        for v in 0..n {
            vs[comp[v] as usize] += 1;
        }
        for k in 0..self.edge_count() {
            es[comp[self.tail(DartId((2 * k) as u32)).index()] as usize] += 1;
        }
        for f in 0..self.face_count() {
            let rep = self.face_rep[f];
            fs[comp[self.tail(rep).index()] as usize] += 1;
        }
        for c in 0..comps as usize {
            let characteristic = vs[c] - es[c] + fs[c];
            if characteristic != 2 {
                return Err(EmbedError::NonPlanarRotation {
                    v: vs[c] as usize,
                    e: es[c] as usize,
                    f: fs[c] as usize,
                    characteristic,
                });
            }
        }
        Ok(())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.rot_offsets.len() - 1
    }

    #[inline]
    pub fn dart_count(&self) -> usize {
        self.tail.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.tail.len() / 2
    }

    #[inline]
    pub fn face_count(&self) -> usize {
        self.face_rep.len()
    }

    #[inline]
    pub fn tail(&self, d: DartId) -> VertexId {
        self.tail[d.index()]
    }

    #[inline]
    pub fn head(&self, d: DartId) -> VertexId {
        self.tail[d.index() ^ 1]
    }

    #[inline]
    pub fn weight(&self, d: DartId) -> Weight {
        self.weight[d.index()]
    }

    #[inline]
    pub fn face_of(&self, d: DartId) -> FaceId {
        self.face_of[d.index()]
    }

    #[inline]
    pub fn infinite_face(&self) -> FaceId {
        self.infinite_face
    }

    #[inline]
    pub fn face_sides(&self, f: FaceId) -> u32 {
        self.face_sides[f.index()]
    }

    /// Any dart on the boundary of `f`.
    #[inline]
    pub fn face_dart(&self, f: FaceId) -> DartId {
        self.face_rep[f.index()]
    }

    /// Outgoing darts of `v` in clockwise order.
    #[inline]
    pub fn rotation(&self, v: VertexId) -> &[DartId] {
        let a = self.rot_offsets[v.index()] as usize;
        let b = self.rot_offsets[v.index() + 1] as usize;
        &self.rot_darts[a..b]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    /// Clockwise successor of `d` around its tail.
    #[inline]
    pub fn rot_next(&self, d: DartId) -> DartId {
        let v = self.tail(d).index();
        let a = self.rot_offsets[v] as usize;
        let b = self.rot_offsets[v + 1] as usize;
        let pos = a + self.rot_pos[d.index()] as usize;
        debug_assert_eq!(self.rot_darts[pos], d);
        if pos + 1 == b {
            self.rot_darts[a]
        } else {
            self.rot_darts[pos + 1]
        }
    }

    /// Clockwise predecessor of `d` around its tail.
    #[inline]
    pub fn rot_prev(&self, d: DartId) -> DartId {
        let v = self.tail(d).index();
        let a = self.rot_offsets[v] as usize;
        let b = self.rot_offsets[v + 1] as usize;
        let pos = a + self.rot_pos[d.index()] as usize;
        if pos == a {
            self.rot_darts[b - 1]
        } else {
            self.rot_darts[pos - 1]
        }
    }

    /// Next dart along the face left of `d`.
    #[inline]
    pub fn face_next(&self, d: DartId) -> DartId {
        self.rot_next(d.twin())
    }

    /// Darts of the face `f` in boundary order.
    pub fn face_darts(&self, f: FaceId) -> Vec<DartId> {
        let start = self.face_rep[f.index()];
        let mut out = Vec::with_capacity(self.face_sides[f.index()] as usize);
        let mut d = start;
        loop {
            out.push(d);
            d = self.face_next(d);
            if d == start {
                break;
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in self.rotation(VertexId(v as u32)) {
                let h = self.head(d).index();
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    stack.push(h);
                }
            }
        }
        count == n
    }

    /// Edge list in dart order; useful for rebuilding derived graphs.
    pub fn edge_specs(&self) -> Vec<EdgeSpec> {
        (0..self.edge_count())
            .map(|k| {
                let d = DartId((2 * k) as u32);
                EdgeSpec {
                    u: self.tail(d),
                    v: self.head(d),
                    w_uv: self.weight(d),
                    w_vu: self.weight(d.twin()),
                }
            })
            .collect()
    }

    /// Rotation lists in the input format.
    pub fn rotation_lists(&self) -> Vec<Vec<DartId>> {
        (0..self.vertex_count())
            .map(|v| self.rotation(VertexId(v as u32)).to_vec())
            .collect()
    }

    /// Sum of all finite dart weights.
    pub fn finite_weight_mass(&self) -> u64 {
        self.weight
            .iter()
            .filter_map(|w| w.value())
            .fold(0u64, |a, b| a.saturating_add(b))
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Embedding(V={} E={} F={})",
            self.vertex_count(),
            self.edge_count(),
            self.face_count()
        )
    }
}

/// The planar dual of an embedding.
///
/// Dual vertices are primal faces and keep their ids; dart ids are shared
/// with the primal: the dual dart `d` points from the face left of primal `d`
/// to the face right of it and carries the primal dart's weight. Dual faces
/// correspond to primal vertices via `face_vertex`.
pub struct DualEmbedding {
    pub embedding: Embedding,
    /// Primal vertex corresponding to each dual face.
    pub face_vertex: Vec<VertexId>,
}

impl DualEmbedding {
    /// Dual dart ids coincide with primal dart ids.
    #[inline]
    pub fn primal_of(&self, d: DartId) -> DartId {
        d
    }

    /// The dual face sitting at a primal vertex.
    pub fn dual_face_at(&self, v: VertexId) -> FaceId {
        let f = self
            .face_vertex
            .iter()
            .position(|&w| w == v)
            .expect("every primal vertex is a dual face");
        FaceId(f as u32)
    }
}

/// Builds the dual embedding.
///
/// The rotation of a dual vertex (a primal face) is its boundary orbit, so
/// dual-of-dual recovers the primal rotation system exactly, up to renaming
/// vertices by face-trace order.
pub fn dual(e: &Embedding) -> DualEmbedding {
    let edges: Vec<EdgeSpec> = (0..e.edge_count())
        .map(|k| {
            let d = DartId((2 * k) as u32);
            EdgeSpec {
                u: VertexId(e.face_of(d).0),
                v: VertexId(e.face_of(d.twin()).0),
                w_uv: e.weight(d),
                w_vu: e.weight(d.twin()),
            }
        })
        .collect();
    let rotations: Vec<Vec<DartId>> = (0..e.face_count())
        .map(|f| e.face_darts(FaceId(f as u32)))
        .collect();
    // The infinite face of the dual is the dual face at the tail of the
    // primal infinite face's representative dart. Any anchor would do:
    // enclosure consumers orient themselves by cycle darts, not the anchor.
    let anchor = e.face_dart(e.infinite_face());
    let emb = Embedding::assemble(e.face_count(), &edges, &rotations, Some(anchor))
        .expect("dual of a valid connected embedding is valid");
    let face_vertex: Vec<VertexId> = (0..emb.face_count())
        .map(|f| e.tail(emb.face_dart(FaceId(f as u32))))
        .collect();
    DualEmbedding {
        embedding: emb,
        face_vertex,
    }
}

/// Dual weighted for cut capacities: absent primal arcs cross for free.
///
/// A directed cut pays only for the arcs it severs, so the dual cycle whose
/// length equals a cut's capacity must cross a missing arc direction at cost
/// zero rather than `INF`.
pub fn cut_dual(e: &Embedding) -> DualEmbedding {
    let mut d = dual(e);
    for w in d.embedding.weight.iter_mut() {
        *w = w.cut_cost();
    }
    d
}

/// Result of triangulating an embedding with infinite-weight chords.
pub struct Triangulation {
    pub embedding: Embedding,
    /// Original dart for each output dart; `None` for added chords.
    pub dart_origin: Vec<Option<DartId>>,
}

impl Triangulation {
    #[inline]
    pub fn origin(&self, d: DartId) -> Option<DartId> {
        self.dart_origin[d.index()]
    }
}

/// Adds infinite-weight chords until every face has at most three sides.
///
/// Faces of one or two sides (self-loops and digons, which only arise in
/// derived graphs) cannot be reduced by chords and are left alone; the
/// balance argument for separators only needs faces of at most three sides.
/// Already-triangulated embeddings come back unchanged.
pub fn triangulate_infinite(e: &Embedding) -> Triangulation {
    let mut edges = e.edge_specs();
    // Rotations as growable per-vertex lists we can splice chords into.
    let mut rotations = e.rotation_lists();
    let mut dart_origin: Vec<Option<DartId>> = (0..e.dart_count())
        .map(|d| Some(DartId(d as u32)))
        .collect();

    // Work per face of the input; new chord faces are triangles by
    // construction and never revisited.
    let mut tails: Vec<VertexId> = (0..e.dart_count()).map(|d| e.tail(DartId(d as u32))).collect();
    let rot_insert = |rotations: &mut Vec<Vec<DartId>>, v: VertexId, after: DartId, d: DartId| {
        let list = &mut rotations[v.index()];
        let pos = list
            .iter()
            .position(|&x| x == after)
            .expect("anchor dart present in rotation");
        list.insert(pos + 1, d);
    };

    for f in 0..e.face_count() {
        let mut cycle = e.face_darts(FaceId(f as u32));
        // Ear-clip: chord the corner between cycle[0] and cycle[1] off,
        // shrinking the face walk by one side each round.
        while cycle.len() > 3 {
            let d0 = cycle[0];
            let d1 = cycle[1];
            let v0 = tails[d0.index()];
            let v2 = tails[cycle[2].index()];
            let chord_fwd = DartId((edges.len() * 2) as u32); // v2 -> v0
            let chord_rev = chord_fwd.twin();
            edges.push(EdgeSpec {
                u: v2,
                v: v0,
                w_uv: Weight::INF,
                w_vu: Weight::INF,
            });
            tails.push(v2);
            tails.push(v0);
            dart_origin.push(None);
            dart_origin.push(None);
            // The face corner at v2 sits between twin(d1) and the boundary
            // continuation; the chord slots in right after twin(d1). At v0
            // it slots in right after twin(previous boundary dart), which is
            // twin(last dart of the walk).
            rot_insert(&mut rotations, v2, d1.twin(), chord_fwd);
            let last = *cycle.last().unwrap();
            rot_insert(&mut rotations, v0, last.twin(), chord_rev);
            // Remaining face: chord_rev followed by the rest of the walk.
            let mut rest = vec![chord_rev];
            rest.extend_from_slice(&cycle[2..]);
            cycle = rest;
        }
    }

    let embedding = Embedding::assemble(
        e.vertex_count(),
        &edges,
        &rotations,
        Some(e.face_dart(e.infinite_face())),
    )
    .expect("chord insertion preserves planarity");
    Triangulation {
        embedding,
        dart_origin,
    }
}
