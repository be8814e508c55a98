//! r-divisions and dense distance graphs.
//!
//! A division partitions the darts into pieces of at most `r` vertices with
//! few boundary vertices each, built by recursive balanced separation: split
//! by face count until pieces are small, then re-split pieces whose boundary
//! grew too large, weighting boundary vertices. The dense distance graph
//! stores, per piece, exact shortest-path distances between its boundary
//! vertices; shortest paths between boundary vertices decompose at piece
//! boundaries, so plain Dijkstra over the union of the per-piece cliques
//! reproduces exact global distances.

use crate::embed::{triangulate_infinite, DartId, Embedding, FaceId, VertexId};
use crate::scc::strip_absent_edges;
use crate::separator::{best_balanced_closing_edge, fundamental_cycle, undirected_bfs_tree};
use crate::surgery::split_along_cycle;
use crate::weight::Weight;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisionError {
    #[error("division bounds unachievable: {0} (raise the constants)")]
    BoundsUnachievable(String),
    #[error("vertex {0:?} is not a boundary vertex")]
    NotBoundary(VertexId),
}

/// Tuning constants for the division invariants.
#[derive(Clone, Copy, Debug)]
pub struct DivisionConfig {
    /// Piece count bound: at most `c1 * n / r` pieces.
    pub c1: f64,
    /// Boundary bound per piece: at most `c2 * sqrt(r)` boundary vertices.
    pub c2: f64,
}

impl Default for DivisionConfig {
    fn default() -> Self {
        DivisionConfig { c1: 40.0, c2: 20.0 }
    }
}

/// One piece of a division, in host-graph ids.
#[derive(Debug, Clone)]
pub struct Piece {
    pub vertex_ids: Vec<VertexId>,
    pub dart_ids: Vec<DartId>,
    pub boundary: Vec<VertexId>,
}

/// A division of the host graph into edge-disjoint pieces.
pub struct RDivision {
    pub r: usize,
    pub pieces: Vec<Piece>,
    /// Piece index owning each dart.
    pub piece_of_dart: Vec<u32>,
    /// True for vertices appearing in two or more pieces.
    pub is_boundary: Vec<bool>,
}

struct Region {
    embedding: Embedding,
    vertex_to_host: Vec<VertexId>,
    dart_to_host: Vec<DartId>,
    /// Host darts owned by this region (its pieces must partition them).
    owned: Vec<DartId>,
}

fn split_region(region: &Region, weigh_boundary: Option<&[bool]>) -> Option<(Region, Region)> {
    let e = &region.embedding;
    let tri = triangulate_infinite(e);
    let t = &tri.embedding;
    let parent = undirected_bfs_tree(t, VertexId(0));
    let weight_fn = |f: usize| -> u64 {
        match weigh_boundary {
            None => 1,
            Some(host_is_heavy) => {
                // weight a face by the heavy vertices around it, spreading
                // each vertex over its incident faces via its first dart
                let mut w = 1u64;
                let d = t.face_dart(FaceId(f as u32));
                let mut cur = d;
                loop {
                    let v = t.tail(cur);
                    let host = region.vertex_to_host[v.index()];
                    if host_is_heavy[host.index()]
                        && t.face_of(t.rotation(v)[0]) == FaceId(f as u32)
                    {
                        w += 4;
                    }
                    cur = t.face_next(cur);
                    if cur == d {
                        break;
                    }
                }
                w
            }
        }
    };
    let choice = best_balanced_closing_edge(t, &parent, weight_fn).ok()?;
    let (cycle, _) = fundamental_cycle(t, &parent, choice.closing_dart);
    let split = split_along_cycle(t, &cycle).ok()?;

    let owned_set: std::collections::HashSet<DartId> = region.owned.iter().copied().collect();
    let cycle_edges: std::collections::HashSet<usize> = cycle.iter().map(|d| d.edge()).collect();
    let build = |part: &crate::surgery::SplitPart, takes_cycle: bool| -> Option<Region> {
        let stripped = strip_absent_edges(&part.embedding)?;
        let vertex_to_host: Vec<VertexId> = stripped
            .vertex_to_parent
            .iter()
            .map(|&pv| region.vertex_to_host[part.vertex_to_parent[pv.index()].index()])
            .collect();
        // map each surviving dart back to the host; chords vanished in the
        // strip, so the chain is total
        let mut dart_to_host = Vec::with_capacity(stripped.embedding.dart_count());
        let mut owned = Vec::new();
        for d in 0..stripped.embedding.dart_count() {
            let part_dart = stripped.dart_to_parent[d];
            let t_dart = part.dart_to_parent[part_dart.index()];
            let region_dart = tri
                .origin(t_dart)
                .expect("chords are infinite and were stripped");
            let host = region.dart_to_host[region_dart.index()];
            dart_to_host.push(host);
            // cycle edges sit in both parts but only one side owns them
            let on_cycle = cycle_edges.contains(&t_dart.edge());
            if (!on_cycle || takes_cycle) && owned_set.contains(&host) {
                owned.push(host);
            }
        }
        owned.sort_unstable();
        owned.dedup();
        Some(Region {
            embedding: stripped.embedding,
            vertex_to_host,
            dart_to_host,
            owned,
        })
    };
    let interior = build(&split.interior, true)?;
    let exterior = build(&split.exterior, false)?;
    if interior.owned.is_empty() || exterior.owned.is_empty() {
        return None;
    }
    Some((interior, exterior))
}

/// Builds an r-division by two-phase recursive separation.
pub fn build_r_division(
    e: &Embedding,
    r: usize,
    config: DivisionConfig,
) -> Result<RDivision, DivisionError> {
    assert!(r >= 4, "r-division needs r >= 4");
    let n = e.vertex_count();

    // Phase one: split by faces until pieces have at most r vertices.
    let mut done: Vec<Region> = Vec::new();
    let mut queue: Vec<Region> = vec![Region {
        embedding: e.clone(),
        vertex_to_host: (0..n as u32).map(VertexId).collect(),
        dart_to_host: (0..e.dart_count() as u32).map(DartId).collect(),
        owned: (0..e.dart_count() as u32).map(DartId).collect(),
    }];
    let mut guard = 0usize;
    while let Some(region) = queue.pop() {
        guard += 1;
        if guard > 40 * n.max(16) {
            return Err(DivisionError::BoundsUnachievable(
                "phase-one splitting did not converge".into(),
            ));
        }
        if region.embedding.vertex_count() <= r {
            done.push(region);
            continue;
        }
        match split_region(&region, None) {
            Some((a, b))
                if a.embedding.vertex_count() < region.embedding.vertex_count()
                    && b.embedding.vertex_count() < region.embedding.vertex_count() =>
            {
                queue.push(a);
                queue.push(b);
            }
            _ => {
                return Err(DivisionError::BoundsUnachievable(
                    "a region refused to split smaller".into(),
                ))
            }
        }
    }

    // Determine boundary vertices: shared by two or more pieces.
    let piece_count_bound = (config.c1 * n as f64 / r as f64).ceil() as usize;
    let boundary_bound = (config.c2 * (r as f64).sqrt()).floor() as usize;
    let compute_boundary = |regions: &[Region]| -> Vec<bool> {
        let mut count = vec![0u32; n];
        for reg in regions {
            let mut present = std::collections::HashSet::new();
            for &d in &reg.owned {
                present.insert(e.tail(d));
                present.insert(e.head(d));
            }
            for v in present {
                count[v.index()] += 1;
            }
        }
        count.iter().map(|&c| c >= 2).collect()
    };

    // Phase two: re-split pieces whose boundary exceeds the bound, weighting
    // boundary vertices so the split balances them.
    let mut rounds = 0usize;
    loop {
        let is_boundary = compute_boundary(&done);
        let violating: Vec<usize> = done
            .iter()
            .enumerate()
            .filter(|(_, reg)| {
                let b = reg
                    .vertex_to_host
                    .iter()
                    .filter(|v| is_boundary[v.index()])
                    .count();
                b > boundary_bound
            })
            .map(|(i, _)| i)
            .collect();
        if violating.is_empty() {
            break;
        }
        rounds += 1;
        if rounds > n {
            return Err(DivisionError::BoundsUnachievable(
                "phase-two boundary reduction did not converge".into(),
            ));
        }
        for idx in violating.into_iter().rev() {
            let region = done.swap_remove(idx);
            match split_region(&region, Some(&is_boundary)) {
                Some((a, b))
                    if a.embedding.vertex_count() < region.embedding.vertex_count()
                        && b.embedding.vertex_count() < region.embedding.vertex_count() =>
                {
                    done.push(a);
                    done.push(b);
                }
                _ => {
                    return Err(DivisionError::BoundsUnachievable(
                        "a boundary-heavy region refused to split".into(),
                    ))
                }
            }
        }
    }

    if done.len() > piece_count_bound.max(1) {
        return Err(DivisionError::BoundsUnachievable(format!(
            "{} pieces exceed the bound {}",
            done.len(),
            piece_count_bound
        )));
    }

    let is_boundary = compute_boundary(&done);
    let mut piece_of_dart = vec![u32::MAX; e.dart_count()];
    let mut pieces = Vec::with_capacity(done.len());
    for (i, reg) in done.iter().enumerate() {
        let mut vertex_ids: Vec<VertexId> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for &d in &reg.owned {
            piece_of_dart[d.index()] = i as u32;
            for v in [e.tail(d), e.head(d)] {
                if seen.insert(v) {
                    vertex_ids.push(v);
                }
            }
        }
        vertex_ids.sort_unstable();
        let boundary: Vec<VertexId> = vertex_ids
            .iter()
            .copied()
            .filter(|v| is_boundary[v.index()])
            .collect();
        pieces.push(Piece {
            vertex_ids,
            dart_ids: reg.owned.clone(),
            boundary,
        });
    }
    debug_assert!(piece_of_dart.iter().all(|&p| p != u32::MAX));
    Ok(RDivision {
        r,
        pieces,
        piece_of_dart,
        is_boundary,
    })
}

/// Per-piece complete boundary-to-boundary distance tables.
pub struct DenseDistanceGraph {
    /// `tables[p][i][j]` = exact distance inside piece `p` from its i-th to
    /// its j-th boundary vertex.
    pub tables: Vec<Vec<Vec<Weight>>>,
    /// Boundary vertex lists per piece (host ids), matching table indices.
    pub boundaries: Vec<Vec<VertexId>>,
}

/// Dijkstra restricted to one piece's darts.
fn piece_distances(e: &Embedding, piece: &Piece, source: VertexId) -> Vec<Weight> {
    let allowed: std::collections::HashSet<DartId> = piece.dart_ids.iter().copied().collect();
    let mut dist: std::collections::HashMap<VertexId, Weight> = std::collections::HashMap::new();
    let mut heap: BinaryHeap<Reverse<(u64, u32)>> = BinaryHeap::new();
    dist.insert(source, Weight::ZERO);
    heap.push(Reverse((0, source.0)));
    while let Some(Reverse((d, v))) = heap.pop() {
        let v = VertexId(v);
        if dist.get(&v).map(|w| w.raw()) != Some(d) {
            continue;
        }
        for &dart in e.rotation(v) {
            if !allowed.contains(&dart) || e.weight(dart).is_inf() {
                continue;
            }
            let u = e.head(dart);
            let nd = Weight::finite(d) + e.weight(dart);
            if dist.get(&u).map_or(true, |&w| nd < w) {
                dist.insert(u, nd);
                heap.push(Reverse((nd.raw(), u.0)));
            }
        }
    }
    piece
        .boundary
        .iter()
        .map(|b| dist.get(b).copied().unwrap_or(Weight::INF))
        .collect()
}

/// Builds the dense distance graph of a division.
pub fn build_ddg(e: &Embedding, rd: &RDivision) -> DenseDistanceGraph {
    let mut tables = Vec::with_capacity(rd.pieces.len());
    let mut boundaries = Vec::with_capacity(rd.pieces.len());
    for piece in &rd.pieces {
        let table: Vec<Vec<Weight>> = piece
            .boundary
            .iter()
            .map(|&b| piece_distances(e, piece, b))
            .collect();
        tables.push(table);
        boundaries.push(piece.boundary.clone());
    }
    DenseDistanceGraph { tables, boundaries }
}

/// Exact `u -> v` distance in the full graph, computed by Dijkstra over the
/// union of the per-piece boundary cliques.
pub fn ddg_distance(
    rd: &RDivision,
    ddg: &DenseDistanceGraph,
    u: VertexId,
    v: VertexId,
) -> Result<Weight, DivisionError> {
    if !rd.is_boundary.get(u.index()).copied().unwrap_or(false) {
        return Err(DivisionError::NotBoundary(u));
    }
    if !rd.is_boundary.get(v.index()).copied().unwrap_or(false) {
        return Err(DivisionError::NotBoundary(v));
    }
    if u == v {
        return Ok(Weight::ZERO);
    }
    // adjacency: per boundary vertex, (piece, index) memberships
    let mut membership: std::collections::HashMap<VertexId, Vec<(usize, usize)>> =
        std::collections::HashMap::new();
    for (p, boundary) in ddg.boundaries.iter().enumerate() {
        for (i, &b) in boundary.iter().enumerate() {
            membership.entry(b).or_default().push((p, i));
        }
    }
    let mut dist: std::collections::HashMap<VertexId, Weight> = std::collections::HashMap::new();
    let mut heap: BinaryHeap<Reverse<(u64, u32)>> = BinaryHeap::new();
    dist.insert(u, Weight::ZERO);
    heap.push(Reverse((0, u.0)));
    while let Some(Reverse((d, x))) = heap.pop() {
        let x = VertexId(x);
        if dist.get(&x).map(|w| w.raw()) != Some(d) {
            continue;
        }
        if x == v {
            return Ok(Weight::finite(d));
        }
        if let Some(mem) = membership.get(&x) {
            for &(p, i) in mem {
                for (j, &w) in ddg.tables[p][i].iter().enumerate() {
                    if w.is_inf() {
                        continue;
                    }
                    let y = ddg.boundaries[p][j];
                    let nd = Weight::finite(d) + w;
                    if dist.get(&y).map_or(true, |&cur| nd < cur) {
                        dist.insert(y, nd);
                        heap.push(Reverse((nd.raw(), y.0)));
                    }
                }
            }
        }
    }
    Ok(dist.get(&v).copied().unwrap_or(Weight::INF))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::grid;
    use crate::paths::dijkstra;

    #[test]
    fn whole_graph_is_one_piece() {
        let e = grid(2, 0, (1, 9)); // 4 vertices
        let rd = build_r_division(&e, 4, DivisionConfig::default()).unwrap();
        assert_eq!(rd.pieces.len(), 1);
        assert!(rd.pieces[0].boundary.is_empty());
    }

    #[test]
    fn big_r_means_one_piece() {
        let e = grid(6, 1, (1, 9));
        let rd = build_r_division(&e, e.vertex_count(), DivisionConfig::default()).unwrap();
        assert_eq!(rd.pieces.len(), 1);
    }

    #[test]
    fn grid_division_meets_bounds() {
        let config = DivisionConfig::default();
        for (side, r) in [(16usize, 16usize), (16, 64), (32, 64), (32, 256)] {
            let e = grid(side, 3, (1, 50));
            let n = e.vertex_count();
            let rd = build_r_division(&e, r, config).unwrap();
            assert!(
                rd.pieces.len() as f64 <= (config.c1 * n as f64 / r as f64).max(1.0),
                "piece count at side {side} r {r}"
            );
            for piece in &rd.pieces {
                assert!(piece.vertex_ids.len() <= r, "piece size at side {side} r {r}");
                assert!(
                    piece.boundary.len() as f64 <= config.c2 * (r as f64).sqrt(),
                    "boundary at side {side} r {r}"
                );
            }
            // darts partition
            let mut owned = vec![false; e.dart_count()];
            for piece in &rd.pieces {
                for &d in &piece.dart_ids {
                    assert!(!owned[d.index()], "dart owned twice");
                    owned[d.index()] = true;
                }
            }
            assert!(owned.iter().all(|&o| o));
        }
    }

    #[test]
    fn hand_built_division_of_a_path() {
        // path graph 0-1-2-3-4 split at vertex 2 by hand
        let n = 5;
        let points: Vec<(f64, f64)> = (0..n).map(|i| (i as f64, 0.0)).collect();
        let edges: Vec<crate::embed::EdgeSpec> = (0..n - 1)
            .map(|i| {
                crate::embed::EdgeSpec::new(
                    i as u32,
                    (i + 1) as u32,
                    Weight::finite((i + 1) as u64),
                    Weight::finite((i + 2) as u64),
                )
            })
            .collect();
        let e = crate::instances::embedding_from_points(&points, &edges, None).unwrap();
        let left = Piece {
            vertex_ids: vec![VertexId(0), VertexId(1), VertexId(2)],
            dart_ids: vec![DartId(0), DartId(1), DartId(2), DartId(3)],
            boundary: vec![VertexId(2)],
        };
        let right = Piece {
            vertex_ids: vec![VertexId(2), VertexId(3), VertexId(4)],
            dart_ids: vec![DartId(4), DartId(5), DartId(6), DartId(7)],
            boundary: vec![VertexId(2)],
        };
        let mut piece_of_dart = vec![0u32; 8];
        for d in 4..8 {
            piece_of_dart[d] = 1;
        }
        let mut is_boundary = vec![false; 5];
        is_boundary[2] = true;
        let rd = RDivision {
            r: 3,
            pieces: vec![left, right],
            piece_of_dart,
            is_boundary,
        };
        let ddg = build_ddg(&e, &rd);
        // boundary-to-itself distances are zero, and the tables hold the
        // prefix sums within each side
        assert_eq!(ddg.tables[0][0][0], Weight::ZERO);
        assert_eq!(ddg.tables[1][0][0], Weight::ZERO);
        assert_eq!(ddg_distance(&rd, &ddg, VertexId(2), VertexId(2)).unwrap(), Weight::ZERO);
        assert!(matches!(
            ddg_distance(&rd, &ddg, VertexId(0), VertexId(2)),
            Err(DivisionError::NotBoundary(_))
        ));
    }

    #[test]
    fn ddg_matches_restricted_dijkstra() {
        let e = grid(16, 7, (1, 100));
        let rd = build_r_division(&e, 16, DivisionConfig::default()).unwrap();
        let ddg = build_ddg(&e, &rd);
        for (p, piece) in rd.pieces.iter().enumerate() {
            for (i, &b) in piece.boundary.iter().enumerate() {
                let again = piece_distances(&e, piece, b);
                assert_eq!(ddg.tables[p][i], again);
            }
        }
    }

    #[test]
    fn ddg_distances_are_globally_exact() {
        let e = grid(12, 11, (1, 64));
        let rd = build_r_division(&e, 16, DivisionConfig::default()).unwrap();
        let ddg = build_ddg(&e, &rd);
        let boundary: Vec<VertexId> = (0..e.vertex_count() as u32)
            .map(VertexId)
            .filter(|v| rd.is_boundary[v.index()])
            .collect();
        assert!(!boundary.is_empty());
        for &u in boundary.iter().take(12) {
            let tree = dijkstra(&e, u);
            for &v in &boundary {
                let got = ddg_distance(&rd, &ddg, u, v).unwrap();
                assert_eq!(got, tree.dist[v.index()], "{u:?} -> {v:?}");
            }
        }
    }

    #[test]
    fn triangle_inequality_within_cliques() {
        let e = grid(10, 2, (1, 30));
        let rd = build_r_division(&e, 25, DivisionConfig::default()).unwrap();
        let ddg = build_ddg(&e, &rd);
        for table in &ddg.tables {
            let k = table.len();
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        assert!(table[a][b] <= table[a][c] + table[c][b]);
                    }
                }
            }
        }
    }

    #[test]
    fn scaling_weights_scales_the_ddg() {
        let e = grid(8, 5, (1, 20));
        let rd = build_r_division(&e, 16, DivisionConfig::default()).unwrap();
        let ddg = build_ddg(&e, &rd);
        let k = 7u64;
        let mut edges = e.edge_specs();
        for spec in edges.iter_mut() {
            spec.w_uv = spec.w_uv.saturating_mul(k);
            spec.w_vu = spec.w_vu.saturating_mul(k);
        }
        let scaled =
            Embedding::build(e.vertex_count(), &edges, &e.rotation_lists(), None).unwrap();
        let ddg2 = build_ddg(&scaled, &rd);
        for (t1, t2) in ddg.tables.iter().zip(ddg2.tables.iter()) {
            for (r1, r2) in t1.iter().zip(t2.iter()) {
                for (&a, &b) in r1.iter().zip(r2.iter()) {
                    assert_eq!(a.saturating_mul(k), b);
                }
            }
        }
    }

    #[test]
    fn impossible_constants_are_reported() {
        let e = grid(12, 0, (1, 9));
        let tight = DivisionConfig { c1: 0.01, c2: 20.0 };
        assert!(matches!(
            build_r_division(&e, 9, tight),
            Err(DivisionError::BoundsUnachievable(_))
        ));
    }
}
