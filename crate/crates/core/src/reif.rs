//! Shortest directed cycle crossing a given shortest path exactly once.
//!
//! The graph is slit open along the path; a cycle crossing the path once at
//! vertex `p_i` becomes a path between the two clones of `p_i`, from the left
//! clone to the right one for right-to-left crossings and the other way
//! around. The divide-and-conquer solves the middle index with one shortest
//! path query, closes that path into a Jordan curve through the slit face
//! with an infinite-weight helper edge, splits the graph along it, and
//! recurses on the two sides with the matching index ranges. Splitting is
//! sound because some shortest clone-to-clone path for every other index
//! avoids crossing the middle path, hence survives on its own side.

use crate::embed::{DartId, EdgeSpec, Embedding, VertexId};
use crate::paths::{dijkstra, extract_path, DirectedCycle, DirectedPath};
use crate::surgery::{incise, split_along_cycle, IncisionResult, SurgeryError};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CrossingOrientation {
    RightToLeft,
    LeftToRight,
}

impl CrossingOrientation {
    pub const BOTH: [CrossingOrientation; 2] =
        [CrossingOrientation::RightToLeft, CrossingOrientation::LeftToRight];

    fn slot(self) -> usize {
        match self {
            CrossingOrientation::RightToLeft => 0,
            CrossingOrientation::LeftToRight => 1,
        }
    }
}

/// The best cycle crossing the path exactly once.
#[derive(Clone, Debug)]
pub struct ReifCycle {
    /// Cycle in host-graph darts.
    pub cycle: DirectedCycle,
    /// Index of the crossing vertex on the path.
    pub crossing_index: usize,
    pub orientation: CrossingOrientation,
}

#[derive(Clone, Debug)]
pub struct ReifAnswer {
    pub best: Option<ReifCycle>,
    pub length: Weight,
}

impl ReifAnswer {
    fn none() -> ReifAnswer {
        ReifAnswer {
            best: None,
            length: Weight::INF,
        }
    }
}

/// Per-index clone-to-clone path found for one orientation, in the darts of
/// the incised graph.
#[derive(Clone, Debug)]
pub struct FoundPath {
    pub length: Weight,
    pub darts: Vec<DartId>,
}

/// Record of every divide step, for structural checks.
#[derive(Clone, Debug)]
pub struct ReifTrace {
    /// `found[i][orientation]`, indexed by path vertex index.
    pub found: Vec<[Option<FoundPath>; 2]>,
    /// `(orientation slot, mid, lo, hi)` per divide node.
    pub nodes: Vec<(usize, usize, usize, usize)>,
    /// True when a divide step had to fall back to recursing on the whole
    /// graph (no finite middle path, or a structural hiccup).
    pub fallbacks: usize,
}

pub struct ReifRun {
    pub answer: ReifAnswer,
    /// Absent only for paths without a single dart.
    pub incision: Option<IncisionResult>,
    pub trace: Option<ReifTrace>,
}

struct Candidate {
    length: Weight,
    index: usize,
    orientation: CrossingOrientation,
    /// path darts in the incised graph
    top_darts: Vec<DartId>,
}

struct ReifCtx {
    /// Marks the copy darts of the incised graph. Divider queries break ties
    /// away from them, keeping dividers off the slit unless a copy run is
    /// strictly shorter; that keeps other indexes' clones off the divider.
    top_is_copy: Vec<bool>,
}

/// Shortest-path tree whose ties prefer paths using fewer copy darts, then
/// fewer darts, then the smaller final dart. Distances equal the canonical
/// ones; only the tie selection differs.
fn dijkstra_copy_averse(
    g: &Embedding,
    root: VertexId,
    target: VertexId,
    to_top: &[Option<DartId>],
    ctx: &ReifCtx,
) -> (Vec<Weight>, Vec<Option<DartId>>) {
    let n = g.vertex_count();
    let mut dist = vec![Weight::INF; n];
    let mut copies = vec![u32::MAX; n];
    let mut hops = vec![u32::MAX; n];
    let mut parent: Vec<Option<DartId>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(u64, u32, u32, u32, u32)>> =
        std::collections::BinaryHeap::new();
    dist[root.index()] = Weight::ZERO;
    copies[root.index()] = 0;
    hops[root.index()] = 0;
    heap.push(std::cmp::Reverse((0, 0, 0, 0, root.0)));
    while let Some(std::cmp::Reverse((_, _, _, _, v))) = heap.pop() {
        let vi = v as usize;
        if done[vi] {
            continue;
        }
        done[vi] = true;
        if VertexId(v) == target {
            break; // settled; only the target distance is consumed
        }
        for &d in g.rotation(VertexId(v)) {
            let w = g.weight(d);
            if w.is_inf() {
                continue;
            }
            let u = g.head(d).index();
            if done[u] {
                continue;
            }
            let is_copy = to_top[d.index()]
                .map(|t| ctx.top_is_copy[t.index()])
                .unwrap_or(false);
            let nd = dist[vi] + w;
            let nc = copies[vi] + u32::from(is_copy);
            let nh = hops[vi] + 1;
            let better = (nd, nc, nh, d.0)
                < (
                    dist[u],
                    copies[u],
                    hops[u],
                    parent[u].map_or(u32::MAX, |p| p.0),
                );
            if better {
                dist[u] = nd;
                copies[u] = nc;
                hops[u] = nh;
                parent[u] = Some(d);
                heap.push(std::cmp::Reverse((nd.raw(), nc, nh, d.0, u as u32)));
            }
        }
    }
    (dist, parent)
}

/// State of one divide node. Arrays are indexed by absolute path positions;
/// entries outside the node's range may be `None`.
struct Node {
    g: Embedding,
    lo: usize,
    hi: usize,
    clone0: Vec<Option<VertexId>>,
    clone1: Vec<Option<VertexId>>,
    copy_left: Vec<Option<DartId>>,
    copy_right: Vec<Option<DartId>>,
    /// node-graph dart -> incised-graph dart (None for helper edges)
    to_top: Vec<Option<DartId>>,
}

fn solve(
    node: Node,
    ctx: &ReifCtx,
    orientation: CrossingOrientation,
    out: &mut Vec<Candidate>,
    trace: &mut Option<ReifTrace>,
) {
    if node.lo > node.hi {
        return;
    }
    let mid = (node.lo + node.hi) / 2;
    if let Some(t) = trace.as_mut() {
        t.nodes.push((orientation.slot(), mid, node.lo, node.hi));
    }
    let gamma = solve_single(&node, ctx, mid, orientation, out, trace);
    if node.lo == node.hi {
        return;
    }

    let parts = gamma.as_ref().and_then(|g| split_at(&node, mid, g));
    match parts {
        Some((prefix, suffix, ambiguous)) => {
            // Indexes whose clones both sit on the divider: when they appear
            // in source-to-target order along it, the divider's own subpath
            // is a shortest clone-to-clone path and the answer is free;
            // otherwise query the node graph directly.
            if !ambiguous.is_empty() {
                let g = gamma.as_ref().unwrap();
                let mut pos: std::collections::HashMap<VertexId, usize> =
                    std::collections::HashMap::new();
                let mut prefix_len = Vec::with_capacity(g.darts.len() + 1);
                prefix_len.push(Weight::ZERO);
                pos.insert(node.g.tail(g.darts[0]), 0);
                for (i, &d) in g.darts.iter().enumerate() {
                    prefix_len.push(prefix_len[i] + node.g.weight(d));
                    pos.insert(node.g.head(d), i + 1);
                }
                for j in ambiguous {
                    let (src, dst) = match orientation {
                        CrossingOrientation::RightToLeft => (node.clone0[j], node.clone1[j]),
                        CrossingOrientation::LeftToRight => (node.clone1[j], node.clone0[j]),
                    };
                    let (ps, pd) = (pos[&src.unwrap()], pos[&dst.unwrap()]);
                    if ps <= pd {
                        let length = Weight::finite(
                            prefix_len[pd].raw() - prefix_len[ps].raw(),
                        );
                        record(
                            &node,
                            j,
                            orientation,
                            Some(DirectedPath {
                                darts: g.darts[ps..pd].to_vec(),
                                length,
                            }),
                            out,
                            trace,
                        );
                    } else {
                        solve_single(&node, ctx, j, orientation, out, trace);
                    }
                }
            }
            if mid > node.lo {
                solve(prefix, ctx, orientation, out, trace);
            }
            if mid < node.hi {
                solve(suffix, ctx, orientation, out, trace);
            }
        }
        None => {
            // No finite middle path, or the split could not be carried out:
            // recurse over the same graph. Correct, just slower.
            if let Some(t) = trace.as_mut() {
                t.fallbacks += 1;
            }
            if mid > node.lo {
                let left = Node {
                    g: node.g.clone(),
                    lo: node.lo,
                    hi: mid - 1,
                    clone0: node.clone0.clone(),
                    clone1: node.clone1.clone(),
                    copy_left: node.copy_left.clone(),
                    copy_right: node.copy_right.clone(),
                    to_top: node.to_top.clone(),
                };
                solve(left, ctx, orientation, out, trace);
            }
            if mid < node.hi {
                let right = Node {
                    g: node.g,
                    lo: mid + 1,
                    hi: node.hi,
                    clone0: node.clone0,
                    clone1: node.clone1,
                    copy_left: node.copy_left,
                    copy_right: node.copy_right,
                    to_top: node.to_top,
                };
                solve(right, ctx, orientation, out, trace);
            }
        }
    }
}

/// One clone-to-clone query on the node's graph. Records the candidate and,
/// unless a less restricted level already answered this index, the trace
/// entry.
fn solve_single(
    node: &Node,
    ctx: &ReifCtx,
    index: usize,
    orientation: CrossingOrientation,
    out: &mut Vec<Candidate>,
    trace: &mut Option<ReifTrace>,
) -> Option<DirectedPath> {
    let (src, dst) = match orientation {
        CrossingOrientation::RightToLeft => (node.clone0[index], node.clone1[index]),
        CrossingOrientation::LeftToRight => (node.clone1[index], node.clone0[index]),
    };
    let (src, dst) = match (src, dst) {
        (Some(s), Some(d)) => (s, d),
        _ => unreachable!("range clones survive in their side"),
    };
    let (dist_all, parent) = dijkstra_copy_averse(&node.g, src, dst, &node.to_top, ctx);
    let dist = dist_all[dst.index()];
    let gamma = if dist.is_finite() {
        let mut darts = Vec::new();
        let mut cur = dst;
        while let Some(d) = parent[cur.index()] {
            darts.push(d);
            cur = node.g.tail(d);
        }
        darts.reverse();
        Some(DirectedPath { darts, length: dist })
    } else {
        None
    };
    record(node, index, orientation, gamma.clone(), out, trace);
    gamma
}

fn record(
    node: &Node,
    index: usize,
    orientation: CrossingOrientation,
    gamma: Option<DirectedPath>,
    out: &mut Vec<Candidate>,
    trace: &mut Option<ReifTrace>,
) {
    let to_top = |darts: &[DartId]| -> Vec<DartId> {
        darts
            .iter()
            .map(|&d| node.to_top[d.index()].expect("finite darts map to the incision"))
            .collect()
    };
    if let Some(t) = trace.as_mut() {
        let slot = &mut t.found[index][orientation.slot()];
        if slot.is_none() {
            *slot = gamma.as_ref().map(|g| FoundPath {
                length: g.length,
                darts: to_top(&g.darts),
            });
        }
    }
    if let Some(g) = &gamma {
        out.push(Candidate {
            length: g.length,
            index,
            orientation,
            top_darts: to_top(&g.darts),
        });
    }
}

/// Closes `gamma` into a Jordan curve with a helper edge through the slit
/// face and splits the node graph along it, producing the prefix-side and
/// suffix-side child nodes plus the indexes that must be solved right here
/// because both their clones lie on the divider.
fn split_at(node: &Node, mid: usize, gamma: &DirectedPath) -> Option<(Node, Node, Vec<usize>)> {
    let g = &node.g;
    // Slit-face corner darts at the two clones of `mid`.
    let b_l = node.copy_left[mid]?;
    let a_l = node.copy_left[mid - 1]?.twin();
    let b_r = node.copy_right[mid]?;
    let a_r = node.copy_right[mid - 1]?.twin();
    if g.rot_next(b_l) != a_l || g.rot_next(a_r) != b_r {
        return None; // corner not intact; fall back
    }
    let src = g.tail(gamma.darts[0]);
    let dst = g.head(*gamma.darts.last().unwrap());

    // Helper edge dst -> src embedded in the slit corners.
    let mut edges = g.edge_specs();
    let art_fwd = DartId((2 * edges.len()) as u32);
    edges.push(EdgeSpec {
        u: dst,
        v: src,
        w_uv: Weight::INF,
        w_vu: Weight::INF,
    });
    let mut rotations = g.rotation_lists();
    let insert_after = |rot: &mut Vec<DartId>, after: DartId, d: DartId| {
        let pos = rot.iter().position(|&x| x == after)?;
        rot.insert(pos + 1, d);
        Some(())
    };
    // The clone reached by gamma's end holds one slit corner, the start the
    // other; orientation decides which corner belongs to which endpoint.
    let (src_anchor, dst_anchor) = if src == node.clone0[mid].unwrap() {
        (b_l, a_r)
    } else {
        (a_r, b_l)
    };
    insert_after(&mut rotations[dst.index()], dst_anchor, art_fwd)?;
    insert_after(&mut rotations[src.index()], src_anchor, art_fwd.twin())?;
    let g_plus = match Embedding::assemble(g.vertex_count(), &edges, &rotations, None) {
        Ok(e) => e,
        Err(_) => return None,
    };

    let mut cycle = gamma.darts.clone();
    cycle.push(art_fwd);
    let split = split_along_cycle(&g_plus, &cycle).ok()?;

    let old_edges = g.edge_count();
    let child = |part: &crate::surgery::SplitPart, lo: usize, hi: usize| -> Option<Node> {
        let map_vertex = |v: Option<VertexId>| -> Option<VertexId> {
            v.and_then(|v| part.parent_vertex_to_local[v.index()])
        };
        let map_dart = |d: Option<DartId>| -> Option<DartId> {
            d.and_then(|d| part.parent_dart_to_local[d.index()])
        };
        let mut clone0 = vec![None; node.clone0.len()];
        let mut clone1 = vec![None; node.clone1.len()];
        for j in lo..=hi {
            clone0[j] = map_vertex(node.clone0[j]);
            clone1[j] = map_vertex(node.clone1[j]);
            if clone0[j].is_none() || clone1[j].is_none() {
                return None;
            }
        }
        let mut copy_left = vec![None; node.copy_left.len()];
        let mut copy_right = vec![None; node.copy_right.len()];
        let edge_lo = lo.checked_sub(1)?;
        for i in edge_lo..=hi {
            copy_left[i] = map_dart(node.copy_left[i]);
            copy_right[i] = map_dart(node.copy_right[i]);
        }
        let to_top: Vec<Option<DartId>> = part
            .dart_to_parent
            .iter()
            .map(|&pd| {
                if pd.edge() < old_edges {
                    node.to_top[pd.index()]
                } else {
                    None
                }
            })
            .collect();
        Some(Node {
            g: part.embedding.clone(),
            lo,
            hi,
            clone0,
            clone1,
            copy_left,
            copy_right,
            to_top,
        })
    };

    // Assign every remaining index to the unique side holding both its
    // clones. An index whose clones both lie on the divider itself could
    // legitimately route on either side, so give up on splitting then.
    let in_part = |part: &crate::surgery::SplitPart, j: usize| -> bool {
        let c0 = node.clone0[j].unwrap();
        let c1 = node.clone1[j].unwrap();
        part.parent_vertex_to_local[c0.index()].is_some()
            && part.parent_vertex_to_local[c1.index()].is_some()
    };
    let mut pref_interior: Option<bool> = None;
    let mut suff_interior: Option<bool> = None;
    let mut ambiguous: Vec<usize> = Vec::new();
    for j in node.lo..=node.hi {
        if j == mid {
            continue;
        }
        let side = match (in_part(&split.interior, j), in_part(&split.exterior, j)) {
            // Both clones on the divider: the shortest clone path for this
            // index may legitimately weave across it, so neither side can be
            // trusted. Solve the index at this node instead of recursing.
            (true, true) => {
                ambiguous.push(j);
                continue;
            }
            (false, false) => return None,
            (true, false) => true,
            (false, true) => false,
        };
        let slot = if j < mid {
            &mut pref_interior
        } else {
            &mut suff_interior
        };
        match *slot {
            None => *slot = Some(side),
            Some(s) if s == side => {}
            Some(_) => return None,
        }
    }
    if let (Some(a), Some(b)) = (pref_interior, suff_interior) {
        if a == b {
            return None;
        }
    }
    let empty = |part: &crate::surgery::SplitPart| Node {
        g: part.embedding.clone(),
        lo: 1,
        hi: 0,
        clone0: Vec::new(),
        clone1: Vec::new(),
        copy_left: Vec::new(),
        copy_right: Vec::new(),
        to_top: Vec::new(),
    };
    let part_for = |interior: bool| -> &crate::surgery::SplitPart {
        if interior {
            &split.interior
        } else {
            &split.exterior
        }
    };
    let prefix = match pref_interior {
        Some(side) => child(part_for(side), node.lo, mid - 1)?,
        None => empty(&split.interior),
    };
    let suffix = match suff_interior {
        Some(side) => child(part_for(side), mid + 1, node.hi)?,
        None => empty(&split.exterior),
    };
    Some((prefix, suffix, ambiguous))
}

fn finish(
    e: &Embedding,
    p: &DirectedPath,
    inc: IncisionResult,
    mut candidates: Vec<Candidate>,
    trace: Option<ReifTrace>,
) -> ReifRun {
    candidates.sort_by(|a, b| {
        (a.length, a.orientation, a.index)
            .cmp(&(b.length, b.orientation, b.index))
            .then_with(|| a.top_darts.cmp(&b.top_darts))
    });
    let answer = match candidates.into_iter().next() {
        None => ReifAnswer::none(),
        Some(c) => {
            let host_darts: Vec<DartId> = c
                .top_darts
                .iter()
                .map(|&d| inc.dart_map[d.index()])
                .collect();
            let cycle = DirectedCycle::from_darts(e, host_darts);
            debug_assert_eq!(cycle.length, c.length);
            ReifAnswer {
                length: cycle.length,
                best: Some(ReifCycle {
                    cycle,
                    crossing_index: c.index,
                    orientation: c.orientation,
                }),
            }
        }
    };
    let _ = p;
    ReifRun {
        answer,
        incision: Some(inc),
        trace,
    }
}

/// Divide-and-conquer search for the shortest cycle crossing `p` exactly
/// once, over both orientations. `p` must be a shortest path under the
/// canonical tie-break for the independence of the two sides to hold.
pub fn shortest_cycle_crossing_once(
    e: &Embedding,
    p: &DirectedPath,
) -> Result<ReifAnswer, SurgeryError> {
    run(e, p, false).map(|r| r.answer)
}

/// As [`shortest_cycle_crossing_once`], returning the incision and the
/// divide trace for structural checks.
pub fn run(e: &Embedding, p: &DirectedPath, want_trace: bool) -> Result<ReifRun, SurgeryError> {
    let m = p.darts.len();
    if m < 2 {
        // no internal vertex, hence nothing can cross
        let incision = if m == 1 { Some(incise(e, p)?) } else { None };
        return Ok(ReifRun {
            answer: ReifAnswer::none(),
            incision,
            trace: want_trace.then(|| ReifTrace {
                found: vec![Default::default(); m + 1],
                nodes: Vec::new(),
                fallbacks: 0,
            }),
        });
    }
    let inc = incise(e, p)?;
    let mut trace = want_trace.then(|| ReifTrace {
        found: vec![Default::default(); m + 1],
        nodes: Vec::new(),
        fallbacks: 0,
    });
    let mut candidates = Vec::new();
    let mut top_is_copy = vec![false; inc.incised.dart_count()];
    for &d in inc.copy_dart_left.iter().chain(inc.copy_dart_right.iter()) {
        top_is_copy[d.index()] = true;
        top_is_copy[d.index() ^ 1] = true;
    }
    let ctx = ReifCtx { top_is_copy };
    for orientation in CrossingOrientation::BOTH {
        let node = Node {
            g: inc.incised.clone(),
            lo: 1,
            hi: m - 1,
            clone0: inc.copy0.iter().map(|&v| Some(v)).collect(),
            clone1: inc.copy1.iter().map(|&v| Some(v)).collect(),
            copy_left: inc.copy_dart_left.iter().map(|&d| Some(d)).collect(),
            copy_right: inc.copy_dart_right.iter().map(|&d| Some(d)).collect(),
            to_top: (0..inc.incised.dart_count())
                .map(|d| Some(DartId(d as u32)))
                .collect(),
        };
        solve(node, &ctx, orientation, &mut candidates, &mut trace);
    }
    Ok(finish(e, p, inc, candidates, trace))
}

/// Reference answer: one shortest-path query per internal index and
/// orientation on the full incised graph.
pub fn brute_crossing_once(e: &Embedding, p: &DirectedPath) -> Result<ReifAnswer, SurgeryError> {
    brute_with_table(e, p).map(|(a, _)| a)
}

/// Brute force plus the per-index distance table `table[i][orientation]`.
pub fn brute_with_table(
    e: &Embedding,
    p: &DirectedPath,
) -> Result<(ReifAnswer, Vec<[Weight; 2]>), SurgeryError> {
    let m = p.darts.len();
    if m < 2 {
        return Ok((ReifAnswer::none(), vec![[Weight::INF; 2]; m + 1]));
    }
    let inc = incise(e, p)?;
    let g = &inc.incised;
    let mut table = vec![[Weight::INF; 2]; m + 1];
    let mut candidates = Vec::new();
    for i in 1..m {
        for orientation in CrossingOrientation::BOTH {
            let (src, dst) = match orientation {
                CrossingOrientation::RightToLeft => (inc.copy0[i], inc.copy1[i]),
                CrossingOrientation::LeftToRight => (inc.copy1[i], inc.copy0[i]),
            };
            let tree = dijkstra(g, src);
            let dist = tree.dist[dst.index()];
            table[i][orientation.slot()] = dist;
            if dist.is_finite() {
                let path = extract_path(g, &tree, dst).unwrap();
                candidates.push(Candidate {
                    length: dist,
                    index: i,
                    orientation,
                    top_darts: path.darts,
                });
            }
        }
    }
    let run = finish(e, p, inc, candidates, None);
    Ok((run.answer, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{embedding_from_points, grid, grid_row_endpoints};
    use crate::oracle::audit_cycle;
    use crate::paths::{crossing_number, WalkRef};

    fn w(x: u64) -> Weight {
        Weight::finite(x)
    }

    fn grid_row_path(e: &Embedding, side: usize) -> DirectedPath {
        let (s, t) = grid_row_endpoints(side);
        let tree = dijkstra(e, s);
        extract_path(e, &tree, t).unwrap()
    }

    /// Annulus: three rings of four vertices; the middle ring is a cheap
    /// directed cycle crossing the radial path once.
    fn annulus() -> (Embedding, DirectedPath) {
        let mut points = Vec::new();
        for r in 0..3 {
            for c in 0..4 {
                let radius = 1.0 + r as f64;
                let theta = -std::f64::consts::FRAC_PI_2 * c as f64;
                points.push((radius * theta.cos(), radius * theta.sin()));
            }
        }
        let idx = |r: u32, c: u32| r * 4 + c;
        let mut edges = Vec::new();
        for r in 0..3u32 {
            for c in 0..4u32 {
                // ring arcs, bidirected weight 1
                edges.push(EdgeSpec::new(
                    idx(r, c),
                    idx(r, (c + 1) % 4),
                    w(1),
                    w(1),
                ));
            }
        }
        for r in 0..2u32 {
            for c in 0..4u32 {
                // radial arcs, expensive
                edges.push(EdgeSpec::new(idx(r, c), idx(r + 1, c), w(10), w(10)));
            }
        }
        let e = embedding_from_points(&points, &edges, None).unwrap();
        // radial path from the outer ring to the inner: crosses ring 1
        let tree = dijkstra(&e, VertexId(idx(0, 0)));
        let p = extract_path(&e, &tree, VertexId(idx(2, 0))).unwrap();
        (e, p)
    }

    #[test]
    fn annulus_ring_cycle_found() {
        let (e, p) = annulus();
        let fast = shortest_cycle_crossing_once(&e, &p).unwrap();
        let brute = brute_crossing_once(&e, &p).unwrap();
        assert_eq!(fast.length, brute.length);
        assert_eq!(fast.length, w(4), "middle ring of four unit arcs");
        let best = fast.best.unwrap();
        let report = audit_cycle(&e, &best.cycle, Some(&p));
        assert!(report.ok, "{:?}", report.violation);
    }

    #[test]
    fn one_way_rings_leave_one_orientation_empty() {
        // ring arcs one-way, so cycles cross the radial path in only one
        // orientation
        let mut points = Vec::new();
        for r in 0..3 {
            for c in 0..4 {
                let radius = 1.0 + r as f64;
                let theta = -std::f64::consts::FRAC_PI_2 * c as f64;
                points.push((radius * theta.cos(), radius * theta.sin()));
            }
        }
        let idx = |r: u32, c: u32| r * 4 + c;
        let mut edges = Vec::new();
        for r in 0..3u32 {
            for c in 0..4u32 {
                edges.push(EdgeSpec::new(
                    idx(r, c),
                    idx(r, (c + 1) % 4),
                    w(1),
                    Weight::INF,
                ));
            }
        }
        for r in 0..2u32 {
            for c in 0..4u32 {
                edges.push(EdgeSpec::new(idx(r, c), idx(r + 1, c), w(10), w(10)));
            }
        }
        let e = embedding_from_points(&points, &edges, None).unwrap();
        let tree = dijkstra(&e, VertexId(0));
        let p = extract_path(&e, &tree, VertexId(idx(2, 0))).unwrap();
        let (_, table) = brute_with_table(&e, &p).unwrap();
        // exactly one orientation is finite at the middle ring index
        let finite: Vec<[bool; 2]> = table
            .iter()
            .map(|row| [row[0].is_finite(), row[1].is_finite()])
            .collect();
        let crossing_rows: Vec<&[bool; 2]> =
            finite.iter().filter(|r| r[0] || r[1]).collect();
        assert!(!crossing_rows.is_empty());
        for row in crossing_rows {
            assert!(row[0] != row[1], "only one orientation admits a crossing");
        }
        let fast = shortest_cycle_crossing_once(&e, &p).unwrap();
        let brute = brute_crossing_once(&e, &p).unwrap();
        assert_eq!(fast.length, brute.length);
    }

    #[test]
    fn trivial_paths_yield_nothing() {
        let (e, _) = annulus();
        let single = DirectedPath {
            darts: vec![DartId(0)],
            length: e.weight(DartId(0)),
        };
        let a = shortest_cycle_crossing_once(&e, &single).unwrap();
        assert!(a.best.is_none());
        assert!(a.length.is_inf());
        let b = brute_crossing_once(&e, &single).unwrap();
        assert!(b.length.is_inf());
    }

    #[test]
    fn triangle_arc_cannot_be_crossed() {
        // A path consisting of one arc of a 3-cycle has no internal vertex;
        // the cycle only touches the path's endpoints, which is not a
        // crossing.
        let e = crate::testutil::directed_triangle([1, 2, 3]);
        let p = DirectedPath {
            darts: vec![DartId(0)],
            length: w(1),
        };
        let a = brute_crossing_once(&e, &p).unwrap();
        assert!(a.length.is_inf());
    }

    #[test]
    fn grids_match_brute_force() {
        for seed in 0..30u64 {
            let side = 5 + (seed % 4) as usize;
            let e = grid(side, seed, (1, 64));
            let p = grid_row_path(&e, side);
            let fast = shortest_cycle_crossing_once(&e, &p).unwrap();
            let brute = brute_crossing_once(&e, &p).unwrap();
            assert_eq!(fast.length, brute.length, "side {side} seed {seed}");
            if let Some(best) = &fast.best {
                let report = audit_cycle(&e, &best.cycle, Some(&p));
                assert!(report.ok, "seed {seed}: {:?}", report.violation);
            }
        }
    }

    #[test]
    fn divide_distances_match_unrestricted() {
        for seed in 0..10u64 {
            let side = 6;
            let e = grid(side, seed, (1, 32));
            let p = grid_row_path(&e, side);
            let run = run(&e, &p, true).unwrap();
            let (_, table) = brute_with_table(&e, &p).unwrap();
            let trace = run.trace.unwrap();
            for i in 1..p.darts.len() {
                for slot in 0..2 {
                    let found = trace.found[i][slot]
                        .as_ref()
                        .map(|f| f.length)
                        .unwrap_or(Weight::INF);
                    assert_eq!(
                        found, table[i][slot],
                        "restricted vs unrestricted at i={i} slot={slot} seed={seed}"
                    );
                }
            }
        }
    }

    #[test]
    fn side_paths_do_not_cross_the_divider() {
        for seed in 0..6u64 {
            let e = grid(6, seed + 100, (1, 20));
            let p = grid_row_path(&e, 6);
            let run = run(&e, &p, true).unwrap();
            let trace = run.trace.unwrap();
            let g = &run.incision.as_ref().unwrap().incised;
            for &(slot, mid, lo, hi) in &trace.nodes {
                let mid_path = match &trace.found[mid][slot] {
                    Some(f) => &f.darts,
                    None => continue,
                };
                for j in lo..=hi {
                    if j == mid {
                        continue;
                    }
                    if let Some(fj) = &trace.found[j][slot] {
                        let n = crossing_number(
                            g,
                            WalkRef::open(&fj.darts),
                            WalkRef::open(mid_path),
                        );
                        assert_eq!(n, 0, "side path crosses its divider (seed {seed})");
                    }
                }
            }
        }
    }

    #[test]
    fn lowering_a_weight_never_raises_the_answer() {
        for seed in [5u64, 77, 123] {
            let side = 6;
            let e = grid(side, seed, (2, 40));
            let p = grid_row_path(&e, side);
            let base = shortest_cycle_crossing_once(&e, &p).unwrap().length;
            let path_edges: std::collections::HashSet<usize> =
                p.darts.iter().map(|d| d.edge()).collect();
            let mut edges = e.edge_specs();
            let k = (0..edges.len())
                .find(|k| !path_edges.contains(k))
                .unwrap();
            let v = edges[k].w_uv.value().unwrap();
            edges[k].w_uv = Weight::finite(v / 2);
            let e2 =
                Embedding::build(e.vertex_count(), &edges, &e.rotation_lists(), None).unwrap();
            let p2 = grid_row_path(&e2, side);
            if p2.darts == p.darts {
                let after = shortest_cycle_crossing_once(&e2, &p2).unwrap().length;
                assert!(after <= base, "seed {seed}");
            }
        }
    }
}
