//! Global shortest directed cycle by recursive division along shortest-path
//! separators, and the global minimum cut via the dual.
//!
//! At each strongly connected subproblem the graph is triangulated with
//! infinite-weight chords and divided along a balanced separator cycle made
//! of two canonical shortest paths plus one closing edge. A shortest cycle
//! either avoids crossing that curve — then it survives intact on one side
//! and the recursion finds it — or it crosses, in which case it crosses one
//! of the two tree paths exactly once (found by the crossing-once search) or
//! its crossing runs pass through one of the separator's corner vertices
//! (found by explicit shortest-cycle-through-vertex queries). Degree-two
//! chains may be contracted between levels; the two-arc cycles a contraction
//! would hide are harvested beforehand.

use crate::embed::{cut_dual, triangulate_infinite, DartId, Embedding, VertexId};
use crate::oracle;
use crate::paths::{dijkstra, dijkstra_excluding, extract_path, vertex_enclosure_parity, DirectedCycle, DirectedPath};
use crate::reif;
use crate::scc;
use crate::separator::shortest_path_separator;
use crate::surgery::{contract_degree_two, split_along_cycle};
use crate::weight::Weight;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("minimum cut requires a strongly connected graph")]
    NotStronglyConnected,
    #[error("minimum cut requires at least two vertices")]
    TooSmall,
    #[error("cut recovery failed: {0}")]
    DegenerateCut(String),
}

/// A directed cut: vertex bipartition with the severed arcs.
#[derive(Debug, Clone)]
pub struct Cut {
    pub x: Vec<VertexId>,
    pub y: Vec<VertexId>,
    /// Finite arcs from X to Y.
    pub crossing_darts: Vec<DartId>,
    pub capacity: Weight,
}

/// Minimum cut together with its witness cycle in the cut-weighted dual.
#[derive(Debug, Clone)]
pub struct MinCutResult {
    pub cut: Cut,
    /// Cycle in the dual; dart ids coincide with the primal darts crossed.
    pub dual_cycle: DirectedCycle,
    pub value: Weight,
}

#[derive(Clone, Debug)]
pub struct CfnOptions {
    /// Contract degree-two chains between recursion levels.
    pub contract: bool,
    /// Subproblems with at most this many faces go to the brute oracle.
    pub base_faces: usize,
    /// Run independent subproblems on the thread pool.
    pub parallel: bool,
    /// Separator root override for the top-level call.
    pub separator_root: Option<VertexId>,
    /// Record every separator path queried (for structural checks).
    pub collect_paths: bool,
}

impl Default for CfnOptions {
    fn default() -> Self {
        CfnOptions {
            contract: true,
            base_faces: 16,
            parallel: true,
            separator_root: None,
            collect_paths: false,
        }
    }
}

/// Structural record of one run.
#[derive(Debug, Default)]
pub struct CfnTrace {
    /// Separator tree paths queried, in the darts of the input embedding.
    pub queried_paths: Vec<Vec<DartId>>,
    /// Divide nodes visited.
    pub nodes: usize,
    /// Brute-force base cases taken.
    pub base_cases: usize,
}

#[derive(Clone, Debug)]
struct Cand {
    length: Weight,
    darts: Vec<DartId>,
}

fn merge(best: &mut Option<Cand>, other: Option<Cand>) {
    if let Some(o) = other {
        match best {
            None => *best = Some(o),
            Some(b) => {
                if (o.length, o.darts.len(), &o.darts) < (b.length, b.darts.len(), &b.darts) {
                    *best = Some(o);
                }
            }
        }
    }
}

fn map_cand(c: Option<Cand>, f: impl Fn(DartId) -> DartId) -> Option<Cand> {
    c.map(|c| Cand {
        length: c.length,
        darts: c.darts.into_iter().map(&f).collect(),
    })
}

/// Shortest self-loop or two-arc cycle; the candidates degree-two
/// contraction could otherwise lose. In edge-simple mode a cycle may not use
/// both darts of one edge, so only self-loops qualify.
fn local_cycle_candidates(e: &Embedding, edge_simple: bool) -> Option<Cand> {
    let mut best: Option<Cand> = None;
    for k in 0..e.edge_count() {
        let d = DartId((2 * k) as u32);
        if e.tail(d) == e.head(d) {
            for &loop_dart in &[d, d.twin()] {
                if e.weight(loop_dart).is_finite() {
                    merge(
                        &mut best,
                        Some(Cand {
                            length: e.weight(loop_dart),
                            darts: vec![loop_dart],
                        }),
                    );
                }
            }
        } else if !edge_simple && e.weight(d).is_finite() && e.weight(d.twin()).is_finite() {
            merge(
                &mut best,
                Some(Cand {
                    length: e.weight(d) + e.weight(d.twin()),
                    darts: vec![d, d.twin()],
                }),
            );
        }
    }
    best
}

/// Shortest directed cycle through a fixed vertex. In edge-simple mode the
/// return path must avoid the closing arc's own edge; the canonical tree
/// only conflicts when its path to the arc's tail is the bare reverse dart,
/// which triggers one masked recomputation.
fn cycle_through(e: &Embedding, x: VertexId, edge_simple: bool) -> Option<Cand> {
    let tree = dijkstra(e, x);
    let mut best: Option<(Weight, DartId, bool)> = None; // (length, dart, masked)
    for v in 0..e.vertex_count() {
        for &d in e.rotation(VertexId(v as u32)) {
            if e.head(d) != x {
                continue;
            }
            let w = e.weight(d);
            if w.is_inf() {
                continue;
            }
            if e.tail(d) == x {
                // self-loop at x
                if best.map_or(true, |(l, bd, _)| (w, d) < (l, bd)) {
                    best = Some((w, d, false));
                }
                continue;
            }
            let conflict =
                edge_simple && tree.parent_dart[e.tail(d).index()] == Some(d.twin());
            let (back, masked) = if conflict {
                (
                    dijkstra_excluding(e, x, d.twin()).dist[e.tail(d).index()],
                    true,
                )
            } else {
                (tree.dist[e.tail(d).index()], false)
            };
            if back.is_inf() {
                continue;
            }
            let total = back + w;
            if best.map_or(true, |(l, bd, _)| (total, d) < (l, bd)) {
                best = Some((total, d, masked));
            }
        }
    }
    let (length, d, masked) = best?;
    let mut darts = if e.tail(d) == x {
        Vec::new()
    } else if masked {
        let t = dijkstra_excluding(e, x, d.twin());
        extract_path(e, &t, e.tail(d)).unwrap().darts
    } else {
        extract_path(e, &tree, e.tail(d)).unwrap().darts
    };
    darts.push(d);
    Some(Cand { length, darts })
}

/// Strictly smaller subproblem, measured by edges then faces.
fn makes_progress(parent: &Embedding, child: &Embedding) -> bool {
    child.edge_count() < parent.edge_count()
        || (child.edge_count() == parent.edge_count()
            && child.face_count() < parent.face_count())
}

fn brute_cand(e: &Embedding, edge_simple: bool) -> Option<Cand> {
    let c = if edge_simple {
        oracle::brute_edge_simple_cycle(e)
    } else {
        oracle::brute_shortest_cycle(e)
    };
    c.map(|c| Cand {
        length: c.length,
        darts: c.darts,
    })
}

struct Ctx {
    opts: CfnOptions,
    edge_simple: bool,
    trace: std::sync::Mutex<CfnTrace>,
}

impl Ctx {
    fn record_paths(&self, paths: Vec<Vec<DartId>>) {
        if self.opts.collect_paths {
            self.trace.lock().unwrap().queried_paths.extend(paths);
        }
    }
}

/// Recursive search; `root` only applies at the entry level. Returns the
/// best cycle in the darts of `e`, together with queried paths in `e`'s
/// darts when collection is on.
fn best_cycle(e: &Embedding, ctx: &Ctx, root: Option<VertexId>, depth: usize) -> Option<Cand> {
    {
        let mut t = ctx.trace.lock().unwrap();
        t.nodes += 1;
    }
    let mut best = local_cycle_candidates(e, ctx.edge_simple);

    // Work per strongly connected component; directed cycles never leave one.
    let comp = scc::components(e);
    let single = comp.iter().all(|&c| c == comp[0]);
    if !single {
        let comp_count = comp.iter().copied().max().unwrap_or(0) + 1;
        for c in 0..comp_count {
            if let Some(sub) = scc::induced_component(e, &comp, c) {
                let rec = best_cycle(&sub.embedding, ctx, None, depth + 1);
                merge(
                    &mut best,
                    map_cand(rec, |d| sub.dart_to_parent[d.index()]),
                );
            }
        }
        return best;
    }

    if e.face_count() <= ctx.opts.base_faces || e.vertex_count() < 4 {
        ctx.trace.lock().unwrap().base_cases += 1;
        merge(&mut best, brute_cand(e, ctx.edge_simple));
        return best;
    }

    let tri = triangulate_infinite(e);
    let t = &tri.embedding;
    let sep = shortest_path_separator(t, root).expect("strongly connected and triangulated");
    let map_t = |d: DartId| tri.dart_origin[d.index()].expect("finite darts are original");

    if ctx.opts.collect_paths {
        let mut paths = Vec::new();
        for p in [&sep.path_p, &sep.path_p_prime] {
            if !p.darts.is_empty() {
                paths.push(p.darts.iter().map(|&d| map_t(d)).collect());
            }
        }
        ctx.record_paths(paths);
    }

    // Conquer: cycles crossing the separator cycle. Such a cycle crosses one
    // of the two tree paths beyond the branch vertex exactly once, or its
    // crossing runs pass through a corner vertex of the separator cycle.
    let u = t.tail(sep.closing_dart);
    let v = t.head(sep.closing_dart);
    let branch = sep.branch;
    let subpath_beyond = |p: &DirectedPath| -> DirectedPath {
        // suffix of the tree path starting at the branch vertex
        let mut at = if p.darts.is_empty() {
            return DirectedPath::empty();
        } else {
            t.tail(p.darts[0])
        };
        let mut start = 0;
        for (i, &d) in p.darts.iter().enumerate() {
            if at == branch {
                start = i;
                break;
            }
            at = t.head(d);
            start = i + 1;
        }
        let darts: Vec<DartId> = p.darts[start..].to_vec();
        let length = darts.iter().map(|&d| t.weight(d)).sum();
        DirectedPath { darts, length }
    };
    for path in [subpath_beyond(&sep.path_p), subpath_beyond(&sep.path_p_prime)] {
        if path.darts.len() >= 2 {
            let ans = reif::shortest_cycle_crossing_once(t, &path)
                .expect("separator paths are simple");
            if let Some(rc) = ans.best {
                merge(
                    &mut best,
                    Some(Cand {
                        length: rc.cycle.length,
                        darts: rc.cycle.darts.iter().map(|&d| map_t(d)).collect(),
                    }),
                );
            }
        }
    }
    let mut corners = vec![sep.root, branch, u, v];
    corners.sort_unstable();
    corners.dedup();
    for x in corners {
        merge(&mut best, map_cand(cycle_through(t, x, ctx.edge_simple), map_t));
    }

    // Divide: both sides keep the separator cycle itself. Chords from this
    // level's triangulation are stripped from the children so the boundary
    // chains they pin down can contract away.
    let split = split_along_cycle(t, &sep.cycle).expect("separator cycle is simple");
    let run_part = |part: &crate::surgery::SplitPart| -> Option<Cand> {
        let stripped = match scc::strip_absent_edges(&part.embedding) {
            Some(s) => s,
            None => return None,
        };
        let mut local = local_cycle_candidates(&stripped.embedding, ctx.edge_simple);
        let rec = if ctx.opts.contract {
            let contraction = contract_degree_two(&stripped.embedding, &[]);
            let child = &contraction.contracted;
            let rec = if makes_progress(e, child) {
                best_cycle(child, ctx, None, depth + 1)
            } else {
                // termination guard; not expected on sane inputs
                brute_cand(child, ctx.edge_simple)
            };
            rec.map(|c| Cand {
                length: c.length,
                darts: contraction.expand_walk(&c.darts),
            })
        } else if makes_progress(e, &stripped.embedding) {
            best_cycle(&stripped.embedding, ctx, None, depth + 1)
        } else {
            brute_cand(&stripped.embedding, ctx.edge_simple)
        };
        merge(&mut local, rec);
        map_cand(local, |d| {
            map_t(part.dart_to_parent[stripped.dart_to_parent[d.index()].index()])
        })
    };
    if ctx.opts.parallel && t.vertex_count() > 2048 {
        let (a, b) = rayon::join(|| run_part(&split.interior), || run_part(&split.exterior));
        merge(&mut best, a);
        merge(&mut best, b);
    } else {
        merge(&mut best, run_part(&split.interior));
        merge(&mut best, run_part(&split.exterior));
    }
    best
}

/// Globally shortest directed cycle, if the graph has one.
pub fn shortest_cycle(e: &Embedding) -> Option<DirectedCycle> {
    shortest_cycle_with(e, &CfnOptions::default())
}

pub fn shortest_cycle_with(e: &Embedding, opts: &CfnOptions) -> Option<DirectedCycle> {
    shortest_cycle_traced(e, opts).0
}

/// As [`shortest_cycle_with`], also returning the run's structural trace.
pub fn shortest_cycle_traced(
    e: &Embedding,
    opts: &CfnOptions,
) -> (Option<DirectedCycle>, CfnTrace) {
    cycle_search(e, opts, false)
}

/// Shortest cycle that never uses both darts of one edge; the notion the
/// cut-cycle correspondence needs on the dual side.
pub fn shortest_edge_simple_cycle_with(e: &Embedding, opts: &CfnOptions) -> Option<DirectedCycle> {
    cycle_search(e, opts, true).0
}

fn cycle_search(
    e: &Embedding,
    opts: &CfnOptions,
    edge_simple: bool,
) -> (Option<DirectedCycle>, CfnTrace) {
    let ctx = Ctx {
        opts: opts.clone(),
        edge_simple,
        trace: std::sync::Mutex::new(CfnTrace::default()),
    };
    let best = best_cycle(e, &ctx, opts.separator_root, 0);
    let trace = ctx.trace.into_inner().unwrap();
    let cycle = best.map(|c| {
        let cycle = DirectedCycle::from_darts(e, c.darts);
        debug_assert_eq!(cycle.length, c.length);
        if opts.collect_paths {
            canonicalize_against_paths(e, cycle, &trace.queried_paths)
        } else {
            cycle
        }
    });
    (cycle, trace)
}

/// Exchange-normalizes a shortest cycle: wherever it meets a queried
/// shortest path in more than one stretch, the stretch between the cycle's
/// first and last contact is replaced by the path's own subpath. The splice
/// has equal length (both are shortest), so the result is still a shortest
/// cycle, now sharing a single contiguous subpath with each queried path.
fn canonicalize_against_paths(
    e: &Embedding,
    mut cycle: DirectedCycle,
    paths: &[Vec<DartId>],
) -> DirectedCycle {
    let original = cycle.length;
    for _round in 0..paths.len().max(4) {
        let mut changed = false;
        for path in paths {
            let mut pv = vec![e.tail(path[0])];
            for &d in path {
                pv.push(e.head(d));
            }
            let pos: std::collections::HashMap<VertexId, usize> =
                pv.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            // cycle positions that sit on the path, with their path index
            let hits: Vec<(usize, usize)> = cycle
                .darts
                .iter()
                .enumerate()
                .filter_map(|(ci, &d)| pos.get(&e.tail(d)).map(|&pi| (ci, pi)))
                .collect();
            if hits.len() < 2 {
                continue;
            }
            let (lo, hi) = hits
                .iter()
                .fold((usize::MAX, 0), |(a, b), &(_, pi)| (a.min(pi), b.max(pi)));
            let span: std::collections::HashSet<usize> = (lo..hi).collect();
            let on_span: std::collections::HashSet<usize> = cycle
                .darts
                .iter()
                .map(|d| d.edge())
                .filter(|k| path[lo..hi].iter().any(|d| d.edge() == *k))
                .collect();
            let contiguous = hits.iter().map(|&(_, pi)| pi).collect::<std::collections::HashSet<_>>().len()
                == hi - lo + 1
                && on_span.len() == span.len();
            if contiguous {
                continue;
            }
            // splice: keep the cycle from its visit of pv[hi] around to its
            // visit of pv[lo], then run along the path lo..hi
            let ci_lo = hits.iter().find(|&&(_, pi)| pi == lo).unwrap().0;
            let ci_hi = hits.iter().find(|&&(_, pi)| pi == hi).unwrap().0;
            if ci_lo == ci_hi {
                continue;
            }
            let mut darts: Vec<DartId> = Vec::new();
            let n = cycle.darts.len();
            let mut i = ci_hi;
            while i != ci_lo {
                darts.push(cycle.darts[i]);
                i = (i + 1) % n;
            }
            darts.extend_from_slice(&path[lo..hi]);
            // valid closed walk of the same length, without dart repeats?
            let closed = (0..darts.len()).all(|i| {
                e.head(darts[i]) == e.tail(darts[(i + 1) % darts.len()])
            });
            let distinct = {
                let mut seen = std::collections::HashSet::new();
                darts.iter().all(|d| seen.insert(*d))
            };
            if !closed || !distinct {
                continue;
            }
            let candidate = DirectedCycle::from_darts(e, darts);
            if candidate.length == original {
                cycle = candidate;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    cycle
}

/// Strips dart/twin pairs from a dual cycle witness. At the minimum any
/// such pair carries zero total weight (otherwise the remainder would be a
/// shorter cycle), so the stripped walk has the same length; we keep the
/// remainder piece that still crosses something.
fn normalize_dual_cycle(dual: &Embedding, cycle: DirectedCycle) -> DirectedCycle {
    let mut darts = cycle.darts;
    'outer: loop {
        let pos: std::collections::HashMap<DartId, usize> =
            darts.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        for (i, &d) in darts.iter().enumerate() {
            if let Some(&j) = pos.get(&d.twin()) {
                if i < j {
                    let arc1: Vec<DartId> = darts[i + 1..j].to_vec();
                    let arc2: Vec<DartId> =
                        darts[j + 1..].iter().chain(darts[..i].iter()).copied().collect();
                    let pick = |arc: &Vec<DartId>| -> bool {
                        !arc.is_empty() && {
                            let mut mult = std::collections::HashMap::new();
                            for &x in arc.iter() {
                                *mult.entry(x.edge()).or_insert(0u32) ^= 1;
                            }
                            mult.values().any(|&m| m == 1)
                        }
                    };
                    darts = if pick(&arc1) {
                        arc1
                    } else if pick(&arc2) {
                        arc2
                    } else if !arc1.is_empty() {
                        arc1
                    } else {
                        arc2
                    };
                    continue 'outer;
                }
            }
        }
        break;
    }
    DirectedCycle::from_darts(dual, darts)
}

/// Global minimum cut of a strongly connected embedding: a shortest cycle in
/// the cut-weighted dual, with the bipartition recovered from the cycle's
/// enclosure in the primal plane.
pub fn min_cut(e: &Embedding) -> Result<MinCutResult, CutError> {
    min_cut_with(e, &CfnOptions::default())
}

pub fn min_cut_with(e: &Embedding, opts: &CfnOptions) -> Result<MinCutResult, CutError> {
    if e.vertex_count() < 2 {
        return Err(CutError::TooSmall);
    }
    if !scc::is_strongly_connected(e) {
        return Err(CutError::NotStronglyConnected);
    }
    let d = cut_dual(e);
    let dual_cycle = shortest_edge_simple_cycle_with(&d.embedding, opts)
        .ok_or_else(|| CutError::DegenerateCut("dual has no cycle".into()))?;
    let dual_cycle = normalize_dual_cycle(&d.embedding, dual_cycle);

    // Dual dart ids are primal dart ids: the cycle's curve crosses exactly
    // those primal edges. Vertices on the tail side of the crossed arcs form
    // X of the cut.
    let anchor = d.face_vertex[d.embedding.infinite_face().index()];
    let parity = vertex_enclosure_parity(e, &dual_cycle.darts, anchor);
    let x_side = parity[e.tail(dual_cycle.darts[0]).index()];
    let mut x = Vec::new();
    let mut y = Vec::new();
    for v in 0..e.vertex_count() {
        if parity[v] == x_side {
            x.push(VertexId(v as u32));
        } else {
            y.push(VertexId(v as u32));
        }
    }
    if x.is_empty() || y.is_empty() {
        return Err(CutError::DegenerateCut(
            "cycle encloses no bipartition".into(),
        ));
    }
    for &cd in &dual_cycle.darts {
        if parity[e.tail(cd).index()] != x_side || parity[e.head(cd).index()] == x_side {
            return Err(CutError::DegenerateCut(format!(
                "cycle dart {cd:?} does not cross from X to Y"
            )));
        }
    }
    let mut crossing_darts = Vec::new();
    let mut capacity = Weight::ZERO;
    for dart in 0..e.dart_count() {
        let dart = DartId(dart as u32);
        if e.weight(dart).is_inf() {
            continue;
        }
        if parity[e.tail(dart).index()] == x_side && parity[e.head(dart).index()] != x_side {
            capacity = capacity + e.weight(dart);
            crossing_darts.push(dart);
        }
    }
    if capacity != dual_cycle.length {
        return Err(CutError::DegenerateCut(format!(
            "capacity {} != dual cycle length {}",
            capacity, dual_cycle.length
        )));
    }
    Ok(MinCutResult {
        value: capacity,
        cut: Cut {
            x,
            y,
            crossing_darts,
            capacity,
        },
        dual_cycle,
    })
}
