//! Independent brute-force references: shortest directed cycle by per-arc
//! shortest paths, minimum cut by bipartition enumeration, and a cycle
//! auditor. All comparisons against these run on exact integer weights.

use crate::cfn::Cut;
use crate::embed::{DartId, Embedding, VertexId};
use crate::paths::{crossing_number, dijkstra, extract_path, DirectedCycle, DirectedPath, WalkRef};
use crate::weight::Weight;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("bipartition enumeration is capped at 20 vertices, got {0}")]
    TooLarge(usize),
    #[error("a cut needs at least two vertices")]
    TooSmall,
}

/// Shortest directed cycle: for every finite arc, the arc plus the shortest
/// way back.
pub fn brute_shortest_cycle(e: &Embedding) -> Option<DirectedCycle> {
    let mut best: Option<(Weight, DartId)> = None;
    for v in 0..e.vertex_count() {
        let v = VertexId(v as u32);
        let tree = dijkstra(e, v);
        for &d in e.rotation(v) {
            // darts whose head is v close a cycle through v
            let d = d.twin();
            let w = e.weight(d);
            if w.is_inf() {
                continue;
            }
            let back = tree.dist[e.tail(d).index()];
            if back.is_inf() {
                continue;
            }
            let total = w + back;
            if best.map_or(true, |(l, bd)| (total, d) < (l, bd)) {
                best = Some((total, d));
            }
        }
    }
    let (length, d) = best?;
    let tree = dijkstra(e, e.head(d));
    let back = extract_path(e, &tree, e.tail(d)).expect("argmin is reachable");
    let mut darts = vec![d];
    darts.extend(back.darts);
    let cycle = DirectedCycle::from_darts(e, darts);
    debug_assert_eq!(cycle.length, length);
    Some(cycle)
}

/// Shortest directed cycle that never uses both darts of one embedded edge.
///
/// This is the cycle notion the cut-cycle correspondence needs on the dual
/// side: crossing an edge out and back severs nothing, so such walks may be
/// shorter than every real cut and must be excluded there. (In the primal, a
/// two-arc cycle along one edge is a perfectly good directed cycle and
/// [`brute_shortest_cycle`] keeps it.)
pub fn brute_edge_simple_cycle(e: &Embedding) -> Option<DirectedCycle> {
    let mut best: Option<(Weight, DartId)> = None;
    for v in 0..e.vertex_count() {
        let v = VertexId(v as u32);
        for &d in e.rotation(v) {
            let d = d.twin(); // darts with head v
            let w = e.weight(d);
            if w.is_inf() {
                continue;
            }
            if e.tail(d) == e.head(d) {
                // self-loops close on their own
                if best.map_or(true, |(l, bd)| (w, d) < (l, bd)) {
                    best = Some((w, d));
                }
                continue;
            }
            let tree = crate::paths::dijkstra_excluding(e, v, d.twin());
            let back = tree.dist[e.tail(d).index()];
            if back.is_inf() {
                continue;
            }
            let total = w + back;
            if best.map_or(true, |(l, bd)| (total, d) < (l, bd)) {
                best = Some((total, d));
            }
        }
    }
    let (length, d) = best?;
    let mut darts = vec![d];
    if e.tail(d) != e.head(d) {
        let tree = crate::paths::dijkstra_excluding(e, e.head(d), d.twin());
        let back = extract_path(e, &tree, e.tail(d)).expect("argmin is reachable");
        darts.extend(back.darts);
    }
    let cycle = DirectedCycle::from_darts(e, darts);
    debug_assert_eq!(cycle.length, length);
    Some(cycle)
}

/// Minimum directed cut by enumerating all bipartitions.
pub fn brute_min_cut(e: &Embedding) -> Result<Cut, OracleError> {
    let n = e.vertex_count();
    if n < 2 {
        return Err(OracleError::TooSmall);
    }
    if n > 20 {
        return Err(OracleError::TooLarge(n));
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best: Option<(Weight, u32)> = None;
    for mask in 1..full {
        let mut cap = Weight::ZERO;
        for d in 0..e.dart_count() {
            let d = DartId(d as u32);
            let w = e.weight(d);
            if w.is_inf() {
                continue;
            }
            let t = e.tail(d).0;
            let h = e.head(d).0;
            if mask & (1 << t) != 0 && mask & (1 << h) == 0 {
                cap = cap + w;
            }
        }
        if best.map_or(true, |(c, m)| (cap, mask) < (c, m)) {
            best = Some((cap, mask));
        }
    }
    let (capacity, mask) = best.expect("n >= 2 gives at least two bipartitions");
    let mut x = Vec::new();
    let mut y = Vec::new();
    for v in 0..n as u32 {
        if mask & (1 << v) != 0 {
            x.push(VertexId(v));
        } else {
            y.push(VertexId(v));
        }
    }
    let crossing_darts: Vec<DartId> = (0..e.dart_count() as u32)
        .map(DartId)
        .filter(|&d| {
            e.weight(d).is_finite()
                && mask & (1 << e.tail(d).0) != 0
                && mask & (1 << e.head(d).0) == 0
        })
        .collect();
    Ok(Cut {
        x,
        y,
        crossing_darts,
        capacity,
    })
}

/// Outcome of auditing a cycle.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub ok: bool,
    pub violation: Option<String>,
}

impl AuditReport {
    fn fail(msg: String) -> AuditReport {
        AuditReport {
            ok: false,
            violation: Some(msg),
        }
    }

    fn pass() -> AuditReport {
        AuditReport {
            ok: true,
            violation: None,
        }
    }
}

/// Verifies closedness, dart validity and distinctness, length arithmetic,
/// and optionally that the cycle crosses `p` exactly once.
pub fn audit_cycle(e: &Embedding, c: &DirectedCycle, p: Option<&DirectedPath>) -> AuditReport {
    if c.darts.is_empty() {
        return AuditReport::fail("cycle has no darts".into());
    }
    for &d in &c.darts {
        if d.index() >= e.dart_count() {
            return AuditReport::fail(format!("{d:?} out of range"));
        }
        if e.weight(d).is_inf() {
            return AuditReport::fail(format!("{d:?} has infinite weight"));
        }
    }
    for i in 0..c.darts.len() {
        let a = c.darts[i];
        let b = c.darts[(i + 1) % c.darts.len()];
        if e.head(a) != e.tail(b) {
            return AuditReport::fail(format!("{a:?} -> {b:?} breaks the walk"));
        }
    }
    {
        let mut seen = std::collections::HashSet::new();
        for &d in &c.darts {
            if !seen.insert(d) {
                return AuditReport::fail(format!("{d:?} repeated"));
            }
        }
    }
    let sum: Weight = c.darts.iter().map(|&d| e.weight(d)).sum();
    if sum != c.length {
        return AuditReport::fail(format!("stored length {} != dart sum {}", c.length, sum));
    }
    if let Some(p) = p {
        let n = crossing_number(e, WalkRef::cycle(c), WalkRef::open(&p.darts));
        if n.abs() != 1 {
            return AuditReport::fail(format!("crossing number {n}, expected +-1"));
        }
    }
    AuditReport::pass()
}
