//! Shortest-path separators: a fundamental cycle of the canonical
//! shortest-path tree whose closing edge balances the faces one-third /
//! two-thirds.
//!
//! Balance comes from the interdigitating dual spanning tree: the non-tree
//! edges of any primal spanning tree form a spanning tree of the dual, and
//! the faces enclosed by the fundamental cycle of a non-tree edge are exactly
//! the dual subtree hanging below its dual edge. With every face bounded by
//! at most three sides the dual tree has maximum degree three, which forces
//! some edge to split the faces no worse than two-thirds to one-third.

use crate::embed::{DartId, Embedding, FaceId, VertexId};
use crate::paths::{dijkstra, extract_path, DirectedPath};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeparatorError {
    #[error("graph is not strongly connected from the chosen root")]
    NotStronglyConnected,
    #[error("graph has a face with more than three sides")]
    NotTriangulated,
    #[error("graph has no non-tree edge to close a cycle")]
    NoClosingEdge,
}

/// A balanced shortest-path separator.
pub struct Separator {
    pub root: VertexId,
    /// The closing edge `uv`, oriented `u -> v`.
    pub closing_dart: DartId,
    /// Tree path root -> u.
    pub path_p: DirectedPath,
    /// Tree path root -> v.
    pub path_p_prime: DirectedPath,
    pub inside_faces: u64,
    pub outside_faces: u64,
    /// The simple cycle: the two tree paths beyond their last common vertex
    /// plus the closing edge, as a closed dart walk.
    pub cycle: Vec<DartId>,
    /// Last common vertex of the two tree paths (the cycle's branch point).
    pub branch: VertexId,
}

pub(crate) struct ClosingChoice {
    pub closing_dart: DartId,
    pub inside: u64,
    pub outside: u64,
}

/// Picks the non-tree edge whose fundamental cycle best balances the face
/// weights, via dual subtree sums. `parent_dart[v]` is the tree dart entering
/// `v`, `None` at the root.
pub(crate) fn best_balanced_closing_edge(
    e: &Embedding,
    parent_dart: &[Option<DartId>],
    face_weight: impl Fn(usize) -> u64,
) -> Result<ClosingChoice, SeparatorError> {
    let mut in_tree = vec![false; e.edge_count()];
    for pd in parent_dart.iter().flatten() {
        in_tree[pd.edge()] = true;
    }

    // Dual spanning tree over faces using non-tree edges, rooted at the
    // infinite face.
    let fcount = e.face_count();
    let mut parent_face: Vec<Option<(FaceId, usize)>> = vec![None; fcount];
    let mut order = Vec::with_capacity(fcount);
    let mut seen = vec![false; fcount];
    let root_face = e.infinite_face();
    seen[root_face.index()] = true;
    let mut stack = vec![root_face];
    while let Some(f) = stack.pop() {
        order.push(f);
        for d in e.face_darts(f) {
            if in_tree[d.edge()] {
                continue;
            }
            let g = e.face_of(d.twin());
            if !seen[g.index()] {
                seen[g.index()] = true;
                parent_face[g.index()] = Some((f, d.edge()));
                stack.push(g);
            }
        }
    }
    if order.len() != fcount {
        // cannot happen for a spanning tree of a connected embedding
        return Err(SeparatorError::NoClosingEdge);
    }

    let total: u64 = (0..fcount).map(&face_weight).sum();
    let mut subtree: Vec<u64> = (0..fcount).map(&face_weight).collect();
    for &f in order.iter().rev() {
        if let Some((p, _)) = parent_face[f.index()] {
            subtree[p.index()] += subtree[f.index()];
        }
    }

    let mut best: Option<(u64, DartId, u64)> = None; // (max side, dart, inside)
    for f in 0..fcount {
        if let Some((_, k)) = parent_face[f] {
            let inside = subtree[f];
            let outside = total - inside;
            let score = inside.max(outside);
            let dart = DartId((2 * k) as u32);
            match best {
                Some((s, d, _)) if (score, dart) >= (s, d) => {}
                _ => best = Some((score, dart, inside)),
            }
        }
    }
    let (_, closing_dart, inside) = best.ok_or(SeparatorError::NoClosingEdge)?;
    Ok(ClosingChoice {
        closing_dart,
        inside,
        outside: total - inside,
    })
}

/// Parent darts of a breadth-first spanning tree of the skeleton, ignoring
/// weights and directions. Used where only balance matters.
pub(crate) fn undirected_bfs_tree(e: &Embedding, root: VertexId) -> Vec<Option<DartId>> {
    let n = e.vertex_count();
    let mut parent: Vec<Option<DartId>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[root.index()] = true;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        for &d in e.rotation(v) {
            let u = e.head(d);
            if !seen[u.index()] {
                seen[u.index()] = true;
                parent[u.index()] = Some(d);
                queue.push_back(u);
            }
        }
    }
    parent
}

/// Builds the simple fundamental cycle of `closing_dart` over the given tree:
/// the two tree paths beyond their last common vertex plus the closing edge.
pub(crate) fn fundamental_cycle(
    e: &Embedding,
    parent_dart: &[Option<DartId>],
    closing_dart: DartId,
) -> (Vec<DartId>, VertexId) {
    let u = e.tail(closing_dart);
    let v = e.head(closing_dart);
    let ancestors_u: Vec<VertexId> = {
        let mut out = vec![u];
        let mut cur = u;
        while let Some(d) = parent_dart[cur.index()] {
            cur = e.tail(d);
            out.push(cur);
        }
        out
    };
    let on_u_path: std::collections::HashSet<VertexId> = ancestors_u.iter().copied().collect();
    let mut branch = v;
    while !on_u_path.contains(&branch) {
        branch = e.tail(parent_dart[branch.index()].expect("tree spans both endpoints"));
    }
    // darts branch -> u along the tree
    let mut up: Vec<DartId> = Vec::new();
    let mut cur = u;
    while cur != branch {
        let d = parent_dart[cur.index()].unwrap();
        up.push(d);
        cur = e.tail(d);
    }
    up.reverse();
    // darts v -> branch are the twins of the tree darts branch -> v
    let mut down: Vec<DartId> = Vec::new();
    let mut cur = v;
    while cur != branch {
        let d = parent_dart[cur.index()].unwrap();
        down.push(d.twin());
        cur = e.tail(d);
    }
    let mut cycle = up;
    cycle.push(closing_dart);
    cycle.extend(down);
    (cycle, branch)
}

/// Computes a balanced shortest-path separator from `root` (vertex 0 when
/// absent). Requires every face to have at most three sides and every vertex
/// reachable from the root along finite darts.
pub fn shortest_path_separator(
    e: &Embedding,
    root: Option<VertexId>,
) -> Result<Separator, SeparatorError> {
    for f in 0..e.face_count() {
        if e.face_sides(FaceId(f as u32)) > 3 {
            return Err(SeparatorError::NotTriangulated);
        }
    }
    let root = root.unwrap_or(VertexId(0));
    let tree = dijkstra(e, root);
    if tree.dist.iter().any(|d| d.is_inf()) {
        return Err(SeparatorError::NotStronglyConnected);
    }
    let choice = best_balanced_closing_edge(e, &tree.parent_dart, |_| 1)?;
    let total = e.face_count() as u64;
    let bound = (2 * total).div_ceil(3);
    assert!(
        choice.inside.max(choice.outside) <= bound,
        "face balance exceeded the guaranteed two-thirds bound"
    );
    let u = e.tail(choice.closing_dart);
    let v = e.head(choice.closing_dart);
    let path_p = extract_path(e, &tree, u).expect("tree spans u");
    let path_p_prime = extract_path(e, &tree, v).expect("tree spans v");
    let (cycle, branch) = fundamental_cycle(e, &tree.parent_dart, choice.closing_dart);
    Ok(Separator {
        root,
        closing_dart: choice.closing_dart,
        path_p,
        path_p_prime,
        inside_faces: choice.inside,
        outside_faces: choice.outside,
        cycle,
        branch,
    })
}
