//! Strongly connected components of the finite-dart digraph.

use crate::embed::{DartId, Embedding, VertexId};

/// Component id per vertex, counting only finite-weight darts.
pub fn components(e: &Embedding) -> Vec<u32> {
    let n = e.vertex_count();
    let adj: Vec<Vec<u32>> = (0..n)
        .map(|v| {
            e.rotation(VertexId(v as u32))
                .iter()
                .filter(|&&d| e.weight(d).is_finite())
                .map(|&d| e.head(d).0)
                .collect()
        })
        .collect();
    components_adj(&adj)
}

/// Iterative Tarjan over an adjacency list.
pub fn components_adj(adj: &[Vec<u32>]) -> Vec<u32> {
    let n = adj.len();
    let mut index = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![u32::MAX; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut next_index = 0u32;
    let mut comp_count = 0u32;

    // Explicit DFS stack of (vertex, next edge position).
    let mut call: Vec<(u32, usize)> = Vec::new();
    for start in 0..n as u32 {
        if index[start as usize] != u32::MAX {
            continue;
        }
        call.push((start, 0));
        index[start as usize] = next_index;
        low[start as usize] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start as usize] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v as usize].len() {
                let w = adj[v as usize][*pos];
                *pos += 1;
                if index[w as usize] == u32::MAX {
                    index[w as usize] = next_index;
                    low[w as usize] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    call.push((w, 0));
                } else if on_stack[w as usize] {
                    low[v as usize] = low[v as usize].min(index[w as usize]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent as usize] = low[parent as usize].min(low[v as usize]);
                }
                if low[v as usize] == index[v as usize] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        comp[w as usize] = comp_count;
                        if w == v {
                            break;
                        }
                    }
                    comp_count += 1;
                }
            }
        }
    }
    comp
}

pub fn strongly_connected_adj(adj: &[Vec<u32>]) -> bool {
    let comp = components_adj(adj);
    comp.iter().all(|&c| c == 0)
}

/// True if every vertex can reach every other along finite darts.
pub fn is_strongly_connected(e: &Embedding) -> bool {
    let comp = components(e);
    comp.iter().all(|&c| c == comp[0])
}

/// An induced sub-embedding for one component, with provenance maps.
pub struct InducedSubgraph {
    pub embedding: Embedding,
    pub vertex_to_parent: Vec<VertexId>,
    pub dart_to_parent: Vec<DartId>,
}

/// Extracts the sub-embedding induced by the vertices of component `c`,
/// keeping only edges internal to it. Inter-component edges carry no directed
/// cycle, so dropping them preserves every cycle of the component.
pub fn induced_component(e: &Embedding, comp: &[u32], c: u32) -> Option<InducedSubgraph> {
    let mut vertex_to_parent = Vec::new();
    let mut vmap = vec![u32::MAX; e.vertex_count()];
    for v in 0..e.vertex_count() {
        if comp[v] == c {
            vmap[v] = vertex_to_parent.len() as u32;
            vertex_to_parent.push(VertexId(v as u32));
        }
    }
    if vertex_to_parent.len() < 2 {
        return None;
    }
    let mut edges = Vec::new();
    let mut dart_to_parent = Vec::new();
    let mut emap = vec![u32::MAX; e.edge_count()];
    for k in 0..e.edge_count() {
        let d = DartId((2 * k) as u32);
        let (u, v) = (e.tail(d), e.head(d));
        if comp[u.index()] == c && comp[v.index()] == c {
            emap[k] = edges.len() as u32;
            edges.push(crate::embed::EdgeSpec {
                u: VertexId(vmap[u.index()]),
                v: VertexId(vmap[v.index()]),
                w_uv: e.weight(d),
                w_vu: e.weight(d.twin()),
            });
            dart_to_parent.push(d);
            dart_to_parent.push(d.twin());
        }
    }
    if edges.is_empty() {
        return None;
    }
    let rotations: Vec<Vec<DartId>> = vertex_to_parent
        .iter()
        .map(|&pv| {
            e.rotation(pv)
                .iter()
                .filter(|&&d| emap[d.edge()] != u32::MAX)
                .map(|&d| DartId(2 * emap[d.edge()] + (d.0 & 1)))
                .collect()
        })
        .collect();
    let embedding = Embedding::assemble(vertex_to_parent.len(), &edges, &rotations, None)
        .expect("induced subgraph of a planar embedding stays planar");
    Some(InducedSubgraph {
        embedding,
        vertex_to_parent,
        dart_to_parent,
    })
}

/// Drops edges that are absent in both directions (triangulation chords)
/// and any vertex left isolated. The result may be disconnected; callers
/// decompose it further. Returns `None` when nothing would remain.
pub fn strip_absent_edges(e: &Embedding) -> Option<InducedSubgraph> {
    let keep: Vec<bool> = (0..e.edge_count())
        .map(|k| {
            let d = DartId((2 * k) as u32);
            e.weight(d).is_finite() || e.weight(d.twin()).is_finite()
        })
        .collect();
    if keep.iter().all(|&k| k) {
        return Some(InducedSubgraph {
            embedding: e.clone(),
            vertex_to_parent: (0..e.vertex_count() as u32).map(VertexId).collect(),
            dart_to_parent: (0..e.dart_count() as u32).map(DartId).collect(),
        });
    }
    let mut vmap = vec![u32::MAX; e.vertex_count()];
    let mut vertex_to_parent = Vec::new();
    for v in 0..e.vertex_count() {
        let has_kept = e
            .rotation(VertexId(v as u32))
            .iter()
            .any(|d| keep[d.edge()]);
        if has_kept {
            vmap[v] = vertex_to_parent.len() as u32;
            vertex_to_parent.push(VertexId(v as u32));
        }
    }
    let mut edges = Vec::new();
    let mut dart_to_parent = Vec::new();
    let mut emap = vec![u32::MAX; e.edge_count()];
    for k in 0..e.edge_count() {
        if !keep[k] {
            continue;
        }
        let d = DartId((2 * k) as u32);
        emap[k] = edges.len() as u32;
        edges.push(crate::embed::EdgeSpec {
            u: VertexId(vmap[e.tail(d).index()]),
            v: VertexId(vmap[e.head(d).index()]),
            w_uv: e.weight(d),
            w_vu: e.weight(d.twin()),
        });
        dart_to_parent.push(d);
        dart_to_parent.push(d.twin());
    }
    if edges.is_empty() {
        return None;
    }
    let rotations: Vec<Vec<DartId>> = vertex_to_parent
        .iter()
        .map(|&pv| {
            e.rotation(pv)
                .iter()
                .filter(|d| keep[d.edge()])
                .map(|&d| DartId(2 * emap[d.edge()] + (d.0 & 1)))
                .collect()
        })
        .collect();
    let embedding = Embedding::assemble(vertex_to_parent.len(), &edges, &rotations, None)
        .expect("restriction of a planar embedding stays planar");
    Some(InducedSubgraph {
        embedding,
        vertex_to_parent,
        dart_to_parent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tarjan_on_two_cycles() {
        // 0 -> 1 -> 0 and 2 -> 3 -> 2, bridge 1 -> 2
        let adj = vec![vec![1], vec![0, 2], vec![3], vec![2]];
        let comp = components_adj(&adj);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[2], comp[3]);
        assert_ne!(comp[0], comp[2]);
    }

    #[test]
    fn dag_has_singleton_components() {
        let adj = vec![vec![1], vec![2], vec![]];
        let comp = components_adj(&adj);
        assert_ne!(comp[0], comp[1]);
        assert_ne!(comp[1], comp[2]);
    }
}
