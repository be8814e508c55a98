use planarcut_core::embed::{cut_dual, triangulate_infinite};
use planarcut_core::instances::grid;
use planarcut_core::paths::{dijkstra, extract_path};
use planarcut_core::separator::shortest_path_separator;
use planarcut_core::surgery::split_along_cycle;
use planarcut_core::{reif, VertexId};
use std::time::Instant;

fn main() {
    let side: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(128);
    let e = grid(side, 0, (1, 1000));
    println!("grid {side}x{side}: V={} E={}", e.vertex_count(), e.edge_count());

    let t0 = Instant::now();
    let d = cut_dual(&e);
    println!("cut_dual: {:?}", t0.elapsed());

    let t0 = Instant::now();
    let tri = triangulate_infinite(&d.embedding);
    println!("triangulate: {:?}", t0.elapsed());

    let t0 = Instant::now();
    let sep = shortest_path_separator(&tri.embedding, None).unwrap();
    println!("separator: {:?} (|P|={} |P'|={})", t0.elapsed(), sep.path_p.darts.len(), sep.path_p_prime.darts.len());

    let t0 = Instant::now();
    let split = split_along_cycle(&tri.embedding, &sep.cycle).unwrap();
    println!("split: {:?} (int V={} ext V={})", t0.elapsed(),
        split.interior.embedding.vertex_count(), split.exterior.embedding.vertex_count());

    let t0 = Instant::now();
    let tree = dijkstra(&tri.embedding, VertexId(0));
    println!("one dijkstra: {:?}", t0.elapsed());
    let _ = tree;

    let t0 = Instant::now();
    let run = reif::run(&tri.embedding, &sep.path_p, true).unwrap();
    let trace = run.trace.as_ref().unwrap();
    println!(
        "reif on P (|P|={}): {:?} -> {:?} (nodes={} fallbacks={})",
        sep.path_p.darts.len(),
        t0.elapsed(),
        run.answer.length,
        trace.nodes.len(),
        trace.fallbacks
    );

    let t0 = Instant::now();
    let c = planarcut_core::cfn::min_cut(&e).unwrap();
    println!("total mincut: {:?} -> {}", t0.elapsed(), c.value);
}

#[allow(dead_code)]
fn unused() {}
