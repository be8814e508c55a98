//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test -p planarcut-core --test acceptance -- --nocapture`.

use planarcut_core::cfn::{self, CfnOptions};
use planarcut_core::ddg::{build_ddg, build_r_division, ddg_distance, DivisionConfig};
use planarcut_core::embed::{cut_dual, triangulate_infinite, DartId, Embedding, VertexId};
use planarcut_core::instances::{grid, grid_row_endpoints, random_strongly_connected};
use planarcut_core::oracle;
use planarcut_core::paths::dijkstra;
use planarcut_core::reif;
use planarcut_core::separator::shortest_path_separator;
use planarcut_core::weight::Weight;
use std::sync::Mutex;
use std::time::Instant;

// The timing criterion must not share the machine with the other criteria.
static GATE: Mutex<()> = Mutex::new(());

fn lock() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|p| p.into_inner())
}

fn c2_instance(seed: u64) -> Embedding {
    let side = 5 + (seed % 8) as usize; // 5x5 .. 12x12
    grid(side, seed, (1, 100))
}

#[test]
fn criterion_01_min_cut_matches_enumeration() {
    let _g = lock();
    let start = Instant::now();
    for seed in 0..500u64 {
        let n = 4 + (seed % 6) as usize;
        let e = random_strongly_connected(n, seed, (1, 50));
        let fast = cfn::min_cut(&e).expect("strongly connected").value;
        let slow = oracle::brute_min_cut(&e).unwrap().capacity;
        assert_eq!(fast, slow, "n={n} seed={seed}");
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 60.0, "criterion 1 took {secs:.1}s, budget 60s");
    println!("criterion 1: PASS - min cut equals enumeration on 500 instances ({secs:.1}s)");
}

#[test]
fn criterion_02_shortest_cycle_matches_oracle() {
    let _g = lock();
    for seed in 0..300u64 {
        let e = c2_instance(seed);
        let fast = cfn::shortest_cycle(&e).map(|c| c.length);
        let slow = oracle::brute_shortest_cycle(&e).map(|c| c.length);
        assert_eq!(fast, slow, "seed={seed}");
    }
    println!("criterion 2: PASS - shortest cycle equals the per-arc oracle on 300 grids");
}

#[test]
fn criterion_03_duality_exact() {
    let _g = lock();
    for seed in 0..500u64 {
        let n = 4 + (seed % 6) as usize;
        let e = random_strongly_connected(n, seed, (1, 50));
        let cut = oracle::brute_min_cut(&e).unwrap().capacity;
        let cyc = oracle::brute_edge_simple_cycle(&cut_dual(&e).embedding)
            .map(|c| c.length)
            .unwrap_or(Weight::INF);
        assert_eq!(cut, cyc, "n={n} seed={seed}");
    }
    println!("criterion 3: PASS - enumeration equals shortest dual cycle on 500 instances");
}

#[test]
fn criterion_04_separator_balance() {
    let _g = lock();
    for seed in 0..100u64 {
        let side = 4 + (seed as usize % 29); // up to 32x32
        let e = grid(side, seed, (1, 100));
        let t = triangulate_infinite(&e).embedding;
        let root = VertexId((seed % (side * side) as u64) as u32);
        let s = shortest_path_separator(&t, Some(root)).unwrap();
        let total = t.face_count() as u64;
        assert!(
            s.inside_faces.max(s.outside_faces) <= (2 * total).div_ceil(3),
            "side={side} seed={seed}"
        );
    }
    println!("criterion 4: PASS - two-thirds face balance on 100 triangulated grids");
}

fn c5_instance(seed: u64) -> (Embedding, planarcut_core::DirectedPath) {
    let side = 5 + (seed % 8) as usize; // up to 12x12
    let e = grid(side, seed ^ 0x5eed, (1, 64));
    let (s, t) = grid_row_endpoints(side);
    let tree = dijkstra(&e, s);
    let p = planarcut_core::paths::extract_path(&e, &tree, t).unwrap();
    (e, p)
}

#[test]
fn criterion_05_reif_matches_brute_with_audits() {
    let _g = lock();
    for seed in 0..200u64 {
        let (e, p) = c5_instance(seed);
        let fast = reif::shortest_cycle_crossing_once(&e, &p).unwrap();
        let slow = reif::brute_crossing_once(&e, &p).unwrap();
        assert_eq!(fast.length, slow.length, "seed={seed}");
        for answer in [&fast, &slow] {
            if let Some(best) = &answer.best {
                let report = oracle::audit_cycle(&e, &best.cycle, Some(&p));
                assert!(report.ok, "seed={seed}: {:?}", report.violation);
            }
        }
    }
    println!("criterion 5: PASS - crossing-once search equals brute force with clean audits (200 runs)");
}

#[test]
fn criterion_06_side_restricted_lengths_match() {
    let _g = lock();
    let mut checked = 0usize;
    for seed in 0..200u64 {
        let (e, p) = c5_instance(seed);
        let run = reif::run(&e, &p, true).unwrap();
        let (_, table) = reif::brute_with_table(&e, &p).unwrap();
        let trace = run.trace.unwrap();
        for i in 1..p.darts.len() {
            for slot in 0..2 {
                let found = trace.found[i][slot]
                    .as_ref()
                    .map(|f| f.length)
                    .unwrap_or(Weight::INF);
                assert_eq!(found, table[i][slot], "seed={seed} i={i} slot={slot}");
                checked += 1;
            }
        }
    }
    println!("criterion 6: PASS - restricted clone distances equal unrestricted ({checked} checks, 0 violations)");
}

#[test]
fn criterion_07_returned_cycle_meets_each_queried_path_once() {
    let _g = lock();
    let opts = CfnOptions {
        collect_paths: true,
        ..CfnOptions::default()
    };
    let mut paths_checked = 0usize;
    for seed in 0..300u64 {
        let e = c2_instance(seed);
        let (cycle, trace) = cfn::shortest_cycle_traced(&e, &opts);
        let Some(cycle) = cycle else { continue };
        for path in &trace.queried_paths {
            assert!(
                single_contiguous_intersection(&e, &cycle.darts, path),
                "seed={seed}: cycle meets a queried path in more than one stretch"
            );
            paths_checked += 1;
        }
    }
    println!("criterion 7: PASS - returned cycle shares at most one contiguous subpath with each of {paths_checked} queried paths");
}

/// The shared vertices must be one contiguous stretch of the path and the
/// shared edges exactly the stretch's edges (empty intersections pass).
fn single_contiguous_intersection(e: &Embedding, cycle: &[DartId], path: &[DartId]) -> bool {
    let mut pv = vec![e.tail(path[0])];
    for &d in path {
        pv.push(e.head(d));
    }
    let pos: std::collections::HashMap<VertexId, usize> =
        pv.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut cv: Vec<VertexId> = cycle.iter().map(|&d| e.tail(d)).collect();
    cv.sort_unstable();
    cv.dedup();
    let mut shared: Vec<usize> = cv.iter().filter_map(|v| pos.get(v).copied()).collect();
    shared.sort_unstable();
    if shared.is_empty() {
        return true;
    }
    let (lo, hi) = (shared[0], *shared.last().unwrap());
    if shared.len() != hi - lo + 1 {
        return false;
    }
    let path_edges: std::collections::HashSet<usize> =
        path[lo..hi].iter().map(|d| d.edge()).collect();
    let cycle_edges_on_path: std::collections::HashSet<usize> = cycle
        .iter()
        .map(|d| d.edge())
        .filter(|k| path.iter().any(|d| d.edge() == *k))
        .collect();
    cycle_edges_on_path == path_edges
}

#[test]
fn criterion_08_ddg_exact_with_bounds() {
    let _g = lock();
    let config = DivisionConfig::default();
    for r in [16usize, 64] {
        let e = grid(16, 20, (1, 100));
        let n = e.vertex_count();
        let rd = build_r_division(&e, r, config).unwrap();
        assert!(rd.pieces.len() as f64 <= (config.c1 * n as f64 / r as f64).max(1.0));
        for piece in &rd.pieces {
            assert!(piece.vertex_ids.len() <= r);
            assert!(piece.boundary.len() as f64 <= config.c2 * (r as f64).sqrt());
        }
        let ddg = build_ddg(&e, &rd);
        let boundary: Vec<VertexId> = (0..n as u32)
            .map(VertexId)
            .filter(|v| rd.is_boundary[v.index()])
            .collect();
        for &u in &boundary {
            let tree = dijkstra(&e, u);
            for &v in &boundary {
                assert_eq!(
                    ddg_distance(&rd, &ddg, u, v).unwrap(),
                    tree.dist[v.index()],
                    "r={r} {u:?}->{v:?}"
                );
            }
        }
    }
    println!("criterion 8: PASS - all boundary pairs exact on the 16x16 grid at r in {{16, 64}}, bounds hold");
}

#[test]
fn criterion_09_contraction_neutrality() {
    let _g = lock();
    for seed in 0..100u64 {
        let e = c2_instance(seed);
        let on = cfn::shortest_cycle_with(
            &e,
            &CfnOptions {
                contract: true,
                ..CfnOptions::default()
            },
        )
        .map(|c| c.length);
        let off = cfn::shortest_cycle_with(
            &e,
            &CfnOptions {
                contract: false,
                ..CfnOptions::default()
            },
        )
        .map(|c| c.length);
        assert_eq!(on, off, "seed={seed}");
    }
    println!("criterion 9: PASS - values identical with contraction on and off (100 seeds)");
}

#[test]
fn criterion_10_scaling_sanity() {
    let _g = lock();
    let sides = [64usize, 128, 256, 512]; // 2^12, 2^14, 2^16, 2^18 vertices
    let mut medians = Vec::new();
    for &side in &sides {
        let mut times = Vec::new();
        for rep in 0..5u64 {
            let e = grid(side, rep, (1, 1000));
            let start = Instant::now();
            let r = cfn::min_cut(&e).unwrap();
            times.push(start.elapsed().as_secs_f64());
            assert!(r.value.is_finite());
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        medians.push(times[2]);
        println!(
            "criterion 10: n={} median-of-5 {:.2}s",
            side * side,
            times[2]
        );
    }
    for w in medians.windows(2) {
        let ratio = w[1] / w[0];
        assert!(
            ratio <= 5.5,
            "runtime ratio {ratio:.2} exceeds 5.5 between consecutive sizes"
        );
    }
    assert!(
        medians[3] < 120.0,
        "n = 2^18 took {:.1}s, budget 120s",
        medians[3]
    );
    println!(
        "criterion 10: PASS - ratios {:?} all <= 5.5 and 2^18 in {:.1}s < 120s",
        medians
            .windows(2)
            .map(|w| (w[1] / w[0] * 100.0).round() / 100.0)
            .collect::<Vec<_>>(),
        medians[3]
    );
}
