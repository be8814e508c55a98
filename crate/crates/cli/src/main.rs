//! Command-line front end: graph I/O, instance generators, algorithm
//! runners, validation, and a benchmark harness.
//!
//! Exit codes: 0 ok, 1 check failure, 2 input error, 3 precondition error.

use clap::{Parser, Subcommand, ValueEnum};
use planarcut_core::cfn;
use planarcut_core::ddg::{build_ddg, build_r_division, ddg_distance, DivisionConfig};
use planarcut_core::embed::cut_dual;
use planarcut_core::instances;
use planarcut_core::io::GraphFile;
use planarcut_core::oracle;
use planarcut_core::paths::dijkstra;
use planarcut_core::scc;
use planarcut_core::weight::Weight;
use planarcut_core::{CutError, Embedding, VertexId};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(name = "planarcut", about = "Minimum cuts of directed planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Grid,
    CylinderGrid,
    RandomPlanarAugmented,
}

#[derive(Subcommand)]
enum Command {
    /// Global minimum cut of a strongly connected graph file.
    Mincut { file: PathBuf },
    /// Globally shortest directed cycle of a graph file.
    Cycle { file: PathBuf },
    /// Generate an instance and print or write its graph file.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Grid side length, or vertex count for random instances.
        #[arg(long)]
        n: usize,
        /// Defaults to PLANAR_SEED or 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Weight range, inclusive.
        #[arg(long, value_parser = parse_range, default_value = "1,1000")]
        weights: (u64, u64),
        /// Remove reverse arcs while keeping strong connectivity.
        #[arg(long)]
        directed_prune: bool,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a graph file; cross-check against the oracles when small.
    Check { file: PathBuf },
    /// Build an r-division, verify its bounds and distance exactness.
    DdgCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 16)]
        r: usize,
        #[arg(long, default_value_t = 40.0)]
        c1: f64,
        #[arg(long, default_value_t = 20.0)]
        c2: f64,
    },
    /// Time the min-cut solver against the oracle over generated instances.
    Bench {
        #[arg(long, value_enum, default_value = "grid")]
        kind: Kind,
        /// Comma-separated target vertex counts.
        #[arg(long, value_parser = parse_sizes)]
        sizes: std::vec::Vec<usize>,
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        /// Skip the oracle above this vertex count.
        #[arg(long, default_value_t = 2048)]
        max_oracle_n: usize,
    },
}

fn parse_range(text: &str) -> Result<(u64, u64), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err("expected lo,hi".into());
    }
    let lo: u64 = parts[0].parse().map_err(|e| format!("{e}"))?;
    let hi: u64 = parts[1].parse().map_err(|e| format!("{e}"))?;
    if lo == 0 || hi < lo {
        return Err("expected 1 <= lo <= hi".into());
    }
    Ok((lo, hi))
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| format!("{e}")))
        .collect()
}

fn default_seed() -> u64 {
    std::env::var("PLANAR_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn load(file: &PathBuf) -> Result<Embedding, ExitCode> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("cannot read {}: {e}", file.display());
        ExitCode::from(EXIT_INPUT_ERROR)
    })?;
    let parsed = GraphFile::from_json(&text).map_err(|e| {
        eprintln!("cannot parse {}: {e}", file.display());
        ExitCode::from(EXIT_INPUT_ERROR)
    })?;
    parsed.build().map_err(|e| {
        eprintln!("invalid graph in {}: {e}", file.display());
        ExitCode::from(EXIT_INPUT_ERROR)
    })
}

fn weight_json(w: Weight) -> serde_json::Value {
    match w.value() {
        Some(v) => serde_json::json!(v),
        None => serde_json::json!("inf"),
    }
}

fn cmd_mincut(file: PathBuf) -> ExitCode {
    let e = match load(&file) {
        Ok(e) => e,
        Err(code) => return code,
    };
    let start = Instant::now();
    match cfn::min_cut(&e) {
        Ok(result) => {
            let millis = start.elapsed().as_millis() as u64;
            let out = serde_json::json!({
                "value": weight_json(result.value),
                "cut_x": result.cut.x.iter().map(|v| v.0).collect::<Vec<_>>(),
                "dual_cycle_darts": result.dual_cycle.darts.iter().map(|d| d.0).collect::<Vec<_>>(),
                "millis": millis,
            });
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(err @ (CutError::NotStronglyConnected | CutError::TooSmall)) => {
            eprintln!("{err}");
            ExitCode::from(EXIT_PRECONDITION)
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(EXIT_CHECK_FAILURE)
        }
    }
}

fn cmd_cycle(file: PathBuf) -> ExitCode {
    let e = match load(&file) {
        Ok(e) => e,
        Err(code) => return code,
    };
    let start = Instant::now();
    let cycle = cfn::shortest_cycle(&e);
    let millis = start.elapsed().as_millis() as u64;
    let out = match cycle {
        Some(c) => serde_json::json!({
            "value": weight_json(c.length),
            "cycle_darts": c.darts.iter().map(|d| d.0).collect::<Vec<_>>(),
            "millis": millis,
        }),
        None => serde_json::json!({
            "value": "inf",
            "cycle_darts": serde_json::Value::Array(vec![]),
            "millis": millis,
        }),
    };
    println!("{out}");
    ExitCode::SUCCESS
}

fn generate(kind: Kind, n: usize, seed: u64, weights: (u64, u64), prune: bool) -> Option<Embedding> {
    let base = match kind {
        Kind::Grid => {
            if n < 2 {
                return None;
            }
            instances::grid(n, seed, weights)
        }
        Kind::CylinderGrid => {
            if n < 3 {
                return None;
            }
            instances::cylinder_grid(n, seed, weights)
        }
        Kind::RandomPlanarAugmented => {
            if n < 2 {
                return None;
            }
            instances::random_planar_augmented(n, seed, weights)
        }
    };
    Some(if prune {
        instances::prune_directed(&base, seed)
    } else {
        base
    })
}

fn cmd_gen(
    kind: Kind,
    n: usize,
    seed: Option<u64>,
    weights: (u64, u64),
    prune: bool,
    out: Option<PathBuf>,
) -> ExitCode {
    let seed = seed.unwrap_or_else(default_seed);
    let Some(e) = generate(kind, n, seed, weights, prune) else {
        eprintln!("n = {n} is too small for this generator");
        return ExitCode::from(EXIT_INPUT_ERROR);
    };
    let text = GraphFile::from_embedding(&e).to_json();
    match out {
        Some(path) => {
            if let Err(err) = std::fs::write(&path, text) {
                eprintln!("cannot write {}: {err}", path.display());
                return ExitCode::from(EXIT_INPUT_ERROR);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::SUCCESS
}

fn cmd_check(file: PathBuf) -> ExitCode {
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", file.display());
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    };
    let parsed = match GraphFile::from_json(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("cannot parse {}: {e}", file.display());
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    };
    let e = match parsed.build() {
        Ok(e) => e,
        Err(err) => {
            println!("check: FAIL — {err}");
            return ExitCode::from(EXIT_CHECK_FAILURE);
        }
    };
    println!(
        "check: embedding ok (V={} E={} F={})",
        e.vertex_count(),
        e.edge_count(),
        e.face_count()
    );
    if e.vertex_count() <= 9 {
        let fast_cycle = cfn::shortest_cycle(&e).map(|c| c.length);
        let slow_cycle = oracle::brute_shortest_cycle(&e).map(|c| c.length);
        if fast_cycle != slow_cycle {
            println!("check: FAIL — shortest cycle {fast_cycle:?} != oracle {slow_cycle:?}");
            return ExitCode::from(EXIT_CHECK_FAILURE);
        }
        println!("check: shortest cycle agrees with the oracle ({fast_cycle:?})");
        if scc::is_strongly_connected(&e) {
            let fast = cfn::min_cut(&e).map(|r| r.value);
            let slow = oracle::brute_min_cut(&e).map(|c| c.capacity);
            match (fast, slow) {
                (Ok(a), Ok(b)) if a == b => {
                    println!("check: min cut agrees with enumeration ({a})");
                }
                (fast, slow) => {
                    println!("check: FAIL — min cut {fast:?} vs enumeration {slow:?}");
                    return ExitCode::from(EXIT_CHECK_FAILURE);
                }
            }
        } else {
            println!("check: not strongly connected; min-cut cross-check skipped");
        }
    }
    println!("check: PASS");
    ExitCode::SUCCESS
}

fn cmd_ddg_check(file: PathBuf, r: usize, c1: f64, c2: f64) -> ExitCode {
    let e = match load(&file) {
        Ok(e) => e,
        Err(code) => return code,
    };
    if r < 4 {
        eprintln!("r must be at least 4");
        return ExitCode::from(EXIT_INPUT_ERROR);
    }
    let config = DivisionConfig { c1, c2 };
    let rd = match build_r_division(&e, r, config) {
        Ok(rd) => rd,
        Err(err) => {
            println!("ddg-check: FAIL — {err}");
            return ExitCode::from(EXIT_CHECK_FAILURE);
        }
    };
    let n = e.vertex_count();
    println!(
        "ddg-check: {} pieces for n={} r={} (bound {})",
        rd.pieces.len(),
        n,
        r,
        (config.c1 * n as f64 / r as f64).ceil()
    );
    for (i, piece) in rd.pieces.iter().enumerate() {
        if piece.vertex_ids.len() > r {
            println!("ddg-check: FAIL — piece {i} has {} vertices", piece.vertex_ids.len());
            return ExitCode::from(EXIT_CHECK_FAILURE);
        }
        if (piece.boundary.len() as f64) > c2 * (r as f64).sqrt() {
            println!(
                "ddg-check: FAIL — piece {i} has {} boundary vertices",
                piece.boundary.len()
            );
            return ExitCode::from(EXIT_CHECK_FAILURE);
        }
    }
    let ddg = build_ddg(&e, &rd);
    let boundary: Vec<VertexId> = (0..n as u32)
        .map(VertexId)
        .filter(|v| rd.is_boundary[v.index()])
        .collect();
    let mut checked = 0usize;
    for &u in &boundary {
        let tree = dijkstra(&e, u);
        for &v in &boundary {
            match ddg_distance(&rd, &ddg, u, v) {
                Ok(d) if d == tree.dist[v.index()] => checked += 1,
                Ok(d) => {
                    println!(
                        "ddg-check: FAIL — {u:?}->{v:?} gave {d}, global distance {}",
                        tree.dist[v.index()]
                    );
                    return ExitCode::from(EXIT_CHECK_FAILURE);
                }
                Err(err) => {
                    println!("ddg-check: FAIL — {err}");
                    return ExitCode::from(EXIT_CHECK_FAILURE);
                }
            }
        }
        if checked > 100_000 {
            break;
        }
    }
    println!("ddg-check: PASS — {checked} boundary pairs exact");
    ExitCode::SUCCESS
}

fn cmd_bench(kind: Kind, sizes: Vec<usize>, seeds: u64, max_oracle_n: usize) -> ExitCode {
    let kind_name = match kind {
        Kind::Grid => "grid",
        Kind::CylinderGrid => "cylinder-grid",
        Kind::RandomPlanarAugmented => "random-planar-augmented",
    };
    println!("kind,n,seed,algo,millis,value");
    for &target in &sizes {
        let side = (target as f64).sqrt().round().max(2.0) as usize;
        for seed in 0..seeds {
            let Some(e) = generate(kind, side.max(2), seed, (1, 1000), false) else {
                eprintln!("size {target} too small");
                return ExitCode::from(EXIT_INPUT_ERROR);
            };
            let n = e.vertex_count();
            let start = Instant::now();
            let fast = match cfn::min_cut(&e) {
                Ok(r) => r.value,
                Err(err) => {
                    eprintln!("min cut failed on {kind_name} n={n} seed={seed}: {err}");
                    return ExitCode::from(EXIT_CHECK_FAILURE);
                }
            };
            let fast_ms = start.elapsed().as_millis();
            println!("{kind_name},{n},{seed},cfn,{fast_ms},{fast}");
            if n <= max_oracle_n {
                let start = Instant::now();
                let slow = oracle::brute_edge_simple_cycle(&cut_dual(&e).embedding)
                    .map(|c| c.length)
                    .unwrap_or(Weight::INF);
                let slow_ms = start.elapsed().as_millis();
                println!("{kind_name},{n},{seed},oracle,{slow_ms},{slow}");
                if slow != fast {
                    eprintln!("value mismatch on {kind_name} n={n} seed={seed}: cfn {fast} oracle {slow}");
                    return ExitCode::from(EXIT_CHECK_FAILURE);
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Mincut { file } => cmd_mincut(file),
        Command::Cycle { file } => cmd_cycle(file),
        Command::Gen {
            kind,
            n,
            seed,
            weights,
            directed_prune,
            out,
        } => cmd_gen(kind, n, seed, weights, directed_prune, out),
        Command::Check { file } => cmd_check(file),
        Command::DdgCheck { file, r, c1, c2 } => cmd_ddg_check(file, r, c1, c2),
        Command::Bench {
            kind,
            sizes,
            seeds,
            max_oracle_n,
        } => cmd_bench(kind, sizes, seeds, max_oracle_n),
    }
}
