//! Shared fixtures for unit tests.

use crate::embed::{DartId, EdgeSpec, Embedding};
use crate::weight::Weight;

/// Directed 3-cycle `a->b->c->a` with the natural rotation; reverse
/// directions absent.
pub(crate) fn directed_triangle(w: [u64; 3]) -> Embedding {
    let edges = vec![
        EdgeSpec::new(0, 1, Weight::finite(w[0]), Weight::INF),
        EdgeSpec::new(1, 2, Weight::finite(w[1]), Weight::INF),
        EdgeSpec::new(2, 0, Weight::finite(w[2]), Weight::INF),
    ];
    let rotations = vec![
        vec![DartId(0), DartId(5)],
        vec![DartId(2), DartId(1)],
        vec![DartId(4), DartId(3)],
    ];
    Embedding::build(3, &edges, &rotations, None).unwrap()
}

/// Bidirected 4-cycle with unit weights.
pub(crate) fn bidirected_square() -> Embedding {
    let edges = vec![
        EdgeSpec::new(0, 1, Weight::finite(1), Weight::finite(1)),
        EdgeSpec::new(1, 2, Weight::finite(1), Weight::finite(1)),
        EdgeSpec::new(2, 3, Weight::finite(1), Weight::finite(1)),
        EdgeSpec::new(3, 0, Weight::finite(1), Weight::finite(1)),
    ];
    let rotations = vec![
        vec![DartId(0), DartId(7)],
        vec![DartId(2), DartId(1)],
        vec![DartId(4), DartId(3)],
        vec![DartId(6), DartId(5)],
    ];
    Embedding::build(4, &edges, &rotations, None).unwrap()
}
