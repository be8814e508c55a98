//! Graph file format: a JSON object with vertex count, edge list, clockwise
//! rotations, and an optional infinite-face marker dart. Edge `k` yields
//! darts `2k` (u to v) and `2k+1` (v to u); a `null` weight means the arc is
//! absent in that direction.

use crate::embed::{DartId, EdgeSpec, EmbedError, Embedding};
use crate::weight::Weight;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    File(#[from] std::io::Error),
    #[error("graph: {0}")]
    Graph(#[from] EmbedError),
    #[error("edge {0} has a negative weight")]
    NegativeWeight(usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(u32, u32, Option<i64>, Option<i64>)>,
    pub rotations: Vec<Vec<u32>>,
    pub infinite_face_dart: Option<u32>,
}

impl GraphFile {
    pub fn from_embedding(e: &Embedding) -> GraphFile {
        let to_opt = |w: Weight| w.value().map(|v| v as i64);
        GraphFile {
            n: e.vertex_count(),
            edges: e
                .edge_specs()
                .iter()
                .map(|s| (s.u.0, s.v.0, to_opt(s.w_uv), to_opt(s.w_vu)))
                .collect(),
            rotations: e
                .rotation_lists()
                .iter()
                .map(|rot| rot.iter().map(|d| d.0).collect())
                .collect(),
            infinite_face_dart: Some(e.face_dart(e.infinite_face()).0),
        }
    }

    pub fn build(&self) -> Result<Embedding, IoError> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, &(u, v, w_uv, w_vu)) in self.edges.iter().enumerate() {
            let lift = |w: Option<i64>| -> Result<Weight, IoError> {
                match w {
                    None => Ok(Weight::INF),
                    Some(x) if x < 0 => Err(IoError::NegativeWeight(k)),
                    Some(x) => Ok(Weight::finite(x as u64)),
                }
            };
            edges.push(EdgeSpec {
                u: crate::embed::VertexId(u),
                v: crate::embed::VertexId(v),
                w_uv: lift(w_uv)?,
                w_vu: lift(w_vu)?,
            });
        }
        let rotations: Vec<Vec<DartId>> = self
            .rotations
            .iter()
            .map(|rot| rot.iter().map(|&d| DartId(d)).collect())
            .collect();
        Ok(Embedding::build(
            self.n,
            &edges,
            &rotations,
            self.infinite_face_dart.map(DartId),
        )?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph files serialize")
    }

    pub fn from_json(text: &str) -> Result<GraphFile, IoError> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn write_graph(path: &std::path::Path, e: &Embedding) -> Result<(), IoError> {
    std::fs::write(path, GraphFile::from_embedding(e).to_json())?;
    Ok(())
}

pub fn read_graph(path: &std::path::Path) -> Result<Embedding, IoError> {
    let text = std::fs::read_to_string(path)?;
    GraphFile::from_json(&text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::grid;

    #[test]
    fn round_trip_preserves_structure() {
        let e = grid(5, 3, (1, 60));
        let file = GraphFile::from_embedding(&e);
        let text = file.to_json();
        let back = GraphFile::from_json(&text).unwrap().build().unwrap();
        assert_eq!(back.vertex_count(), e.vertex_count());
        assert_eq!(back.edge_specs(), e.edge_specs());
        assert_eq!(back.rotation_lists(), e.rotation_lists());
        assert_eq!(back.infinite_face(), e.infinite_face());
    }

    #[test]
    fn negative_weight_is_reported() {
        let text = r#"{"n":2,"edges":[[0,1,-3,1]],"rotations":[[0],[1]],"infinite_face_dart":null}"#;
        let file = GraphFile::from_json(text).unwrap();
        assert!(matches!(file.build(), Err(IoError::NegativeWeight(0))));
    }

    #[test]
    fn null_weight_means_absent() {
        let text = r#"{"n":2,"edges":[[0,1,4,null]],"rotations":[[0],[1]],"infinite_face_dart":0}"#;
        let e = GraphFile::from_json(text).unwrap().build().unwrap();
        assert_eq!(e.weight(DartId(0)), Weight::finite(4));
        assert!(e.weight(DartId(1)).is_inf());
    }

    #[test]
    fn serialization_is_deterministic() {
        let e = grid(4, 9, (1, 30));
        let a = GraphFile::from_embedding(&e).to_json();
        let b = GraphFile::from_embedding(&e).to_json();
        assert_eq!(a, b);
    }
}
