use serde::Serialize;
use sha2::{Digest, Sha256};

use clutters::Limits;

/// Machine-readable command report. Field order is fixed and map values are
/// sorted, so identical inputs and flags yield byte-identical output under
/// `--deterministic` (which suppresses the timing field).
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_char: Option<u64>,
    pub budgets: Budgets,
    pub deterministic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    pub result: serde_json::Value,
}

#[derive(Debug, Serialize)]
pub struct Budgets {
    pub max_covers: usize,
    pub max_nodes: usize,
    pub max_faces: usize,
    pub max_link_faces: usize,
    pub max_link_facets: usize,
    pub max_witness_faces: usize,
    pub max_search_generators: usize,
    pub max_betti_vertices: usize,
    pub max_retries: usize,
}

impl From<&Limits> for Budgets {
    fn from(l: &Limits) -> Self {
        Budgets {
            max_covers: l.max_covers,
            max_nodes: l.max_nodes,
            max_faces: l.max_faces,
            max_link_faces: l.max_link_faces,
            max_link_facets: l.max_link_facets,
            max_witness_faces: l.max_witness_faces,
            max_search_generators: l.max_search_generators,
            max_betti_vertices: l.max_betti_vertices,
            max_retries: l.max_retries,
        }
    }
}

/// Content digest of the raw input bytes.
pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl Report {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
