use serde::{Deserialize, Serialize};

use clutters::{Clutter, Error, GridStructure, VertexSet};

/// The on-disk clutter format: vertex labels, edges as label arrays, and an
/// optional grid structure (`colors` = color classes, `matching` = blocks).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ClutterDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<Vec<String>>>,
}

#[derive(Debug)]
pub struct ParsedDocument {
    pub clutter: Clutter,
    pub grid: Option<GridStructure>,
    /// Edges dropped by `--minimalize` repair.
    pub dropped_edges: usize,
}

/// Parse and validate a document. Antichain violations are rejected unless
/// `minimalize` is set, in which case the offending supersets are dropped and
/// counted. When both `colors` and `matching` are present they must form a
/// valid grid.
pub fn parse_document(text: &str, minimalize: bool) -> Result<ParsedDocument, Error> {
    let doc: ClutterDocument = serde_json::from_str(text).map_err(|e| {
        Error::InvalidInput(format!(
            "malformed document at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    let labels = doc.vertices.clone();
    fn to_sets(labels: &[String], family: &[Vec<String>]) -> Result<Vec<VertexSet>, Error> {
        family
            .iter()
            .map(|part| {
                let mut s = VertexSet::EMPTY;
                for name in part {
                    let i = labels.iter().position(|l| l == name).ok_or_else(|| {
                        Error::InvalidInput(format!("unknown vertex label {name:?}"))
                    })?;
                    s = s.with(i);
                }
                Ok(s)
            })
            .collect()
    }

    let edge_sets = to_sets(&labels, &doc.edges)?;
    let (clutter, dropped_edges) = if minimalize {
        let (c, dropped) = Clutter::new_minimalized(labels, edge_sets)?;
        (c, dropped)
    } else {
        (Clutter::new(labels, edge_sets)?, 0)
    };

    let grid = match (&doc.colors, &doc.matching) {
        (None, None) => None,
        (Some(colors), Some(matching)) => Some(GridStructure::new(
            clutter.vertex_count(),
            to_sets(clutter.labels(), colors)?,
            to_sets(clutter.labels(), matching)?,
        )?),
        _ => {
            return Err(Error::InvalidInput(
                "grid structures need both `colors` and `matching`".into(),
            ))
        }
    };
    Ok(ParsedDocument {
        clutter,
        grid,
        dropped_edges,
    })
}

/// Render a clutter (and optionally its grid) back into the document format.
pub fn document_from(clutter: &Clutter, grid: Option<&GridStructure>) -> ClutterDocument {
    let name =
        |s: &VertexSet| -> Vec<String> { s.iter().map(|v| clutter.label(v).to_string()).collect() };
    ClutterDocument {
        vertices: clutter.labels().to_vec(),
        edges: clutter.edges().iter().map(&name).collect(),
        colors: grid.map(|g| g.colors().iter().map(&name).collect()),
        matching: grid.map(|g| g.matching().iter().map(name).collect()),
    }
}

pub fn serialize_document(doc: &ClutterDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_simple_document() {
        let text = r#"{"vertices": ["a", "b"], "edges": [["a", "b"]]}"#;
        let parsed = parse_document(text, false).unwrap();
        assert_eq!(parsed.clutter.vertex_count(), 2);
        assert_eq!(parsed.clutter.edge_count(), 1);
        assert!(parsed.grid.is_none());
    }

    #[test]
    fn malformed_text_reports_location() {
        let err = parse_document("{\n  \"vertices\": [,]\n}", false).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn duplicate_labels_rejected() {
        let text = r#"{"vertices": ["a", "a"], "edges": [["a"]]}"#;
        assert!(parse_document(text, false).is_err());
    }

    #[test]
    fn antichain_violation_needs_minimalize() {
        let text = r#"{"vertices": ["a", "b"], "edges": [["a", "b"], ["a"]]}"#;
        assert!(parse_document(text, false).is_err());
        let parsed = parse_document(text, true).unwrap();
        assert_eq!(parsed.dropped_edges, 1);
        assert_eq!(parsed.clutter.edge_count(), 1);
    }

    #[test]
    fn grid_requires_both_fields() {
        let text = r#"{"vertices": ["a", "b"], "edges": [["a", "b"]], "colors": [["a"], ["b"]]}"#;
        assert!(parse_document(text, false).is_err());
    }

    #[test]
    fn grid_violations_are_parse_errors() {
        // Vertex b appears in no color class.
        let text = r#"{"vertices": ["a", "b"], "edges": [["a", "b"]],
                       "colors": [["a"]], "matching": [["a", "b"]]}"#;
        let err = parse_document(text, false).unwrap_err();
        assert!(matches!(err, Error::InvalidGrid(_)), "{err}");
    }

    #[test]
    fn roundtrip_with_grid() {
        let inst = clutters::fixture_example_g3();
        let doc = document_from(inst.clutter(), Some(inst.grid()));
        let text = serialize_document(&doc);
        let parsed = parse_document(&text, false).unwrap();
        assert_eq!(&parsed.clutter, inst.clutter());
        assert_eq!(parsed.grid.as_ref(), Some(inst.grid()));
        // Serialize again: identical bytes.
        let doc2 = document_from(&parsed.clutter, parsed.grid.as_ref());
        assert_eq!(serialize_document(&doc2), text);
    }
}
