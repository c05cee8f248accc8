//! On-disk formats: pedigree JSON and DOT export.
//!
//! Pedigree JSON:
//!
//! ```json
//! {"vertices": [0, 1, 2], "arcs": [[0, 1], [0, 2]], "extant": {"x1": 0}}
//! ```
//!
//! Writers emit sorted vertices, lexicographically sorted arcs and extant
//! labels in natural order, so output is byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::label::Label;
use crate::pedigree::{Pedigree, RawPedigree, ValidationErrors, VertexId};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] ValidationErrors),
}

#[derive(Deserialize)]
struct PedigreeDoc {
    vertices: Vec<u64>,
    arcs: Vec<(u64, u64)>,
    extant: BTreeMap<String, u64>,
}

struct ExtantMap<'a>(&'a Pedigree);

impl Serialize for ExtantMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.order()))?;
        for (label, v) in self.0.extant() {
            map.serialize_entry(label.as_str(), &v.0)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct PedigreeOut<'a> {
    vertices: Vec<u64>,
    arcs: Vec<[u64; 2]>,
    extant: ExtantMap<'a>,
}

/// Serializable view of a pedigree in the on-disk schema, for embedding in
/// larger documents.
pub struct PedigreeJson<'a>(pub &'a Pedigree);

impl Serialize for PedigreeJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        pedigree_out(self.0).serialize(serializer)
    }
}

pub fn pedigree_value(p: &Pedigree) -> serde_json::Value {
    serde_json::to_value(pedigree_out(p)).expect("pedigree serializes")
}

fn pedigree_out(p: &Pedigree) -> PedigreeOut<'_> {
    PedigreeOut {
        vertices: p.vertices().map(|v| v.0).collect(),
        arcs: p.arcs().into_iter().map(|(c, q)| [c.0, q.0]).collect(),
        extant: ExtantMap(p),
    }
}

pub fn pedigree_to_json(p: &Pedigree) -> String {
    let mut s = serde_json::to_string_pretty(&pedigree_out(p)).expect("pedigree serializes");
    s.push('\n');
    s
}

pub fn raw_from_json(s: &str) -> Result<RawPedigree, serde_json::Error> {
    let doc: PedigreeDoc = serde_json::from_str(s)?;
    Ok(raw_from_doc(doc))
}

pub fn pedigree_from_json(s: &str) -> Result<Pedigree, FormatError> {
    Ok(raw_from_json(s)?.validate()?)
}

pub fn pedigree_from_value(v: serde_json::Value) -> Result<Pedigree, FormatError> {
    let doc: PedigreeDoc = serde_json::from_value(v)?;
    Ok(raw_from_doc(doc).validate()?)
}

fn raw_from_doc(doc: PedigreeDoc) -> RawPedigree {
    RawPedigree {
        vertices: doc.vertices.into_iter().map(VertexId).collect(),
        arcs: doc
            .arcs
            .into_iter()
            .map(|(c, p)| (VertexId(c), VertexId(p)))
            .collect(),
        extant: doc
            .extant
            .into_iter()
            .map(|(l, v)| (Label::from(l), VertexId(v)))
            .collect(),
    }
}

/// DOT rendering: arcs drawn child to parent, only extant vertices labelled.
pub fn pedigree_to_dot(p: &Pedigree, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", dot_id(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(
        out,
        "  node [shape=circle, width=0.25, fixedsize=true, fontsize=10];"
    )
    .unwrap();
    for v in p.vertices() {
        match p.label_of(v) {
            Some(l) => writeln!(
                out,
                "  n{} [label=\"{}\", shape=box];",
                v.0,
                escape(l.as_str())
            )
            .unwrap(),
            None => writeln!(out, "  n{} [label=\"\"];", v.0).unwrap(),
        }
    }
    for (c, q) in p.arcs() {
        writeln!(out, "  n{} -> n{};", c.0, q.0).unwrap();
    }
    out.push_str("}\n");
    out
}

fn dot_id(name: &str) -> String {
    if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        name.to_owned()
    } else {
        format!("\"{}\"", escape(name))
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pedigree::fixtures::*;

    #[test]
    fn json_roundtrip_is_byte_stable() {
        let p = star();
        let s = pedigree_to_json(&p);
        let q = pedigree_from_json(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(s, pedigree_to_json(&q));
        assert!(s.contains("\"extant\": {\n    \"x1\": 1,"));
    }

    #[test]
    fn extant_map_uses_natural_order() {
        let mut raw = RawPedigree::new();
        for i in 1..=10u64 {
            raw.vertex(i)
                .parents(i, 100, 101)
                .extant(Label::indexed(i as usize), i);
        }
        raw.vertices([100, 101]);
        let s = pedigree_to_json(&raw.validate().unwrap());
        let x2 = s.find("\"x2\"").unwrap();
        let x10 = s.find("\"x10\"").unwrap();
        assert!(x2 < x10);
    }

    #[test]
    fn invalid_json_pedigree_reports_violations() {
        let err = pedigree_from_json(r#"{"vertices":[1,2],"arcs":[[1,2]],"extant":{"x1":1}}"#)
            .unwrap_err();
        assert!(matches!(err, FormatError::Invalid(_)));
        assert!(pedigree_from_json("{").is_err());
    }

    #[test]
    fn dot_marks_only_extant() {
        let dot = pedigree_to_dot(&twins(), "twins");
        assert!(dot.starts_with("digraph twins {"));
        assert!(dot.contains("n1 [label=\"x1\", shape=box];"));
        assert!(dot.contains("n10 [label=\"\"];"));
        assert!(dot.contains("n1 -> n10;"));
        assert_eq!(dot.matches(" -> ").count(), 4);
    }
}
