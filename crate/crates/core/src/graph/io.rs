//! JSON and DOT formats.
//!
//! A graph file is `{"vertices": n, "edges": [[i,j],…], "base": k?, "labels": […]?}`.
//! Writing always produces the canonical form: sorted `[min,max]` edges, one
//! per line, so files diff cleanly and re-serialization is byte-stable.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphMap, PointedGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph, base: Option<Vertex>) -> GraphFile {
        GraphFile {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            base,
            labels: g.labels().map(<[String]>::to_vec),
        }
    }

    pub fn from_pointed(g: &PointedGraph) -> GraphFile {
        Self::from_graph(g.graph(), Some(g.base()))
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let g = Graph::new(self.vertices, self.edges.iter().map(|&[u, v]| (u, v)))?;
        match &self.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }

    /// Missing base defaults to vertex 0.
    pub fn to_pointed(&self) -> Result<PointedGraph> {
        let g = self.to_graph()?;
        if g.vertex_count() == 0 {
            return Err(Error::invalid("a pointed graph needs at least one vertex"));
        }
        PointedGraph::new(g, self.base.unwrap_or(0))
    }

    pub fn parse(text: &str) -> Result<GraphFile> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical text form, terminated by a newline.
    pub fn to_canonical_json(&self) -> String {
        let mut out = String::new();
        self.write_into(&mut out, "");
        out.push('\n');
        out
    }

    fn write_into(&self, out: &mut String, indent: &str) {
        let _ = writeln!(out, "{{");
        let _ = writeln!(out, "{indent}  \"vertices\": {},", self.vertices);
        if self.edges.is_empty() {
            let _ = write!(out, "{indent}  \"edges\": []");
        } else {
            let _ = writeln!(out, "{indent}  \"edges\": [");
            for (i, [u, v]) in self.edges.iter().enumerate() {
                let sep = if i + 1 == self.edges.len() { "" } else { "," };
                let _ = writeln!(out, "{indent}    [{u}, {v}]{sep}");
            }
            let _ = write!(out, "{indent}  ]");
        }
        if let Some(b) = self.base {
            let _ = write!(out, ",\n{indent}  \"base\": {b}");
        }
        if let Some(labels) = &self.labels {
            let text = serde_json::to_string(labels).expect("strings serialize");
            let _ = write!(out, ",\n{indent}  \"labels\": {text}");
        }
        let _ = write!(out, "\n{indent}}}");
    }
}

/// A graph map file: both graphs inline plus the assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub domain: GraphFile,
    pub codomain: GraphFile,
    pub assignment: Vec<Vertex>,
    #[serde(default = "default_true")]
    pub pointed: bool,
}

fn default_true() -> bool {
    true
}

impl MapFile {
    pub fn from_map(f: &GraphMap) -> MapFile {
        MapFile {
            domain: GraphFile::from_pointed(f.domain()),
            codomain: GraphFile::from_pointed(f.codomain()),
            assignment: f.assignment().to_vec(),
            pointed: f.is_pointed(),
        }
    }

    pub fn parse(text: &str) -> Result<MapFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_map(&self) -> Result<GraphMap> {
        let dom = Arc::new(self.domain.to_pointed()?);
        let cod = Arc::new(self.codomain.to_pointed()?);
        GraphMap::new(dom, cod, self.assignment.clone(), self.pointed)
    }

    pub fn to_canonical_json(&self) -> String {
        let mut out = String::from("{\n  \"domain\": ");
        self.domain.write_into(&mut out, "  ");
        out.push_str(",\n  \"codomain\": ");
        self.codomain.write_into(&mut out, "  ");
        let assignment = serde_json::to_string(&self.assignment).expect("ints serialize");
        let _ = write!(
            out,
            ",\n  \"assignment\": {assignment},\n  \"pointed\": {}\n}}\n",
            self.pointed
        );
        out
    }
}

pub(super) fn to_dot(g: &Graph, base: Option<Vertex>, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\""));
    for v in g.vertices() {
        let label = g
            .labels()
            .map(|l| l[v].clone())
            .unwrap_or_else(|| v.to_string());
        let label = label.replace('"', "\\\"");
        if Some(v) == base {
            let _ = writeln!(out, "  {v} [label=\"{label}\", shape=doublecircle];");
        } else {
            let _ = writeln!(out, "  {v} [label=\"{label}\"];");
        }
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_standard, Family};

    #[test]
    fn canonical_json_is_stable() {
        let c4 = make_standard(Family::Cycle, 4).unwrap();
        let text = GraphFile::from_pointed(&c4).to_canonical_json();
        assert_eq!(
            text,
            "{\n  \"vertices\": 4,\n  \"edges\": [\n    [0, 1],\n    [0, 3],\n    [1, 2],\n    [2, 3]\n  ],\n  \"base\": 0\n}\n"
        );
        let back = GraphFile::parse(&text).unwrap();
        assert_eq!(back.to_pointed().unwrap(), c4);
        assert_eq!(back.to_canonical_json(), text);
    }

    #[test]
    fn unsorted_input_is_canonicalized() {
        let file = GraphFile::parse(r#"{"vertices": 3, "edges": [[2,1],[1,0]], "labels": ["a","b","c"]}"#).unwrap();
        let g = file.to_graph().unwrap();
        let canon = GraphFile::from_graph(&g, None);
        assert_eq!(canon.edges, vec![[0, 1], [1, 2]]);
        assert!(canon.to_canonical_json().contains("\"labels\": [\"a\",\"b\",\"c\"]"));
    }

    #[test]
    fn rejects_unknown_fields_and_bad_json() {
        assert!(GraphFile::parse(r#"{"vertices": 1, "edges": [], "extra": 1}"#).is_err());
        assert!(GraphFile::parse(r#"{"vertices": 1, "edges": [[0,1]"#).is_err());
    }

    #[test]
    fn map_file_round_trip() {
        let c3 = Arc::new(make_standard(Family::Cycle, 3).unwrap());
        let id = GraphMap::identity(c3);
        let text = MapFile::from_map(&id).to_canonical_json();
        let back = MapFile::parse(&text).unwrap().to_map().unwrap();
        assert_eq!(back, id);
    }

    #[test]
    fn dot_marks_base() {
        let dot = make_standard(Family::Interval, 1).unwrap().to_dot("I1");
        assert!(dot.contains("0 [label=\"0\", shape=doublecircle];"));
        assert!(dot.contains("0 -- 1;"));
    }
}
