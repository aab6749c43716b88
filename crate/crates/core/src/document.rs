//! Graph and decomposition documents, and DOT export.
//!
//! Documents are pretty-printed JSON with a schema version. Labeled graphs
//! store their shape and vertex tuples (written `1,0`, never `10`) and leave
//! adjacency implicit; generic graphs store opaque ids plus an edge list.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{replay_steps, Decomposition, DecompositionStep};
use crate::graph::{Graph, LabeledGraph};
use crate::hamming::{Shape, Vertex};
use crate::relations::EdgeClass;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Shape>,
    pub root: String,
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// What a document describes once validated.
#[derive(Clone, Debug)]
pub enum DocumentGraph {
    Labeled { graph: LabeledGraph, root: Vertex },
    Generic { graph: Graph, root: usize },
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
}

fn check_schema(found: u32) -> Result<()> {
    if found != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "field `schema`: version {found} is not supported (expected {SCHEMA_VERSION})"
        )));
    }
    Ok(())
}

fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

impl GraphDocument {
    pub fn labeled(g: &LabeledGraph, root: &Vertex, notes: Vec<String>) -> Self {
        GraphDocument {
            schema: SCHEMA_VERSION,
            shape: Some(g.shape().clone()),
            root: root.to_string(),
            vertices: g.vertices().iter().map(|v| v.to_string()).collect(),
            edges: None,
            notes,
        }
    }

    pub fn generic(g: &Graph, root: usize, notes: Vec<String>) -> Self {
        GraphDocument {
            schema: SCHEMA_VERSION,
            shape: None,
            root: g.name(root).to_string(),
            vertices: g.names().to_vec(),
            edges: Some(
                g.edges()
                    .into_iter()
                    .map(|(a, b)| [g.name(a).to_string(), g.name(b).to_string()])
                    .collect(),
            ),
            notes,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(parse_error)?;
        check_schema(doc.schema)?;
        Ok(doc)
    }

    pub fn to_text(&self) -> String {
        to_text(self)
    }

    /// Validate and build the graph.
    pub fn graph(&self) -> Result<DocumentGraph> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        match (&self.shape, &self.edges) {
            (Some(shape), None) => {
                let vertices = self
                    .vertices
                    .iter()
                    .map(|s| {
                        let v: Vertex = s.parse()?;
                        shape.validate(&v)?;
                        Ok(v)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let root: Vertex = self.root.parse()?;
                shape.validate(&root)?;
                let graph = LabeledGraph::new(shape.clone(), vertices)?;
                if graph.order() != self.vertices.len() {
                    return Err(Error::Parse("field `vertices`: duplicate vertex".into()));
                }
                Ok(DocumentGraph::Labeled { graph, root })
            }
            (None, Some(edges)) => {
                let names: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
                let pairs: Vec<(&str, &str)> = edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
                let graph = Graph::from_named_edges(&names, &pairs)?;
                let root = graph
                    .index_of(&self.root)
                    .ok_or_else(|| Error::UnknownVertex(self.root.clone()))?;
                Ok(DocumentGraph::Generic { graph, root })
            }
            (Some(_), Some(_)) => Err(Error::Parse("labeled documents must not carry `edges`".into())),
            (None, None) => Err(Error::Parse("generic documents need `edges`; labeled ones need `shape`".into())),
        }
    }

    /// The labeled graph, requiring the root to be `0^n`.
    pub fn labeled_graph(&self) -> Result<LabeledGraph> {
        match self.graph()? {
            DocumentGraph::Labeled { graph, root } if root == graph.shape().root() => Ok(graph),
            DocumentGraph::Labeled { root, .. } => Err(Error::Precondition(format!(
                "operation needs the root 0^n, document is rooted at {root}"
            ))),
            DocumentGraph::Generic { .. } => Err(Error::Precondition("operation needs a labeled document".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptStep {
    /// Coordinate removed by the contraction and re-inserted on replay.
    pub coord: usize,
    /// Shape after the contraction.
    pub shape: Shape,
    /// `X_0, X_1, …`; `X_0` is the whole contracted vertex set.
    pub covers: Vec<Vec<String>>,
}

/// A decomposition to `K1`, replayable into the original document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptDocument {
    pub schema: u32,
    pub shape: Shape,
    /// Steps in contraction order.
    pub steps: Vec<ScriptStep>,
    /// Notes of the decomposed document, restored on replay.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ScriptDocument {
    pub fn from_decomposition(d: &Decomposition, notes: Vec<String>) -> Self {
        ScriptDocument {
            schema: SCHEMA_VERSION,
            shape: d.original.shape().clone(),
            steps: d
                .steps
                .iter()
                .map(|s| ScriptStep {
                    coord: s.coord,
                    shape: s.result.shape().clone(),
                    covers: s
                        .covers
                        .iter()
                        .map(|c| c.iter().map(|v| v.to_string()).collect())
                        .collect(),
                })
                .collect(),
            notes,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: ScriptDocument = serde_json::from_str(text).map_err(parse_error)?;
        check_schema(doc.schema)?;
        Ok(doc)
    }

    pub fn to_text(&self) -> String {
        to_text(self)
    }

    /// Rebuild the decomposed graph by daisy peripheral expansions.
    pub fn replay(&self) -> Result<GraphDocument> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let covers = s
                    .covers
                    .iter()
                    .map(|c| c.iter().map(|v| v.parse()).collect::<Result<Vec<Vertex>>>())
                    .collect::<Result<Vec<_>>>()?;
                let result = LabeledGraph::new(s.shape.clone(), covers.first().cloned().unwrap_or_default())?;
                Ok(DecompositionStep {
                    coord: s.coord,
                    covers,
                    result,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let g = replay_steps(&steps)?;
        if g.shape() != &self.shape {
            return Err(Error::TheoremViolation(format!(
                "replay produced shape {}, script records {}",
                g.shape(),
                self.shape
            )));
        }
        Ok(GraphDocument::labeled(&g, &g.shape().root(), self.notes.clone()))
    }
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz text with one colored edge group per class. `labels[v]` is the
/// displayed label of vertex `v`.
pub fn to_dot(g: &Graph, labels: &[String], root: usize, classes: &[EdgeClass]) -> String {
    let mut out = String::from("graph daisy {\n  node [shape=ellipse];\n");
    for (v, label) in labels.iter().enumerate().take(g.order()) {
        let extra = if v == root { ", peripheries=2" } else { "" };
        out.push_str(&format!("  {} [label={}{extra}];\n", quote(g.name(v)), quote(label)));
    }
    for (i, class) in classes.iter().enumerate() {
        out.push_str(&format!(
            "  subgraph class_{} {{\n    edge [color={}];\n",
            i + 1,
            quote(PALETTE[i % PALETTE.len()])
        ));
        for &(a, b) in &class.edges {
            out.push_str(&format!("    {} -- {};\n", quote(g.name(a)), quote(g.name(b))));
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// DOT export of a labeled graph, vertices labeled by coordinate tuples.
pub fn labeled_to_dot(g: &LabeledGraph, root: &Vertex, classes: &[EdgeClass]) -> Result<String> {
    let labels: Vec<String> = g.vertices().iter().map(|v| format!("({v})")).collect();
    Ok(to_dot(g.graph(), &labels, g.require(root)?, classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::decompose_to_k1;
    use crate::graph::Metric;
    use crate::relations::delta_classes;

    fn p3() -> LabeledGraph {
        LabeledGraph::new(
            "2,2".parse().unwrap(),
            ["0,0", "0,1", "1,0"].iter().map(|s| s.parse().unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn labeled_round_trip() {
        let g = p3();
        let doc = GraphDocument::labeled(&g, &g.shape().root(), vec!["built by hand".into()]);
        let text = doc.to_text();
        assert!(!text.contains("edges"));
        let back = GraphDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_text(), text);
        assert_eq!(back.labeled_graph().unwrap().vertices(), g.vertices());
    }

    #[test]
    fn multi_digit_values_stay_unambiguous() {
        let g = LabeledGraph::new("12,2".parse().unwrap(), ["0,0", "10,0", "1,0"].iter().map(|s| s.parse().unwrap())).unwrap();
        let doc = GraphDocument::labeled(&g, &g.shape().root(), vec![]);
        assert_eq!(doc.vertices, vec!["0,0", "1,0", "10,0"]);
    }

    #[test]
    fn generic_round_trip() {
        let c4 = Graph::cycle(4);
        let doc = GraphDocument::generic(&c4, 0, vec![]);
        let text = doc.to_text();
        let back = GraphDocument::parse(&text).unwrap();
        assert_eq!(back.to_text(), text);
        match back.graph().unwrap() {
            DocumentGraph::Generic { graph, root } => {
                assert_eq!(graph.edges(), c4.edges());
                assert_eq!(root, 0);
            }
            _ => panic!("expected a generic graph"),
        }
    }

    #[test]
    fn parse_errors_name_the_place() {
        let err = GraphDocument::parse("{\"schema\": 1,\n \"root\": 3}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = GraphDocument::parse(r#"{"schema": 9, "root": "", "vertices": []}"#).unwrap_err();
        assert!(err.to_string().contains("schema"), "{err}");
        let doc = GraphDocument::parse(r#"{"schema": 1, "shape": [2,2], "root": "0,0", "vertices": []}"#).unwrap();
        assert_eq!(doc.graph().unwrap_err(), Error::EmptyGraph);
        let doc = GraphDocument::parse(r#"{"schema": 1, "shape": [2,2], "root": "0,0", "vertices": ["0,0,1"]}"#).unwrap();
        assert!(matches!(doc.graph(), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn script_replays_byte_identically() {
        let g = p3();
        let doc = GraphDocument::labeled(&g, &g.shape().root(), vec!["note".into()]);
        let script = ScriptDocument::from_decomposition(&decompose_to_k1(&g).unwrap(), doc.notes.clone());
        assert_eq!(script.steps.len(), 2);
        let text = script.to_text();
        let replayed = ScriptDocument::parse(&text).unwrap().replay().unwrap();
        assert_eq!(replayed.to_text(), doc.to_text());
    }

    #[test]
    fn dot_groups_classes() {
        let g = LabeledGraph::full("3,3".parse().unwrap(), 100).unwrap();
        let classes = delta_classes(&Metric::new(g.graph().clone())).unwrap();
        let dot = labeled_to_dot(&g, &g.shape().root(), &classes).unwrap();
        assert_eq!(dot.matches("subgraph class_").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 18);
        assert!(dot.contains("label=\"(2,1)\""));
    }
}
