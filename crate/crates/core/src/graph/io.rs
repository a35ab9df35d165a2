//! Deterministic serialization of graphs: JSON, DOT and a labelled edge list.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphMeta, VertexId, VertexLabel};
use crate::bits::BitString;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            "edgelist" => Ok(Format::EdgeList),
            other => Err(Error::Parse(format!("unknown graph format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonVertex {
    id: u32,
    tree: Option<u32>,
    pos: String,
    cube: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    n: usize,
    t: Option<u32>,
    k: Option<u32>,
    vertices: Vec<JsonVertex>,
    edges: Vec<[u32; 2]>,
}

impl Graph {
    pub fn export(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Dot => self.to_dot(),
            Format::EdgeList => self.to_edge_list(),
        }
    }

    pub fn to_json(&self) -> String {
        let doc = JsonGraph {
            n: self.len(),
            t: self.meta.t,
            k: self.meta.k,
            vertices: self
                .labels
                .iter()
                .enumerate()
                .map(|(i, l)| JsonVertex {
                    id: i as u32,
                    tree: l.tree,
                    pos: l.pos.to_string(),
                    cube: l.cube.map(|c| c.to_string()),
                })
                .collect(),
            edges: self.edges().map(|(a, b)| [a.0, b.0]).collect(),
        };
        serde_json::to_string(&doc).expect("graph JSON serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let doc: JsonGraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.n != doc.vertices.len() {
            return Err(Error::Parse(format!(
                "n = {} but {} vertices listed",
                doc.n,
                doc.vertices.len()
            )));
        }
        let mut by_id: Vec<Option<VertexLabel>> = vec![None; doc.n];
        for v in &doc.vertices {
            let slot = by_id
                .get_mut(v.id as usize)
                .ok_or_else(|| Error::Parse(format!("vertex id {} out of range", v.id)))?;
            if slot.is_some() {
                return Err(Error::Parse(format!("vertex id {} repeated", v.id)));
            }
            let cube = v.cube.as_deref().map(BitString::from_str).transpose()?;
            *slot = Some(VertexLabel { tree: v.tree, pos: v.pos.parse()?, cube });
        }
        let labels: Vec<VertexLabel> = by_id.into_iter().map(|l| l.expect("all ids filled")).collect();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for [a, b] in doc.edges {
            let la = labels.get(a as usize).ok_or_else(|| Error::Parse(format!("edge endpoint {a} out of range")))?;
            let lb = labels.get(b as usize).ok_or_else(|| Error::Parse(format!("edge endpoint {b} out of range")))?;
            edges.push((*la, *lb));
        }
        Graph::from_labels(labels, edges, GraphMeta { t: doc.t, k: doc.k })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(out, "  {i} [label=\"{l}\"];").unwrap();
        }
        for (a, b) in self.edges() {
            writeln!(out, "  {a} -- {b};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// One line per edge, `label label`, in canonical order.
    ///
    /// Isolated vertices get a line with their label alone, and construction
    /// parameters, when present, go in a leading `# t=.. k=..` comment.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        if self.meta != GraphMeta::default() {
            let show = |v: Option<u32>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
            writeln!(out, "# t={} k={}", show(self.meta.t), show(self.meta.k)).unwrap();
        }
        for (i, l) in self.labels.iter().enumerate() {
            let id = VertexId(i as u32);
            let nbrs = self.neighbors(id);
            if nbrs.is_empty() {
                writeln!(out, "{l}").unwrap();
            }
            for &b in nbrs.iter().filter(|&&b| b > id) {
                writeln!(out, "{l} {}", self.labels[b.index()]).unwrap();
            }
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut meta = GraphMeta::default();
        let mut labels = BTreeSet::new();
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                for field in rest.split_whitespace() {
                    let parse = |v: &str| -> Result<Option<u32>> {
                        if v == "-" {
                            Ok(None)
                        } else {
                            v.parse().map(Some).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
                        }
                    };
                    if let Some(v) = field.strip_prefix("t=") {
                        meta.t = parse(v)?;
                    } else if let Some(v) = field.strip_prefix("k=") {
                        meta.k = parse(v)?;
                    }
                }
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [a] => {
                    labels.insert(a.parse::<VertexLabel>()?);
                }
                [a, b] => {
                    let (a, b) = (a.parse::<VertexLabel>()?, b.parse::<VertexLabel>()?);
                    labels.insert(a);
                    labels.insert(b);
                    edges.push((a, b));
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected one or two labels",
                        lineno + 1
                    )))
                }
            }
        }
        Graph::from_labels(labels.into_iter().collect(), edges, meta)
    }

    /// Parses JSON or edge-list text, picking the format from the first byte.
    pub fn parse_any(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            Graph::from_json(text)
        } else {
            Graph::from_edge_list(text)
        }
    }
}
