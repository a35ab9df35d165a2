//! Vertex identity and the immutable simple graph shared by every module.

mod io;

pub use io::Format;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Dense vertex index into a [`Graph`]; ids follow canonical label order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Structural identity of a vertex.
///
/// In a constructed graph `tree` is the index of the binomial tree the vertex
/// belongs to, `pos` its position code inside that tree (empty for the root),
/// and `cube` its hypercube coordinate when it is a root or the promoted leaf.
/// Field order is the canonical sort order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    pub tree: Option<u32>,
    pub pos: BitString,
    pub cube: Option<BitString>,
}

impl VertexLabel {
    /// Label for vertex `i` of a graph with no construction structure.
    pub fn plain(i: u32) -> Self {
        VertexLabel { tree: Some(i), pos: BitString::empty(), cube: None }
    }

    pub fn cube_vertex(coord: u64, dim: u8) -> Self {
        VertexLabel { tree: None, pos: BitString::empty(), cube: Some(BitString::new(coord, dim)) }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tree {
            Some(t) => write!(f, "{t}")?,
            None => f.write_str("-")?,
        }
        write!(f, ":{}:", self.pos)?;
        match self.cube {
            Some(c) => write!(f, "{c}"),
            None => f.write_str("-"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    /// Parses the `tree:pos:cube` form produced by `Display`; a bare integer
    /// `i` is [`VertexLabel::plain`]`(i)`.
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(i) = s.parse::<u32>() {
            return Ok(VertexLabel::plain(i));
        }
        let mut parts = s.split(':');
        let (Some(tree), Some(pos), Some(cube), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::Parse(format!("label {s:?} is not tree:pos:cube")));
        };
        let tree = match tree {
            "-" => None,
            t => Some(t.parse::<u32>().map_err(|e| Error::Parse(format!("tree index {t:?}: {e}")))?),
        };
        let cube = match cube {
            "-" => None,
            c => Some(c.parse()?),
        };
        Ok(VertexLabel { tree, pos: pos.parse()?, cube })
    }
}

/// Construction parameters carried along with a graph for serialization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraphMeta {
    pub t: Option<u32>,
    pub k: Option<u32>,
}

/// Immutable simple undirected graph with canonically ordered vertices.
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    adj: Vec<Vec<VertexId>>,
    index: HashMap<VertexLabel, VertexId>,
    edge_count: usize,
    meta: GraphMeta,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj && self.meta == other.meta
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from labels and label-pair edges.
    ///
    /// Labels are sorted into canonical order; duplicate edges collapse.
    /// Self-loops, repeated labels and edges naming unknown labels are errors.
    pub fn from_labels<I>(labels: Vec<VertexLabel>, edges: I, meta: GraphMeta) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexLabel, VertexLabel)>,
    {
        let mut sorted = labels;
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate vertex label {}", w[0])));
        }
        let index: HashMap<VertexLabel, VertexId> =
            sorted.iter().enumerate().map(|(i, l)| (*l, VertexId(i as u32))).collect();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let ia = *index.get(&a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let ib = *index.get(&b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            pairs.push((ia, ib));
        }
        Self::assemble(sorted, index, pairs, meta)
    }

    /// Builds a graph whose labels are already in canonical order.
    pub(crate) fn from_sorted_ids(
        labels: Vec<VertexLabel>,
        edges: Vec<(VertexId, VertexId)>,
        meta: GraphMeta,
    ) -> Result<Self> {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let index = labels.iter().enumerate().map(|(i, l)| (*l, VertexId(i as u32))).collect();
        Self::assemble(labels, index, edges, meta)
    }

    /// Graph on `n` plain vertices `0..n` with the given index edges.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        let labels: Vec<VertexLabel> = (0..n).map(VertexLabel::plain).collect();
        let mut pairs = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex(a.max(b).to_string()));
            }
            pairs.push((a, b));
        }
        // plain labels sort by index, so ids coincide with the given indices
        let ids = pairs.into_iter().map(|(a, b)| (VertexId(a), VertexId(b))).collect();
        Self::from_sorted_ids(labels, ids, GraphMeta::default())
    }

    fn assemble(
        labels: Vec<VertexLabel>,
        index: HashMap<VertexLabel, VertexId>,
        edges: Vec<(VertexId, VertexId)>,
        meta: GraphMeta,
    ) -> Result<Self> {
        let n = labels.len();
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for (a, b) in edges {
            if a.index() >= n || b.index() >= n {
                return Err(Error::unknown(if a.index() >= n { a } else { b }));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {}", labels[a.index()])));
            }
            adj[a.index()].push(b);
            adj[b.index()].push(a);
        }
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Ok(Graph { labels, adj, index, edge_count: twice / 2, meta })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn meta(&self) -> GraphMeta {
        self.meta
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> Option<&VertexLabel> {
        self.labels.get(v.index())
    }

    pub fn id_of(&self, label: &VertexLabel) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.labels.len() as u32).map(VertexId)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.labels.len()
    }

    /// Sorted neighbor list; empty for ids outside the graph.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.adj.get(v.index()).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.adj.get(v.index()).map(Vec::len).ok_or_else(|| Error::unknown(v))
    }

    pub fn degree_of(&self, label: &VertexLabel) -> Result<usize> {
        let id = self.id_of(label).ok_or_else(|| Error::UnknownVertex(label.to_string()))?;
        self.degree(id)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, list)| {
            let a = VertexId(a as u32);
            list.iter().filter(move |&&b| a < b).map(move |&b| (a, b))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    reached += 1;
                    queue.push_back(w.index());
                }
            }
        }
        reached == n
    }

    /// Copy of the graph with one edge removed (no-op if absent).
    pub fn without_edge(&self, a: VertexId, b: VertexId) -> Graph {
        let mut g = self.clone();
        if g.has_edge(a, b) {
            g.adj[a.index()].retain(|&x| x != b);
            g.adj[b.index()].retain(|&x| x != a);
            g.edge_count -= 1;
        }
        g
    }
}
