//! Edge-labeled directed multigraphs, the data being queried.
//!
//! Node, edge and label identifiers are opaque strings on the outside and
//! dense `u32` indices on the inside, so adjacency lookups are plain vector
//! indexing. A graph is immutable once built.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! node <node-id>
//! edge <edge-id> <src-id> <tgt-id> <label>
//! ```
//!
//! Edge declarations register their endpoints implicitly; `node` lines are
//! only needed for isolated nodes.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl LabelId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Content digest identifying a graph.
///
/// Computed over the canonicalized (sorted) declaration list, so two files
/// that declare the same graph in a different order share a digest.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphRef(pub [u8; 32]);

impl GraphRef {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(text: &str) -> Option<Self> {
        if text.len() != 64 || !text.is_ascii() {
            return None;
        }
        let mut out = [0u8; 32];
        for (i, chunk) in text.as_bytes().chunks(2).enumerate() {
            let s = std::str::from_utf8(chunk).ok()?;
            out[i] = u8::from_str_radix(s, 16).ok()?;
        }
        Some(GraphRef(out))
    }
}

impl fmt::Display for GraphRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for GraphRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphRef({})", &self.to_hex()[..12])
    }
}

#[derive(Debug, Clone, Default)]
struct Interner {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Interner {
    fn get(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), id);
        id
    }

    fn name(&self, id: u32) -> &str {
        &self.names[id as usize]
    }

    fn len(&self) -> usize {
        self.names.len()
    }
}

/// A graph database `(N, E, η, λ)` with forward and backward adjacency.
#[derive(Debug, Clone)]
pub struct GraphDb {
    nodes: Interner,
    edges: Interner,
    labels: Interner,
    edge_src: Vec<NodeId>,
    edge_tgt: Vec<NodeId>,
    edge_label: Vec<LabelId>,
    out: Vec<Vec<EdgeId>>,
    inc: Vec<Vec<EdgeId>>,
    graph_ref: GraphRef,
}

/// Incremental constructor for [`GraphDb`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    nodes: Interner,
    edges: Interner,
    labels: Interner,
    edge_src: Vec<NodeId>,
    edge_tgt: Vec<NodeId>,
    edge_label: Vec<LabelId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: &str) -> NodeId {
        NodeId(self.nodes.intern(name))
    }

    /// Adds an edge, registering both endpoints. Edge ids must be unique.
    pub fn add_edge(&mut self, name: &str, src: &str, tgt: &str, label: &str) -> Result<EdgeId> {
        if self.edges.get(name).is_some() {
            return Err(Error::Format {
                line: 0,
                message: format!("duplicate edge id `{name}`"),
            });
        }
        let s = self.add_node(src);
        let t = self.add_node(tgt);
        let l = LabelId(self.labels.intern(label));
        let e = EdgeId(self.edges.intern(name));
        self.edge_src.push(s);
        self.edge_tgt.push(t);
        self.edge_label.push(l);
        Ok(e)
    }

    pub fn build(self) -> GraphDb {
        let n = self.nodes.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, (&s, &t)) in self.edge_src.iter().zip(&self.edge_tgt).enumerate() {
            out[s.index()].push(EdgeId(i as u32));
            inc[t.index()].push(EdgeId(i as u32));
        }
        let mut g = GraphDb {
            nodes: self.nodes,
            edges: self.edges,
            labels: self.labels,
            edge_src: self.edge_src,
            edge_tgt: self.edge_tgt,
            edge_label: self.edge_label,
            out,
            inc,
            graph_ref: GraphRef([0; 32]),
        };
        g.graph_ref = g.compute_ref();
        g
    }
}

impl GraphDb {
    /// Parses the line-oriented graph format.
    pub fn parse(text: &str) -> Result<GraphDb> {
        let mut b = GraphBuilder::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                ["node", id] => {
                    b.add_node(id);
                }
                ["edge", id, src, tgt, label] => {
                    b.add_edge(id, src, tgt, label).map_err(|e| match e {
                        Error::Format { message, .. } => Error::format(line_no, message),
                        other => other,
                    })?;
                }
                ["node", ..] => return Err(Error::format(line_no, "expected `node <id>`")),
                ["edge", ..] => {
                    return Err(Error::format(
                        line_no,
                        "expected `edge <id> <src> <tgt> <label>`",
                    ))
                }
                [kw, ..] => {
                    return Err(Error::format(
                        line_no,
                        format!("unknown declaration `{kw}`"),
                    ))
                }
            }
        }
        Ok(b.build())
    }

    /// Serializes in declaration order: every node first, then every edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for n in self.nodes() {
            s.push_str("node ");
            s.push_str(self.node_name(n));
            s.push('\n');
        }
        for e in self.edges() {
            s.push_str(&format!(
                "edge {} {} {} {}\n",
                self.edge_name(e),
                self.node_name(self.src(e)),
                self.node_name(self.tgt(e)),
                self.label_name(self.label(e))
            ));
        }
        s
    }

    fn compute_ref(&self) -> GraphRef {
        let mut lines: Vec<String> = self
            .nodes()
            .map(|n| format!("node {}", self.node_name(n)))
            .collect();
        lines.extend(self.edges().map(|e| {
            format!(
                "edge {} {} {} {}",
                self.edge_name(e),
                self.node_name(self.src(e)),
                self.node_name(self.tgt(e)),
                self.label_name(self.label(e))
            )
        }));
        lines.sort();
        let mut h = Sha256::new();
        for l in &lines {
            h.update(l.as_bytes());
            h.update(b"\n");
        }
        GraphRef(h.finalize().into())
    }

    pub fn graph_ref(&self) -> GraphRef {
        self.graph_ref
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_src.len()
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_src.len() as u32).map(EdgeId)
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.nodes.get(name).map(NodeId)
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edges.get(name).map(EdgeId)
    }

    pub fn label_id(&self, name: &str) -> Option<LabelId> {
        self.labels.get(name).map(LabelId)
    }

    pub fn node_name(&self, n: NodeId) -> &str {
        self.nodes.name(n.0)
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        self.edges.name(e.0)
    }

    pub fn label_name(&self, l: LabelId) -> &str {
        self.labels.name(l.0)
    }

    #[inline]
    pub fn src(&self, e: EdgeId) -> NodeId {
        self.edge_src[e.index()]
    }

    #[inline]
    pub fn tgt(&self, e: EdgeId) -> NodeId {
        self.edge_tgt[e.index()]
    }

    #[inline]
    pub fn label(&self, e: EdgeId) -> LabelId {
        self.edge_label[e.index()]
    }

    #[inline]
    pub fn out_edges(&self, n: NodeId) -> &[EdgeId] {
        &self.out[n.index()]
    }

    #[inline]
    pub fn in_edges(&self, n: NodeId) -> &[EdgeId] {
        &self.inc[n.index()]
    }

    /// Rank of every label in byte order of the label strings.
    pub fn label_ranks(&self) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.labels.len() as u32).collect();
        order.sort_by(|&a, &b| {
            self.labels
                .name(a)
                .as_bytes()
                .cmp(self.labels.name(b).as_bytes())
        });
        let mut rank = vec![0; order.len()];
        for (r, &l) in order.iter().enumerate() {
            rank[l as usize] = r as u32;
        }
        rank
    }

    /// The subgraph with the given nodes and edges. Edge endpoints are added
    /// to the node set. Ids, labels and relative declaration order are kept.
    pub fn subgraph(&self, nodes: &HashSet<NodeId>, edges: &HashSet<EdgeId>) -> GraphDb {
        let mut keep_nodes: BTreeSet<NodeId> = nodes.iter().copied().collect();
        for &e in edges {
            keep_nodes.insert(self.src(e));
            keep_nodes.insert(self.tgt(e));
        }
        let keep_edges: BTreeSet<EdgeId> = edges.iter().copied().collect();
        let mut b = GraphBuilder::new();
        for n in keep_nodes {
            b.add_node(self.node_name(n));
        }
        for e in keep_edges {
            b.add_edge(
                self.edge_name(e),
                self.node_name(self.src(e)),
                self.node_name(self.tgt(e)),
                self.label_name(self.label(e)),
            )
            .expect("edge ids of a graph are unique");
        }
        b.build()
    }

    /// Checks the structural invariants: total incidence, endpoints inside the
    /// node set, adjacency consistent with incidence.
    pub fn check_invariants(&self) -> bool {
        let n = self.node_count();
        if self.edge_tgt.len() != self.edge_src.len()
            || self.edge_label.len() != self.edge_src.len()
        {
            return false;
        }
        for e in self.edges() {
            if self.src(e).index() >= n || self.tgt(e).index() >= n {
                return false;
            }
            if self.out[self.src(e).index()]
                .iter()
                .filter(|&&x| x == e)
                .count()
                != 1
            {
                return false;
            }
            if self.inc[self.tgt(e).index()]
                .iter()
                .filter(|&&x| x == e)
                .count()
                != 1
            {
                return false;
            }
        }
        self.out.iter().map(Vec::len).sum::<usize>() == self.edge_count()
    }
}

/// A path `v0 e1 v1 … en vn` in a specific graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub graph: GraphRef,
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn empty(graph: GraphRef, at: NodeId) -> Path {
        Path {
            graph,
            nodes: vec![at],
            edges: Vec::new(),
        }
    }

    /// Builds a path from its edge sequence, starting at `start`.
    pub fn from_edges(g: &GraphDb, start: NodeId, edges: &[EdgeId]) -> Result<Path> {
        let mut p = Path::empty(g.graph_ref(), start);
        for &e in edges {
            if g.src(e) != p.target() {
                return Err(Error::Incidence(format!(
                    "edge {} does not leave {}",
                    g.edge_name(e),
                    g.node_name(p.target())
                )));
            }
            p.edges.push(e);
            p.nodes.push(g.tgt(e));
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn target(&self) -> NodeId {
        *self.nodes.last().expect("a path has at least one node")
    }

    /// Label word λ(e1)…λ(en).
    pub fn label_word(&self, g: &GraphDb) -> Vec<LabelId> {
        self.edges.iter().map(|&e| g.label(e)).collect()
    }

    pub fn label_strings<'g>(&self, g: &'g GraphDb) -> Vec<&'g str> {
        self.edges
            .iter()
            .map(|&e| g.label_name(g.label(e)))
            .collect()
    }

    pub fn is_valid_in(&self, g: &GraphDb) -> bool {
        self.graph == g.graph_ref()
            && self.nodes.len() == self.edges.len() + 1
            && self.edges.iter().enumerate().all(|(i, &e)| {
                e.index() < g.edge_count()
                    && g.src(e) == self.nodes[i]
                    && g.tgt(e) == self.nodes[i + 1]
            })
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.nodes.len());
        self.nodes.iter().all(|n| seen.insert(*n))
    }

    pub fn is_trail(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| seen.insert(*e))
    }

    /// `v0 e1 v1 …` with graph ids.
    pub fn render(&self, g: &GraphDb) -> String {
        let mut s = String::from(g.node_name(self.nodes[0]));
        for (e, n) in self.edges.iter().zip(&self.nodes[1..]) {
            s.push(' ');
            s.push_str(g.edge_name(*e));
            s.push(' ');
            s.push_str(g.node_name(*n));
        }
        s
    }
}

/// A node predicate: every node, or a finite hashed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodePredicate {
    All,
    Finite(HashSet<NodeId>),
}

impl NodePredicate {
    pub fn single(n: NodeId) -> Self {
        NodePredicate::Finite(std::iter::once(n).collect())
    }

    pub fn of(nodes: impl IntoIterator<Item = NodeId>) -> Self {
        NodePredicate::Finite(nodes.into_iter().collect())
    }

    #[inline]
    pub fn contains(&self, n: NodeId) -> bool {
        match self {
            NodePredicate::All => true,
            NodePredicate::Finite(set) => set.contains(&n),
        }
    }

    /// Size for complexity accounting; `All` counts as 1.
    pub fn size(&self) -> usize {
        match self {
            NodePredicate::All => 1,
            NodePredicate::Finite(set) => set.len(),
        }
    }
}
