//! Path multiset representations.
//!
//! A PMR is an unlabeled graph with a homomorphism γ into a [`GraphDb`]
//! and designated source and target node sets. It stands for the multiset
//! of γ-images of all its source-to-target paths, which may be infinite.

mod group;
mod product;
mod radix;
mod serialize;
mod shortest;
mod simple;
mod trim;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphDb, GraphRef, NodeId, Path};

pub use crate::graph::NodePredicate;
pub use group::{group, Group, GroupKind, GroupedPmr};
pub(crate) use product::select_trim_with_states;
pub use product::{product, product_select_trim, product_unchecked};
pub use radix::radix_shortest_filter;
pub use serialize::{from_json, to_json};
pub use shortest::shortest_filter;
pub use simple::{simple_trail_filter, PathMode, DEFAULT_PATH_CAP};
pub use trim::{select, trim};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepNode(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepEdge(pub u32);

impl RepNode {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl RepEdge {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone)]
pub struct Pmr {
    graph: GraphRef,
    node_gamma: Vec<NodeId>,
    edge_src: Vec<RepNode>,
    edge_tgt: Vec<RepNode>,
    edge_gamma: Vec<EdgeId>,
    out: Vec<Vec<RepEdge>>,
    inc: Vec<Vec<RepEdge>>,
    sources: Vec<RepNode>,
    targets: Vec<RepNode>,
    is_source: Vec<bool>,
    is_target: Vec<bool>,
}

/// Incremental constructor for [`Pmr`]. Homomorphism is not checked here;
/// see [`Pmr::validate`].
#[derive(Debug, Clone)]
pub struct PmrBuilder {
    graph: GraphRef,
    node_gamma: Vec<NodeId>,
    edge_src: Vec<RepNode>,
    edge_tgt: Vec<RepNode>,
    edge_gamma: Vec<EdgeId>,
    is_source: Vec<bool>,
    is_target: Vec<bool>,
}

impl PmrBuilder {
    pub fn new(graph: GraphRef) -> Self {
        PmrBuilder {
            graph,
            node_gamma: Vec::new(),
            edge_src: Vec::new(),
            edge_tgt: Vec::new(),
            edge_gamma: Vec::new(),
            is_source: Vec::new(),
            is_target: Vec::new(),
        }
    }

    pub fn with_capacity(graph: GraphRef, nodes: usize, edges: usize) -> Self {
        PmrBuilder {
            graph,
            node_gamma: Vec::with_capacity(nodes),
            edge_src: Vec::with_capacity(edges),
            edge_tgt: Vec::with_capacity(edges),
            edge_gamma: Vec::with_capacity(edges),
            is_source: Vec::with_capacity(nodes),
            is_target: Vec::with_capacity(nodes),
        }
    }

    pub fn add_node(&mut self, gamma: NodeId) -> RepNode {
        self.node_gamma.push(gamma);
        self.is_source.push(false);
        self.is_target.push(false);
        RepNode(self.node_gamma.len() as u32 - 1)
    }

    pub fn add_edge(&mut self, src: RepNode, tgt: RepNode, gamma: EdgeId) -> RepEdge {
        self.edge_src.push(src);
        self.edge_tgt.push(tgt);
        self.edge_gamma.push(gamma);
        RepEdge(self.edge_src.len() as u32 - 1)
    }

    pub fn set_source(&mut self, v: RepNode) {
        self.is_source[v.index()] = true;
    }

    pub fn set_target(&mut self, v: RepNode) {
        self.is_target[v.index()] = true;
    }

    pub fn node_count(&self) -> usize {
        self.node_gamma.len()
    }

    pub fn build(self) -> Pmr {
        let n = self.node_gamma.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, (&s, &t)) in self.edge_src.iter().zip(&self.edge_tgt).enumerate() {
            out[s.index()].push(RepEdge(i as u32));
            inc[t.index()].push(RepEdge(i as u32));
        }
        let sources = (0..n as u32)
            .map(RepNode)
            .filter(|v| self.is_source[v.index()])
            .collect();
        let targets = (0..n as u32)
            .map(RepNode)
            .filter(|v| self.is_target[v.index()])
            .collect();
        Pmr {
            graph: self.graph,
            node_gamma: self.node_gamma,
            edge_src: self.edge_src,
            edge_tgt: self.edge_tgt,
            edge_gamma: self.edge_gamma,
            out,
            inc,
            sources,
            targets,
            is_source: self.is_source,
            is_target: self.is_target,
        }
    }
}

impl Pmr {
    pub fn builder(graph: GraphRef) -> PmrBuilder {
        PmrBuilder::new(graph)
    }

    /// The PMR with no nodes; it represents the empty multiset.
    pub fn empty(graph: GraphRef) -> Pmr {
        PmrBuilder::new(graph).build()
    }

    /// Disjoint union of one chain per path. The result is trim and
    /// represents `paths` with multiplicities.
    pub fn canonical<'a>(graph: GraphRef, paths: impl IntoIterator<Item = &'a Path>) -> Pmr {
        let mut b = PmrBuilder::new(graph);
        for p in paths {
            debug_assert_eq!(p.graph, graph);
            let mut prev = b.add_node(p.nodes[0]);
            b.set_source(prev);
            for (e, &n) in p.edges.iter().zip(&p.nodes[1..]) {
                let v = b.add_node(n);
                b.add_edge(prev, v, *e);
                prev = v;
            }
            b.set_target(prev);
        }
        b.build()
    }

    pub fn graph_ref(&self) -> GraphRef {
        self.graph
    }

    pub fn node_count(&self) -> usize {
        self.node_gamma.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_src.len()
    }

    /// `|N| + |E|`, the size measure used for complexity bounds.
    pub fn size(&self) -> usize {
        self.node_count() + self.edge_count()
    }

    pub fn nodes(&self) -> impl Iterator<Item = RepNode> + '_ {
        (0..self.node_gamma.len() as u32).map(RepNode)
    }

    pub fn edges(&self) -> impl Iterator<Item = RepEdge> + '_ {
        (0..self.edge_src.len() as u32).map(RepEdge)
    }

    #[inline]
    pub fn gamma(&self, v: RepNode) -> NodeId {
        self.node_gamma[v.index()]
    }

    #[inline]
    pub fn edge_gamma(&self, e: RepEdge) -> EdgeId {
        self.edge_gamma[e.index()]
    }

    #[inline]
    pub fn src(&self, e: RepEdge) -> RepNode {
        self.edge_src[e.index()]
    }

    #[inline]
    pub fn tgt(&self, e: RepEdge) -> RepNode {
        self.edge_tgt[e.index()]
    }

    #[inline]
    pub fn out_edges(&self, v: RepNode) -> &[RepEdge] {
        &self.out[v.index()]
    }

    #[inline]
    pub fn in_edges(&self, v: RepNode) -> &[RepEdge] {
        &self.inc[v.index()]
    }

    pub fn sources(&self) -> &[RepNode] {
        &self.sources
    }

    pub fn targets(&self) -> &[RepNode] {
        &self.targets
    }

    #[inline]
    pub fn is_source(&self, v: RepNode) -> bool {
        self.is_source[v.index()]
    }

    #[inline]
    pub fn is_target(&self, v: RepNode) -> bool {
        self.is_target[v.index()]
    }

    /// Checks the homomorphism condition and that γ stays inside `g`.
    pub fn validate(&self, g: &GraphDb) -> Result<()> {
        if self.graph != g.graph_ref() {
            return Err(Error::GraphMismatch {
                left: self.graph.to_hex(),
                right: g.graph_ref().to_hex(),
            });
        }
        for v in self.nodes() {
            if self.gamma(v).index() >= g.node_count() {
                return Err(Error::Incidence(format!(
                    "node v{} maps outside the graph",
                    v.0
                )));
            }
        }
        for e in self.edges() {
            let ge = self.edge_gamma(e);
            if ge.index() >= g.edge_count() {
                return Err(Error::Incidence(format!(
                    "edge e{} maps outside the graph",
                    e.0
                )));
            }
            if g.src(ge) != self.gamma(self.src(e)) || g.tgt(ge) != self.gamma(self.tgt(e)) {
                return Err(Error::Incidence(format!(
                    "edge e{} maps to {} but its endpoints map to {} and {}",
                    e.0,
                    g.edge_name(ge),
                    g.node_name(self.gamma(self.src(e))),
                    g.node_name(self.gamma(self.tgt(e)))
                )));
            }
        }
        Ok(())
    }

    /// Every node lies on some source-to-target path.
    pub fn is_trim(&self) -> bool {
        let (fwd, bwd) = self.reachability();
        fwd.iter().zip(&bwd).all(|(&f, &b)| f && b)
    }

    /// Forward reachability from S and backward reachability from T.
    pub(crate) fn reachability(&self) -> (Vec<bool>, Vec<bool>) {
        let n = self.node_count();
        let mut fwd = vec![false; n];
        let mut stack: Vec<RepNode> = self.sources.clone();
        for v in &stack {
            fwd[v.index()] = true;
        }
        while let Some(v) = stack.pop() {
            for &e in self.out_edges(v) {
                let w = self.tgt(e);
                if !fwd[w.index()] {
                    fwd[w.index()] = true;
                    stack.push(w);
                }
            }
        }
        let mut bwd = vec![false; n];
        let mut stack: Vec<RepNode> = self.targets.clone();
        for v in &stack {
            bwd[v.index()] = true;
        }
        while let Some(v) = stack.pop() {
            for &e in self.in_edges(v) {
                let w = self.src(e);
                if !bwd[w.index()] {
                    bwd[w.index()] = true;
                    stack.push(w);
                }
            }
        }
        (fwd, bwd)
    }

    /// A topological order of all nodes, or `None` if there is a cycle.
    pub fn topological_order(&self) -> Option<Vec<RepNode>> {
        let mut indeg: Vec<usize> = self.nodes().map(|v| self.in_edges(v).len()).collect();
        let mut order: Vec<RepNode> = self.nodes().filter(|v| indeg[v.index()] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &e in self.out_edges(v) {
                let w = self.tgt(e);
                indeg[w.index()] -= 1;
                if indeg[w.index()] == 0 {
                    order.push(w);
                }
            }
        }
        (order.len() == self.node_count()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// The same PMR with every edge flipped and S, T swapped. It represents
    /// the reversed paths.
    pub fn reversed(&self) -> Pmr {
        Pmr {
            graph: self.graph,
            node_gamma: self.node_gamma.clone(),
            edge_src: self.edge_tgt.clone(),
            edge_tgt: self.edge_src.clone(),
            edge_gamma: self.edge_gamma.clone(),
            out: self.inc.clone(),
            inc: self.out.clone(),
            sources: self.targets.clone(),
            targets: self.sources.clone(),
            is_source: self.is_target.clone(),
            is_target: self.is_source.clone(),
        }
    }

    /// Builder seeded with a copy of this PMR; new ids continue after the
    /// existing ones.
    pub fn to_builder(&self) -> PmrBuilder {
        PmrBuilder {
            graph: self.graph,
            node_gamma: self.node_gamma.clone(),
            edge_src: self.edge_src.clone(),
            edge_tgt: self.edge_tgt.clone(),
            edge_gamma: self.edge_gamma.clone(),
            is_source: self.is_source.clone(),
            is_target: self.is_target.clone(),
        }
    }

    /// Sub-PMR on the marked nodes and edges with the given sources and
    /// targets. Edges whose endpoints are unmarked are dropped. Relative
    /// order is preserved.
    pub(crate) fn restrict(
        &self,
        keep_node: &[bool],
        keep_edge: &[bool],
        is_source: impl Fn(RepNode) -> bool,
        is_target: impl Fn(RepNode) -> bool,
    ) -> Pmr {
        let mut b = PmrBuilder::new(self.graph);
        let mut map = vec![u32::MAX; self.node_count()];
        for v in self.nodes().filter(|v| keep_node[v.index()]) {
            let nv = b.add_node(self.gamma(v));
            map[v.index()] = nv.0;
            if is_source(v) {
                b.set_source(nv);
            }
            if is_target(v) {
                b.set_target(nv);
            }
        }
        for e in self.edges().filter(|e| keep_edge[e.index()]) {
            let (s, t) = (map[self.src(e).index()], map[self.tgt(e).index()]);
            if s != u32::MAX && t != u32::MAX {
                b.add_edge(RepNode(s), RepNode(t), self.edge_gamma(e));
            }
        }
        b.build()
    }

    /// Represents `mpaths(self) ⊎ mpaths(other)`. Ids of `other` are shifted
    /// past those of `self`.
    pub fn disjoint_union(&self, other: &Pmr) -> Result<Pmr> {
        if self.graph != other.graph {
            return Err(Error::GraphMismatch {
                left: self.graph.to_hex(),
                right: other.graph.to_hex(),
            });
        }
        Ok(Pmr::union_all(self.graph, [self, other]))
    }

    /// Disjoint union of PMRs known to share `graph`.
    pub fn union_all<'a>(graph: GraphRef, parts: impl IntoIterator<Item = &'a Pmr>) -> Pmr {
        let mut b = PmrBuilder::new(graph);
        for p in parts {
            debug_assert_eq!(p.graph, graph);
            let off = b.node_count() as u32;
            for v in p.nodes() {
                let nv = b.add_node(p.gamma(v));
                if p.is_source(v) {
                    b.set_source(nv);
                }
                if p.is_target(v) {
                    b.set_target(nv);
                }
            }
            for e in p.edges() {
                b.add_edge(
                    RepNode(p.src(e).0 + off),
                    RepNode(p.tgt(e).0 + off),
                    p.edge_gamma(e),
                );
            }
        }
        b.build()
    }

    /// Image of a rep-path given as a start node and edge list.
    pub fn image(&self, start: RepNode, edges: &[RepEdge]) -> Path {
        let mut nodes = Vec::with_capacity(edges.len() + 1);
        nodes.push(self.gamma(start));
        nodes.extend(edges.iter().map(|&e| self.gamma(self.tgt(e))));
        Path {
            graph: self.graph,
            nodes,
            edges: edges.iter().map(|&e| self.edge_gamma(e)).collect(),
        }
    }

    /// Distinct γ values of the sources, sorted.
    pub fn source_gammas(&self) -> Vec<NodeId> {
        sorted_distinct(self.sources.iter().map(|&v| self.gamma(v)))
    }

    /// Distinct γ values of the targets, sorted.
    pub fn target_gammas(&self) -> Vec<NodeId> {
        sorted_distinct(self.targets.iter().map(|&v| self.gamma(v)))
    }

    /// Checks that two PMRs are identical up to renaming of rep-nodes and
    /// rep-edges that preserves relative order. Used to compare outputs of
    /// order-preserving operations.
    pub fn same_structure(&self, other: &Pmr) -> bool {
        self.graph == other.graph
            && self.node_gamma == other.node_gamma
            && self.edge_src == other.edge_src
            && self.edge_tgt == other.edge_tgt
            && self.edge_gamma == other.edge_gamma
            && self.is_source == other.is_source
            && self.is_target == other.is_target
    }
}

fn sorted_distinct(it: impl Iterator<Item = NodeId>) -> Vec<NodeId> {
    let set: HashSet<NodeId> = it.collect();
    let mut v: Vec<NodeId> = set.into_iter().collect();
    v.sort_unstable();
    v
}
