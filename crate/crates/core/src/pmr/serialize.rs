//! JSON documents for PMRs.
//!
//! ```json
//! {
//!   "graph_ref": "<sha-256 of the graph>",
//!   "nodes": [{"id": "v0", "gamma": "a6"}],
//!   "edges": [{"id": "e0", "src": "v0", "tgt": "v1", "gamma": "t6"}],
//!   "sources": ["v0"],
//!   "targets": ["v1"]
//! }
//! ```
//!
//! Writers emit ids `v<i>` / `e<i>` in index order, so output is
//! byte-reproducible. Readers accept any distinct string ids.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Pmr, PmrBuilder, RepNode};
use crate::error::{Error, Result};
use crate::graph::{GraphDb, GraphRef};

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    id: String,
    gamma: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    id: String,
    src: String,
    tgt: String,
    gamma: String,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PmrDoc {
    graph_ref: String,
    nodes: Vec<NodeDoc>,
    edges: Vec<EdgeDoc>,
    sources: Vec<String>,
    targets: Vec<String>,
}

pub(crate) fn to_doc(r: &Pmr, g: &GraphDb) -> PmrDoc {
    let vid = |v: RepNode| format!("v{}", v.0);
    PmrDoc {
        graph_ref: r.graph_ref().to_hex(),
        nodes: r
            .nodes()
            .map(|v| NodeDoc {
                id: vid(v),
                gamma: g.node_name(r.gamma(v)).to_owned(),
            })
            .collect(),
        edges: r
            .edges()
            .map(|e| EdgeDoc {
                id: format!("e{}", e.0),
                src: vid(r.src(e)),
                tgt: vid(r.tgt(e)),
                gamma: g.edge_name(r.edge_gamma(e)).to_owned(),
            })
            .collect(),
        sources: r.sources().iter().map(|&v| vid(v)).collect(),
        targets: r.targets().iter().map(|&v| vid(v)).collect(),
    }
}

/// Pretty-printed JSON document for `r`. `g` must be the graph `r` maps into.
pub fn to_json(r: &Pmr, g: &GraphDb) -> String {
    serde_json::to_string_pretty(&to_doc(r, g)).expect("documents always serialize")
}

pub(crate) fn from_doc(doc: PmrDoc, g: &GraphDb) -> Result<Pmr> {
    let declared = GraphRef::from_hex(&doc.graph_ref)
        .ok_or_else(|| Error::Document(format!("bad graph_ref `{}`", doc.graph_ref)))?;
    if declared != g.graph_ref() {
        return Err(Error::GraphMismatch {
            left: doc.graph_ref,
            right: g.graph_ref().to_hex(),
        });
    }
    let mut b = PmrBuilder::new(g.graph_ref());
    let mut ids: HashMap<String, RepNode> = HashMap::new();
    for n in &doc.nodes {
        let gamma = g.node(&n.gamma).ok_or_else(|| Error::Unknown {
            kind: "node",
            name: n.gamma.clone(),
        })?;
        let v = b.add_node(gamma);
        if ids.insert(n.id.clone(), v).is_some() {
            return Err(Error::Document(format!("duplicate node id `{}`", n.id)));
        }
    }
    let lookup = |id: &str| {
        ids.get(id)
            .copied()
            .ok_or_else(|| Error::Document(format!("undeclared node id `{id}`")))
    };
    let mut edge_ids = std::collections::HashSet::new();
    for e in &doc.edges {
        if !edge_ids.insert(e.id.as_str()) {
            return Err(Error::Document(format!("duplicate edge id `{}`", e.id)));
        }
        let gamma = g.edge(&e.gamma).ok_or_else(|| Error::Unknown {
            kind: "edge",
            name: e.gamma.clone(),
        })?;
        b.add_edge(lookup(&e.src)?, lookup(&e.tgt)?, gamma);
    }
    for s in &doc.sources {
        b.set_source(lookup(s)?);
    }
    for t in &doc.targets {
        b.set_target(lookup(t)?);
    }
    let r = b.build();
    r.validate(g)?;
    Ok(r)
}

/// Reads a PMR document and checks it against `g`.
pub fn from_json(text: &str, g: &GraphDb) -> Result<Pmr> {
    let doc: PmrDoc = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    from_doc(doc, g)
}
