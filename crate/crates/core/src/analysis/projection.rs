use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::GraphDb;
use crate::pmr::Pmr;

/// The subgraph of `g` formed by the images of all nodes and edges of `r`.
///
/// On a trim PMR this is exactly the set of nodes and edges used by some
/// represented path. It can admit paths that `r` does not represent.
pub fn graph_projection(r: &Pmr, g: &GraphDb) -> Result<GraphDb> {
    if r.graph_ref() != g.graph_ref() {
        return Err(Error::GraphMismatch {
            left: r.graph_ref().to_hex(),
            right: g.graph_ref().to_hex(),
        });
    }
    let nodes: HashSet<_> = r.nodes().map(|v| r.gamma(v)).collect();
    let edges: HashSet<_> = r.edges().map(|e| r.edge_gamma(e)).collect();
    Ok(g.subgraph(&nodes, &edges))
}
