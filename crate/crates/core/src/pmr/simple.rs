use std::borrow::Cow;
use std::collections::HashSet;

use super::{trim, Pmr, RepEdge, RepNode};
use crate::error::{Error, Result};

pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathMode {
    /// No graph node repeats.
    Simple,
    /// No graph edge repeats.
    Trail,
}

/// Keeps the represented paths whose image is simple (or a trail).
///
/// Depth-first search over rep-paths, pruning as soon as the image repeats
/// a node (or edge). Each rep-path contributes one occurrence, so a graph
/// path represented twice stays represented twice. The result is the
/// canonical PMR of the surviving paths. Exponential in the worst case;
/// fails with [`Error::PathCap`] after `cap` paths.
pub fn simple_trail_filter(r: &Pmr, mode: PathMode, cap: usize) -> Result<Pmr> {
    let r: Cow<Pmr> = if r.is_trim() {
        Cow::Borrowed(r)
    } else {
        Cow::Owned(trim(r))
    };
    let mut kept = Vec::new();
    let mut edges: Vec<RepEdge> = Vec::new();
    for &s in r.sources() {
        let mut used_nodes = HashSet::from([r.gamma(s)]);
        let mut used_edges = HashSet::new();
        let mut stack: Vec<(RepNode, usize)> = vec![(s, 0)];
        if r.is_target(s) {
            push_path(&r, s, &edges, &mut kept, cap)?;
        }
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let out = r.out_edges(v);
            if *next == out.len() {
                stack.pop();
                if let Some(e) = edges.pop() {
                    used_nodes.remove(&r.gamma(r.tgt(e)));
                    used_edges.remove(&r.edge_gamma(e));
                }
                continue;
            }
            let e = out[*next];
            *next += 1;
            let w = r.tgt(e);
            let ok = match mode {
                PathMode::Simple => !used_nodes.contains(&r.gamma(w)),
                PathMode::Trail => !used_edges.contains(&r.edge_gamma(e)),
            };
            if !ok {
                continue;
            }
            used_nodes.insert(r.gamma(w));
            used_edges.insert(r.edge_gamma(e));
            edges.push(e);
            stack.push((w, 0));
            if r.is_target(w) {
                push_path(&r, s, &edges, &mut kept, cap)?;
            }
        }
    }
    Ok(Pmr::canonical(r.graph_ref(), &kept))
}

fn push_path(
    r: &Pmr,
    s: RepNode,
    edges: &[RepEdge],
    kept: &mut Vec<crate::graph::Path>,
    cap: usize,
) -> Result<()> {
    if kept.len() >= cap {
        return Err(Error::PathCap { cap });
    }
    kept.push(r.image(s, edges));
    Ok(())
}
