use std::cmp::Ordering;
use std::collections::HashMap;

use super::{shortest_filter, Pmr, RepEdge, RepNode};
use crate::graph::{GraphDb, NodeId};

// Radix order on label-rank words: shorter first, then lexicographic.
fn radix_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Keeps, for every pair of endpoints, only the shortest paths whose label
/// word is least in lexicographic order. Labels are ordered by their bytes.
///
/// Runs [`shortest_filter`] first, then on each per-source part (a DAG) a
/// topological pass computes the least word reaching every node together
/// with the incoming edges that realize it.
pub fn radix_shortest_filter(r: &Pmr, g: &GraphDb) -> Pmr {
    debug_assert_eq!(r.graph_ref(), g.graph_ref());
    let s = shortest_filter(r);
    let order = s
        .topological_order()
        .expect("shortest_filter output is acyclic");
    let rank = g.label_ranks();
    let edge_rank = |e: RepEdge| rank[g.label(s.edge_gamma(e)).index()];

    let mut parts = Vec::new();
    for x in s.source_gammas() {
        let is_start = |v: RepNode| s.is_source(v) && s.gamma(v) == x;
        let mut best: Vec<Option<Vec<u32>>> = vec![None; s.node_count()];
        let mut best_in: Vec<Vec<RepEdge>> = vec![Vec::new(); s.node_count()];
        for &v in &order {
            let mut cur: Option<Vec<u32>> = is_start(v).then(Vec::new);
            let mut via: Vec<RepEdge> = Vec::new();
            for &e in s.in_edges(v) {
                let Some(prefix) = &best[s.src(e).index()] else {
                    continue;
                };
                let mut cand = prefix.clone();
                cand.push(edge_rank(e));
                match cur.as_ref().map(|c| radix_cmp(&cand, c)) {
                    None | Some(Ordering::Less) => {
                        cur = Some(cand);
                        via.clear();
                        via.push(e);
                    }
                    Some(Ordering::Equal) => via.push(e),
                    Some(Ordering::Greater) => {}
                }
            }
            best[v.index()] = cur;
            best_in[v.index()] = via;
        }

        let mut least: HashMap<NodeId, &Vec<u32>> = HashMap::new();
        for &t in s.targets() {
            if let Some(w) = &best[t.index()] {
                least
                    .entry(s.gamma(t))
                    .and_modify(|cur| {
                        if radix_cmp(w, cur) == Ordering::Less {
                            *cur = w;
                        }
                    })
                    .or_insert(w);
            }
        }
        let is_end = |t: RepNode| {
            s.is_target(t)
                && best[t.index()]
                    .as_ref()
                    .is_some_and(|w| least.get(&s.gamma(t)).is_some_and(|m| *m == w))
        };

        let mut keep_node = vec![false; s.node_count()];
        let mut keep_edge = vec![false; s.edge_count()];
        let mut stack: Vec<RepNode> = s.targets().iter().copied().filter(|&t| is_end(t)).collect();
        for t in &stack {
            keep_node[t.index()] = true;
        }
        while let Some(v) = stack.pop() {
            for &e in &best_in[v.index()] {
                keep_edge[e.index()] = true;
                let u = s.src(e);
                if !keep_node[u.index()] {
                    keep_node[u.index()] = true;
                    stack.push(u);
                }
            }
        }
        let start_ok =
            |v: RepNode| is_start(v) && best[v.index()].as_ref().is_some_and(|w| w.is_empty());
        parts.push(s.restrict(&keep_node, &keep_edge, start_ok, is_end));
    }
    Pmr::union_all(s.graph_ref(), &parts)
}
