use std::borrow::Cow;
use std::collections::{HashMap, VecDeque};

use super::{trim, Pmr, RepNode};
use crate::graph::NodeId;

const UNSEEN: u32 = u32::MAX;

/// Keeps, for every pair of endpoints, only the paths of minimum length
/// between them.
///
/// Works one source node of the graph at a time: a breadth-first search
/// from all sources mapped to that node, the minimum distance per target
/// node of the graph, then a backward sweep over edges that advance the
/// distance by one. Parts are unioned in source order. When the PMR has
/// fewer distinct target nodes than source nodes the same is done on the
/// reversed PMR. The result is trim and acyclic.
pub fn shortest_filter(r: &Pmr) -> Pmr {
    let r: Cow<Pmr> = if r.is_trim() {
        Cow::Borrowed(r)
    } else {
        Cow::Owned(trim(r))
    };
    if r.target_gammas().len() < r.source_gammas().len() {
        shortest_per_source(&r.reversed()).reversed()
    } else {
        shortest_per_source(&r)
    }
}

fn shortest_per_source(r: &Pmr) -> Pmr {
    let mut dist = vec![UNSEEN; r.node_count()];
    let mut parts = Vec::new();
    for x in r.source_gammas() {
        dist.iter_mut().for_each(|d| *d = UNSEEN);
        let starts: Vec<RepNode> = r
            .sources()
            .iter()
            .copied()
            .filter(|&s| r.gamma(s) == x)
            .collect();
        let mut touched = Vec::new();
        let mut queue = VecDeque::new();
        for &s in &starts {
            dist[s.index()] = 0;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            touched.push(v);
            for &e in r.out_edges(v) {
                let w = r.tgt(e);
                if dist[w.index()] == UNSEEN {
                    dist[w.index()] = dist[v.index()] + 1;
                    queue.push_back(w);
                }
            }
        }

        let mut best: HashMap<NodeId, u32> = HashMap::new();
        for &t in touched.iter().filter(|&&t| r.is_target(t)) {
            let d = best.entry(r.gamma(t)).or_insert(UNSEEN);
            *d = (*d).min(dist[t.index()]);
        }
        let is_end = |t: RepNode| {
            r.is_target(t) && dist[t.index()] != UNSEEN && best[&r.gamma(t)] == dist[t.index()]
        };

        let mut keep_node = vec![false; r.node_count()];
        let mut keep_edge = vec![false; r.edge_count()];
        let mut stack: Vec<RepNode> = touched.iter().copied().filter(|&t| is_end(t)).collect();
        for t in &stack {
            keep_node[t.index()] = true;
        }
        while let Some(v) = stack.pop() {
            for &e in r.in_edges(v) {
                let u = r.src(e);
                if dist[u.index()] != UNSEEN && dist[u.index()] + 1 == dist[v.index()] {
                    keep_edge[e.index()] = true;
                    if !keep_node[u.index()] {
                        keep_node[u.index()] = true;
                        stack.push(u);
                    }
                }
            }
        }
        parts.push(r.restrict(
            &keep_node,
            &keep_edge,
            |v| dist[v.index()] == 0,
            is_end,
        ));
    }
    Pmr::union_all(r.graph_ref(), &parts)
}
