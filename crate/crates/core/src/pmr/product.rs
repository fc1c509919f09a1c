use std::collections::HashMap;

use super::{NodePredicate, Pmr, PmrBuilder, RepNode};
use crate::automata::{Automaton, StateId, Symbol};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphDb, NodeId};

fn label_symbols(g: &GraphDb, a: &Automaton) -> Vec<Option<Symbol>> {
    (0..g.label_count() as u32)
        .map(|l| a.symbol(g.label_name(crate::graph::LabelId(l))))
        .collect()
}

/// The full product `G × A`: one node per (graph node, state) pair, one
/// edge per graph edge and matching transition, sources `N × I`, targets
/// `N × F`. Not trimmed.
///
/// Multiplicities are only meaningful for unambiguous automata, so an
/// automaton that is not a verified DFA or UFA is rejected.
pub fn product(g: &GraphDb, a: &Automaton) -> Result<Pmr> {
    if !a.kind().is_unambiguous() {
        return Err(Error::Ambiguous);
    }
    Ok(product_unchecked(g, a))
}

/// [`product`] without the unambiguity requirement. With an ambiguous
/// automaton a path may be represented several times; its set of paths is
/// still right.
pub fn product_unchecked(g: &GraphDb, a: &Automaton) -> Pmr {
    let q = a.num_states();
    let syms = label_symbols(g, a);
    let mut b = PmrBuilder::with_capacity(g.graph_ref(), g.node_count() * q, g.edge_count());
    for v in g.nodes() {
        for s in a.states() {
            let x = b.add_node(v);
            if a.is_initial(s) {
                b.set_source(x);
            }
            if a.is_final(s) {
                b.set_target(x);
            }
        }
    }
    let id = |v: NodeId, s: StateId| RepNode((v.index() * q + s.index()) as u32);
    for e in g.edges() {
        let Some(sym) = syms[g.label(e).index()] else {
            continue;
        };
        for s in a.states() {
            for t in a.successors(s, sym) {
                b.add_edge(id(g.src(e), s), id(g.tgt(e), t), e);
            }
        }
    }
    let r = b.build();
    debug_assert!(r.validate(g).is_ok());
    r
}

/// `select(trim(G × A), U, V)` in one pass: only the part of the product
/// reachable from `U × I` is ever built, then it is pruned backwards from
/// `V × F`.
///
/// With `allow_ambiguous` the unambiguity check is skipped (set semantics).
pub fn product_select_trim(
    g: &GraphDb,
    a: &Automaton,
    u: &NodePredicate,
    v: &NodePredicate,
    allow_ambiguous: bool,
) -> Result<Pmr> {
    if !allow_ambiguous && !a.kind().is_unambiguous() {
        return Err(Error::Ambiguous);
    }
    Ok(select_trim_with_states(g, a, u, v).0)
}

/// [`product_select_trim`] without the unambiguity check, also returning
/// the automaton state of every rep-node.
pub(crate) fn select_trim_with_states(
    g: &GraphDb,
    a: &Automaton,
    u: &NodePredicate,
    v: &NodePredicate,
) -> (Pmr, Vec<StateId>) {
    let syms = label_symbols(g, a);
    let mut index: HashMap<(NodeId, StateId), u32> = HashMap::new();
    let mut nodes: Vec<(NodeId, StateId)> = Vec::new();
    let mut edges: Vec<(u32, u32, EdgeId)> = Vec::new();

    let starts: Vec<NodeId> = match u {
        NodePredicate::All => g.nodes().collect(),
        NodePredicate::Finite(set) => {
            let mut s: Vec<NodeId> = set
                .iter()
                .copied()
                .filter(|n| n.index() < g.node_count())
                .collect();
            s.sort_unstable();
            s
        }
    };
    let mut is_start = Vec::new();
    for &n in &starts {
        for &s in a.initial() {
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry((n, s)) {
                slot.insert(nodes.len() as u32);
                nodes.push((n, s));
                is_start.push(true);
            }
        }
    }
    let mut head = 0;
    while head < nodes.len() {
        let (n, s) = nodes[head];
        for &e in g.out_edges(n) {
            let Some(sym) = syms[g.label(e).index()] else {
                continue;
            };
            for t in a.successors(s, sym) {
                let key = (g.tgt(e), t);
                let id = match index.get(&key) {
                    Some(&i) => i,
                    None => {
                        let i = nodes.len() as u32;
                        index.insert(key, i);
                        nodes.push(key);
                        is_start.push(false);
                        i
                    }
                };
                edges.push((head as u32, id, e));
            }
        }
        head += 1;
    }

    let is_end: Vec<bool> = nodes
        .iter()
        .map(|&(n, s)| a.is_final(s) && v.contains(n))
        .collect();
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); nodes.len()];
    for &(s, t, _) in &edges {
        preds[t as usize].push(s);
    }
    let mut alive = is_end.clone();
    let mut stack: Vec<u32> = (0..nodes.len() as u32)
        .filter(|&i| is_end[i as usize])
        .collect();
    while let Some(i) = stack.pop() {
        for &p in &preds[i as usize] {
            if !alive[p as usize] {
                alive[p as usize] = true;
                stack.push(p);
            }
        }
    }

    let mut b = PmrBuilder::new(g.graph_ref());
    let mut map = vec![u32::MAX; nodes.len()];
    let mut states = Vec::new();
    for (i, &(n, q)) in nodes.iter().enumerate() {
        if alive[i] {
            let x = b.add_node(n);
            states.push(q);
            map[i] = x.0;
            if is_start[i] {
                b.set_source(x);
            }
            if is_end[i] {
                b.set_target(x);
            }
        }
    }
    for &(s, t, e) in &edges {
        if alive[t as usize] {
            b.add_edge(RepNode(map[s as usize]), RepNode(map[t as usize]), e);
        }
    }
    let r = b.build();
    debug_assert!(r.validate(g).is_ok());
    debug_assert!(r.is_trim());
    (r, states)
}
