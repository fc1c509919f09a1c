//! Exhaustive reference implementations for tests. Exponential; only for
//! small inputs.

use std::collections::BTreeMap;

use crate::automata::{Automaton, StateId};
use crate::graph::{EdgeId, GraphDb, NodeId, NodePredicate, Path};
use crate::pmr::{Pmr, RepEdge, RepNode};

/// A finite path multiset.
pub type PathMultiset = BTreeMap<Path, u64>;

pub fn multiset_size(m: &PathMultiset) -> u64 {
    m.values().sum()
}

/// Every path of length at most `max_len` from a node in `u` to a node in
/// `v` whose label word `a` accepts, each with multiplicity 1.
pub fn brute_force_paths(
    g: &GraphDb,
    max_len: usize,
    u: &NodePredicate,
    v: &NodePredicate,
    a: &Automaton,
) -> PathMultiset {
    let mut out = PathMultiset::new();
    let init: Vec<bool> = a.states().map(|q| a.is_initial(q)).collect();
    for start in g.nodes().filter(|&n| u.contains(n)) {
        let mut edges = Vec::new();
        extend(
            g,
            a,
            v,
            max_len,
            start,
            start,
            init.clone(),
            &mut edges,
            &mut out,
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &GraphDb,
    a: &Automaton,
    v: &NodePredicate,
    max_len: usize,
    start: NodeId,
    at: NodeId,
    states: Vec<bool>,
    edges: &mut Vec<EdgeId>,
    out: &mut PathMultiset,
) {
    if v.contains(at) && a.finals().any(|q| states[q.index()]) {
        let p = Path::from_edges(g, start, edges).expect("walk follows edges");
        out.insert(p, 1);
    }
    if edges.len() == max_len {
        return;
    }
    for &e in g.out_edges(at) {
        let Some(sym) = a.symbol(g.label_name(g.label(e))) else {
            continue;
        };
        let mut next = vec![false; a.num_states()];
        for q in a.states().filter(|q| states[q.index()]) {
            for t in a.successors(q, sym) {
                next[t.index()] = true;
            }
        }
        if !next.iter().any(|&b| b) {
            continue;
        }
        edges.push(e);
        extend(g, a, v, max_len, start, g.tgt(e), next, edges, out);
        edges.pop();
    }
}

/// The represented paths of length at most `max_len`, with multiplicity,
/// by walking every rep-path.
pub fn pmr_paths_bounded(r: &Pmr, max_len: usize) -> PathMultiset {
    fn walk(
        r: &Pmr,
        max_len: usize,
        s: RepNode,
        at: RepNode,
        edges: &mut Vec<RepEdge>,
        out: &mut PathMultiset,
    ) {
        if r.is_target(at) {
            *out.entry(r.image(s, edges)).or_insert(0) += 1;
        }
        if edges.len() == max_len {
            return;
        }
        for &e in r.out_edges(at) {
            edges.push(e);
            walk(r, max_len, s, r.tgt(e), edges, out);
            edges.pop();
        }
    }
    let mut out = PathMultiset::new();
    for &s in r.sources() {
        walk(r, max_len, s, s, &mut Vec::new(), &mut out);
    }
    out
}

/// Number of accepting runs of `a` on `word`, by explicit run enumeration.
pub fn count_runs_naive(a: &Automaton, word: &[&str]) -> u64 {
    fn go(a: &Automaton, q: StateId, word: &[&str]) -> u64 {
        match word.split_first() {
            None => a.is_final(q) as u64,
            Some((w, rest)) => match a.symbol(w) {
                None => 0,
                Some(sym) => a.successors(q, sym).map(|t| go(a, t, rest)).sum(),
            },
        }
    }
    a.initial().iter().map(|&q| go(a, q, word)).sum()
}

/// All words over `alphabet` of length at most `max_len`, shortest first.
pub fn all_words<'a>(alphabet: &[&'a str], max_len: usize) -> Vec<Vec<&'a str>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &a in alphabet {
                let mut x: Vec<&str> = w.clone();
                x.push(a);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::DEFAULT_STATE_CAP;
    use crate::fixtures::{ladder_graph, transfer_example_graph};

    #[test]
    fn ladder_has_eight_paths_for_three_rungs() {
        let g = ladder_graph(3);
        let a = Automaton::parse_regex("a*", DEFAULT_STATE_CAP).unwrap();
        let m = brute_force_paths(
            &g,
            6,
            &NodePredicate::single(g.node("x").unwrap()),
            &NodePredicate::single(g.node("y").unwrap()),
            &a,
        );
        assert_eq!(m.len(), 8);
    }

    #[test]
    fn empty_language_gives_nothing() {
        let g = transfer_example_graph();
        let a = Automaton::parse("state q initial\n").unwrap();
        assert!(brute_force_paths(&g, 4, &NodePredicate::All, &NodePredicate::All, &a).is_empty());
    }

    #[test]
    fn length_zero_universal() {
        let g = transfer_example_graph();
        let a = Automaton::parse_regex("eps", DEFAULT_STATE_CAP).unwrap();
        let u = NodePredicate::of(["a1", "a2", "a3"].map(|s| g.node(s).unwrap()));
        let v = NodePredicate::of(["a2", "a3", "a4"].map(|s| g.node(s).unwrap()));
        let m = brute_force_paths(&g, 0, &u, &v, &a);
        assert_eq!(m.len(), 2);
        assert!(m.keys().all(|p| p.is_empty()));
    }
}
