use crate::automata::{Automaton, AutomatonBuilder, StateId};
use crate::error::{Error, Result};
use crate::graph::{GraphDb, NodeId};
use crate::pmr::{Pmr, PmrBuilder, RepNode};

/// Reads a PMR as an NFA over edge ids: one state per rep-node, named
/// `<graph node>#<index>`, a transition per rep-edge labeled with the id of
/// its image, initial states S and final states T. Parallel rep-edges with
/// the same image become one transition, so only the path set survives
/// when they occur.
pub fn pmr_to_nfa(r: &Pmr, g: &GraphDb) -> Automaton {
    let mut b = AutomatonBuilder::new();
    for v in r.nodes() {
        let q = b.add_state(&format!("{}#{}", g.node_name(r.gamma(v)), v.0));
        if r.is_source(v) {
            b.set_initial(q);
        }
        if r.is_target(v) {
            b.set_final(q);
        }
    }
    for e in r.edges() {
        b.add_transition(
            StateId(r.src(e).0),
            g.edge_name(r.edge_gamma(e)),
            StateId(r.tgt(e).0),
        );
    }
    b.build()
}

/// Inverse of [`pmr_to_nfa`]. Each state's graph node is read off its
/// transitions, or from its name (the part before the last `#`) when it
/// has none.
pub fn nfa_to_pmr(a: &Automaton, g: &GraphDb) -> Result<Pmr> {
    let mut gamma: Vec<Option<NodeId>> = vec![None; a.num_states()];
    let mut assign = |q: StateId, n: NodeId| -> Result<()> {
        match gamma[q.index()] {
            None => {
                gamma[q.index()] = Some(n);
                Ok(())
            }
            Some(m) if m == n => Ok(()),
            Some(m) => Err(Error::Incidence(format!(
                "state {} would map to both {} and {}",
                a.state_name(q),
                g.node_name(m),
                g.node_name(n)
            ))),
        }
    };
    for (p, sym, q) in a.transition_triples() {
        let name = a.symbol_name(sym);
        let e = g.edge(name).ok_or_else(|| Error::Unknown {
            kind: "edge",
            name: name.to_owned(),
        })?;
        assign(p, g.src(e))?;
        assign(q, g.tgt(e))?;
    }
    let mut b = PmrBuilder::new(g.graph_ref());
    for q in a.states() {
        let n = match gamma[q.index()] {
            Some(n) => n,
            None => {
                let name = a.state_name(q);
                let prefix = name.rsplit_once('#').map_or(name, |(p, _)| p);
                g.node(prefix).ok_or_else(|| {
                    Error::Incidence(format!("cannot tell which graph node state {name} maps to"))
                })?
            }
        };
        let v = b.add_node(n);
        if a.is_initial(q) {
            b.set_source(v);
        }
        if a.is_final(q) {
            b.set_target(v);
        }
    }
    for (p, sym, q) in a.transition_triples() {
        let e = g.edge(a.symbol_name(sym)).expect("checked above");
        b.add_edge(RepNode(p.0), RepNode(q.0), e);
    }
    let r = b.build();
    debug_assert!(r.validate(g).is_ok());
    Ok(r)
}

/// NFA whose words spell out represented paths exactly: a fresh initial
/// state reads a start-node symbol `n<id>` into each source, then edges
/// read `e<id>`. Unlike the plain edge-id NFA, two length-0 paths at
/// different nodes give different words. Without parallel rep-edges of
/// equal image, the accepting runs on a word are in bijection with the
/// rep-paths mapping to that path.
pub(crate) fn rooted_nfa(r: &Pmr) -> Automaton {
    let mut b = AutomatonBuilder::new();
    for v in r.nodes() {
        let q = b.add_state(&v.0.to_string());
        if r.is_target(v) {
            b.set_final(q);
        }
    }
    let root = b.add_state("root");
    b.set_initial(root);
    for &s in r.sources() {
        b.add_transition(root, &format!("n{}", r.gamma(s).0), StateId(s.0));
    }
    for e in r.edges() {
        b.add_transition(
            StateId(r.src(e).0),
            &format!("e{}", r.edge_gamma(e).0),
            StateId(r.tgt(e).0),
        );
    }
    b.build_as_nfa()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{duplicated_path_pmr, transfer_example_graph};
    use num_bigint::BigUint;

    #[test]
    fn duplicated_path_has_two_runs() {
        let g = transfer_example_graph();
        let a = pmr_to_nfa(&duplicated_path_pmr(&g), &g);
        assert_eq!(a.count_runs(&["t7", "t8"]), BigUint::from(2u32));
        assert_eq!(a.count_runs(&["t7"]), BigUint::from(0u32));
    }

    #[test]
    fn round_trip() {
        let g = transfer_example_graph();
        let r = duplicated_path_pmr(&g);
        let back = nfa_to_pmr(&pmr_to_nfa(&r, &g), &g).unwrap();
        assert!(back.same_structure(&r));
        let empty = Pmr::empty(g.graph_ref());
        assert!(nfa_to_pmr(&pmr_to_nfa(&empty, &g), &g)
            .unwrap()
            .same_structure(&empty));
    }

    #[test]
    fn inconsistent_incidence() {
        let g = transfer_example_graph();
        // t7 ends in a5, t2 starts in a3.
        let a = Automaton::parse(
            "state p initial\nstate q\nstate r final\ntrans p t7 q\ntrans q t2 r\n",
        )
        .unwrap();
        assert!(matches!(nfa_to_pmr(&a, &g), Err(Error::Incidence(_))));
    }
}
