//! Small graphs, automata and PMRs used by the tests, the CLI examples and
//! the browser demo.

use crate::automata::Automaton;
use crate::graph::{GraphBuilder, GraphDb};
use crate::pmr::{Pmr, PmrBuilder};

/// A bank-transfer graph with six accounts (`a1`…`a6`), eight `Transfer`
/// edges (`t1`…`t8`) and some location and phone edges.
///
/// Transfers: a1→a3, a3→a2, a2→a4, a4→a6, a6→a3, a6→a5, a3→a5, a5→a1.
pub fn transfer_example_graph() -> GraphDb {
    GraphDb::parse(TRANSFER_EXAMPLE).expect("fixture parses")
}

pub const TRANSFER_EXAMPLE: &str = "\
# accounts a1..a6: Scott, Aretha, Mike, Jay, Billie, Dave
edge t1 a1 a3 Transfer
edge t2 a3 a2 Transfer
edge t3 a2 a4 Transfer
edge t4 a4 a6 Transfer
edge t5 a6 a3 Transfer
edge t6 a6 a5 Transfer
edge t7 a3 a5 Transfer
edge t8 a5 a1 Transfer
edge li1 a1 c1 isLocatedIn
edge li2 a2 c2 isLocatedIn
edge li3 a3 c1 isLocatedIn
edge li4 a4 c2 isLocatedIn
edge li5 a5 c1 isLocatedIn
edge li6 a6 c2 isLocatedIn
edge hp1 a1 p1 hasPhone
edge hp2 a2 p2 hasPhone
edge hp3 a3 p3 hasPhone
edge hp4 a4 p4 hasPhone
edge hp5 a5 ip1 signInWithIP
edge hp6 a6 ip2 signInWithIP
";

/// Deterministic automaton for `Transfer·Transfer`: states 1→2→3.
pub fn transfer_transfer_dfa() -> Automaton {
    Automaton::parse(
        "state 1 initial\nstate 2\nstate 3 final\ntrans 1 Transfer 2\ntrans 2 Transfer 3\n",
    )
    .expect("fixture parses")
}

/// Ambiguous automaton for `Transfer·Transfer`: two middle states, so
/// every matching word has two accepting runs.
pub fn transfer_transfer_ambiguous() -> Automaton {
    Automaton::parse(
        "state 1 initial\nstate 2\nstate 2' \nstate 3 final\n\
         trans 1 Transfer 2\ntrans 2 Transfer 3\ntrans 1 Transfer 2'\ntrans 2' Transfer 3\n",
    )
    .expect("fixture parses")
}

fn chain_pmr(g: &GraphDb, start: &str, steps: &[(&str, &str)]) -> PmrBuilder {
    let mut b = PmrBuilder::new(g.graph_ref());
    let first = b.add_node(g.node(start).expect("fixture node"));
    let mut prev = first;
    for (edge, node) in steps {
        let v = b.add_node(g.node(node).expect("fixture node"));
        b.add_edge(prev, v, g.edge(edge).expect("fixture edge"));
        prev = v;
    }
    b
}

/// Six nodes in a cycle mapped to a3, a5, a1, a3, a5, a1 with the first one
/// as the only source and target: all cycles of even length at a3 through
/// a5 and a1. `g` must be [`transfer_example_graph`].
pub fn even_cycle_pmr(g: &GraphDb) -> Pmr {
    let mut b = chain_pmr(
        g,
        "a3",
        &[
            ("t7", "a5"),
            ("t8", "a1"),
            ("t1", "a3"),
            ("t7", "a5"),
            ("t8", "a1"),
        ],
    );
    let r1 = crate::pmr::RepNode(0);
    let last = crate::pmr::RepNode(5);
    b.add_edge(last, r1, g.edge("t1").expect("fixture edge"));
    b.set_source(r1);
    b.set_target(r1);
    b.build()
}

/// A diamond from a3 to a1 whose two branches both map to a3 t7 a5 t8 a1,
/// so that one path is represented twice. `g` must be
/// [`transfer_example_graph`].
pub fn duplicated_path_pmr(g: &GraphDb) -> Pmr {
    let n = |s| g.node(s).expect("fixture node");
    let e = |s| g.edge(s).expect("fixture edge");
    let mut b = PmrBuilder::new(g.graph_ref());
    let r1 = b.add_node(n("a3"));
    let up = b.add_node(n("a5"));
    let down = b.add_node(n("a5"));
    let r2 = b.add_node(n("a1"));
    b.add_edge(r1, up, e("t7"));
    b.add_edge(r1, down, e("t7"));
    b.add_edge(up, r2, e("t8"));
    b.add_edge(down, r2, e("t8"));
    b.set_source(r1);
    b.set_target(r2);
    b.build()
}

/// A graph and PMR representing five paths a-b-c, a-e-c, a-e-f, d-e-c,
/// d-e-f with sources {a, d} and targets {c, f}.
pub fn five_path_example() -> (GraphDb, Pmr) {
    let g = GraphDb::parse(
        "edge ab a b x\nedge bc b c x\nedge ae a e x\nedge ec e c x\nedge de d e x\nedge ef e f x\n",
    )
    .expect("fixture parses");
    let mut b = PmrBuilder::new(g.graph_ref());
    let ids: Vec<_> = g.nodes().map(|v| b.add_node(v)).collect();
    for e in g.edges() {
        b.add_edge(ids[g.src(e).index()], ids[g.tgt(e).index()], e);
    }
    for s in ["a", "d"] {
        b.set_source(ids[g.node(s).unwrap().index()]);
    }
    for t in ["c", "f"] {
        b.set_target(ids[g.node(t).unwrap().index()]);
    }
    (g.clone(), b.build())
}

/// `n` diamonds in a row from `x` to `y`, every edge labeled `a`. It has
/// `3n + 1` nodes, `4n` edges and `2ⁿ` paths from `x` to `y`, all of
/// length `2n`.
pub fn ladder_graph(n: usize) -> GraphDb {
    assert!(n >= 1, "a ladder needs at least one rung");
    let mut b = GraphBuilder::new();
    let mut prev = "x".to_owned();
    for i in 1..=n {
        let next = if i == n {
            "y".to_owned()
        } else {
            format!("m{i}")
        };
        let (u, v) = (format!("u{i}"), format!("v{i}"));
        b.add_edge(&format!("a{i}"), &prev, &u, "a").unwrap();
        b.add_edge(&format!("b{i}"), &u, &next, "a").unwrap();
        b.add_edge(&format!("c{i}"), &prev, &v, "a").unwrap();
        b.add_edge(&format!("d{i}"), &v, &next, "a").unwrap();
        prev = next;
    }
    b.build()
}
