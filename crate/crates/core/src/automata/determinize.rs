use std::collections::{HashMap, VecDeque};

use super::{Automaton, AutomatonBuilder, StateId, Symbol};
use crate::error::{Error, Result};

pub const DEFAULT_STATE_CAP: usize = 1 << 16;

/// Subset construction. Only non-empty subsets reachable from the initial
/// set are created, so the result has no sink state. Fails once more than
/// `cap` subsets would be needed.
pub fn determinize(a: &Automaton, cap: usize) -> Result<Automaton> {
    let mut b = AutomatonBuilder::new();
    for name in a.alphabet() {
        b.symbol(name);
    }
    let mut start: Vec<StateId> = a.initial().to_vec();
    start.sort_unstable();
    start.dedup();
    if start.is_empty() {
        return Ok(b.build());
    }

    let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
    let mut subsets: Vec<Vec<StateId>> = Vec::new();
    let mut queue = VecDeque::new();

    let mut intern = |set: Vec<StateId>,
                      b: &mut AutomatonBuilder,
                      subsets: &mut Vec<Vec<StateId>>,
                      queue: &mut VecDeque<StateId>|
     -> Result<StateId> {
        if let Some(&q) = index.get(&set) {
            return Ok(q);
        }
        if subsets.len() >= cap {
            return Err(Error::StateCap { cap });
        }
        let q = b.add_state(&(subsets.len() + 1).to_string());
        if set.iter().any(|&s| a.is_final(s)) {
            b.set_final(q);
        }
        index.insert(set.clone(), q);
        subsets.push(set);
        queue.push_back(q);
        Ok(q)
    };

    let init = intern(start, &mut b, &mut subsets, &mut queue)?;
    b.set_initial(init);
    while let Some(q) = queue.pop_front() {
        let mut by_symbol: Vec<(Symbol, StateId)> = subsets[q.index()]
            .iter()
            .flat_map(|&s| a.transitions(s).iter().copied())
            .collect();
        by_symbol.sort_unstable();
        by_symbol.dedup();
        let mut i = 0;
        while i < by_symbol.len() {
            let sym = by_symbol[i].0;
            let mut j = i;
            let mut target = Vec::new();
            while j < by_symbol.len() && by_symbol[j].0 == sym {
                target.push(by_symbol[j].1);
                j += 1;
            }
            let t = intern(target, &mut b, &mut subsets, &mut queue)?;
            b.add_transition_sym(q, sym, t);
            i = j;
        }
    }
    Ok(b.build())
}

/// Minimizes a DFA: drops useless states, merges equivalent ones by
/// partition refinement, and renames states `1, 2, …` in breadth-first
/// order from the initial state.
///
/// Panics if `a` is not deterministic.
pub fn minimize_dfa(a: &Automaton) -> Automaton {
    assert!(
        a.initial().len() <= 1 && a.is_deterministic(),
        "minimize_dfa needs a deterministic automaton"
    );
    let a = a.trim();
    let n = a.num_states();
    let mut b = AutomatonBuilder::new();
    for name in a.alphabet() {
        b.symbol(name);
    }
    if n == 0 {
        return b.build();
    }

    // Moore refinement. Missing transitions go to an implicit dead block.
    let mut block: Vec<usize> = a.states().map(|q| a.is_final(q) as usize).collect();
    loop {
        let mut sigs: HashMap<(usize, Vec<(Symbol, usize)>), usize> = HashMap::new();
        let next: Vec<usize> = a
            .states()
            .map(|q| {
                let sig: Vec<(Symbol, usize)> = a
                    .transitions(q)
                    .iter()
                    .map(|&(s, t)| (s, block[t.index()]))
                    .collect();
                let len = sigs.len();
                *sigs.entry((block[q.index()], sig)).or_insert(len)
            })
            .collect();
        // New blocks refine old ones, so equal counts mean no split happened.
        let stable = sigs.len() == count_distinct(&block);
        block = next;
        if stable {
            break;
        }
    }

    // Breadth-first renumbering from the initial block.
    let mut rep: HashMap<usize, StateId> = HashMap::new();
    for q in a.states() {
        rep.entry(block[q.index()]).or_insert(q);
    }
    let init = a.initial()[0];
    let mut order: HashMap<usize, StateId> = HashMap::new();
    let mut queue = VecDeque::new();
    let first = b.add_state("1");
    order.insert(block[init.index()], first);
    queue.push_back(block[init.index()]);
    b.set_initial(first);
    let mut edges = Vec::new();
    while let Some(blk) = queue.pop_front() {
        let q = rep[&blk];
        let nq = order[&blk];
        if a.is_final(q) {
            b.set_final(nq);
        }
        for &(s, t) in a.transitions(q) {
            let tb = block[t.index()];
            let nt = match order.get(&tb) {
                Some(&x) => x,
                None => {
                    let x = b.add_state(&(order.len() + 1).to_string());
                    order.insert(tb, x);
                    queue.push_back(tb);
                    x
                }
            };
            edges.push((nq, s, nt));
        }
    }
    for (p, s, q) in edges {
        b.add_transition_sym(p, s, q);
    }
    b.build()
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}
