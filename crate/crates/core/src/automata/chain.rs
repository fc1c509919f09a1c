use super::{Automaton, AutomatonBuilder, StateId, Symbol};

/// Concatenation of several automata with per-state segment bookkeeping.
#[derive(Debug, Clone)]
pub struct ChainAutomaton {
    pub automaton: Automaton,
    /// Index of the atom each state came from.
    pub atom_of: Vec<usize>,
    /// The single entry state of each atom.
    pub entries: Vec<StateId>,
}

impl ChainAutomaton {
    pub fn atoms(&self) -> usize {
        self.entries.len()
    }
}

struct Normalized {
    // Local transitions and finality after giving the atom a single entry.
    trans: Vec<Vec<(String, usize)>>,
    is_final: Vec<bool>,
    names: Vec<String>,
    entry: usize,
}

fn normalize(a: &Automaton) -> Normalized {
    let a = a.trim();
    let mut trans: Vec<Vec<(String, usize)>> = a
        .states()
        .map(|q| {
            a.transitions(q)
                .iter()
                .map(|&(s, t)| (a.symbol_name(s).to_owned(), t.index()))
                .collect()
        })
        .collect();
    let mut is_final: Vec<bool> = a.states().map(|q| a.is_final(q)).collect();
    let mut names: Vec<String> = a.states().map(|q| a.state_name(q).to_owned()).collect();
    let entry = if a.initial().len() == 1 {
        a.initial()[0].index()
    } else {
        // A fresh entry that starts every run any initial state could start.
        // Run counts are preserved: each run from the fresh state is a run
        // from exactly one original initial state.
        let merged: Vec<(String, usize)> = a
            .initial()
            .iter()
            .flat_map(|q| trans[q.index()].clone())
            .collect();
        trans.push(merged);
        is_final.push(a.initial().iter().any(|&q| a.is_final(q)));
        names.push("entry".to_owned());
        trans.len() - 1
    };
    Normalized {
        trans,
        is_final,
        names,
        entry,
    }
}

/// Automaton for `L(A₁)⋯L(A_k)`.
///
/// Each atom gets a single entry state. The ε-bridges from an atom's final
/// states to the next entry are eliminated by copying the entry's
/// transitions onto the bridging state; when an atom accepts ε the bridge
/// continues to the entry after it. The initial set is the first entry
/// alone, and a state is final iff its bridge chain reaches the end.
///
/// Every accepting run of the result corresponds to exactly one way of
/// splitting its word into `w₁⋯w_k` together with one accepting run of each
/// `A_i` on `w_i`. For unambiguous atoms the number of accepting runs on a
/// word is therefore the number of its splits.
///
/// A transition from a state of atom `i` into a state of atom `j > i`
/// crosses the segment boundaries `i, …, j−1` at its source.
pub fn concat_chain(atoms: &[Automaton]) -> ChainAutomaton {
    let norm: Vec<Normalized> = atoms.iter().map(normalize).collect();
    let k = norm.len();
    let mut offset = Vec::with_capacity(k + 1);
    offset.push(0usize);
    for n in &norm {
        offset.push(offset.last().unwrap() + n.trans.len());
    }

    let mut b = AutomatonBuilder::new();
    let mut atom_of = Vec::new();
    for (i, n) in norm.iter().enumerate() {
        for name in &n.names {
            b.add_state(&format!("{}:{}", i + 1, name));
            atom_of.push(i);
        }
    }
    let entries: Vec<StateId> = norm
        .iter()
        .enumerate()
        .map(|(i, n)| StateId((offset[i] + n.entry) as u32))
        .collect();
    if k == 0 {
        // The empty concatenation accepts exactly ε.
        let q = b.add_state("0");
        b.set_initial(q);
        b.set_final(q);
        return ChainAutomaton {
            automaton: b.build(),
            atom_of: vec![0],
            entries: vec![],
        };
    }
    b.set_initial(entries[0]);

    let mut edges: Vec<(StateId, Symbol, StateId)> = Vec::new();
    for (i, n) in norm.iter().enumerate() {
        for local in 0..n.trans.len() {
            let s = StateId((offset[i] + local) as u32);
            for (label, t) in &n.trans[local] {
                let sym = b.symbol(label);
                edges.push((s, sym, StateId((offset[i] + t) as u32)));
            }
            if !n.is_final[local] {
                continue;
            }
            // Follow the ε-bridge chain.
            let mut j = i + 1;
            while j < k {
                let m = &norm[j];
                for (label, t) in &m.trans[m.entry] {
                    let sym = b.symbol(label);
                    edges.push((s, sym, StateId((offset[j] + t) as u32)));
                }
                if !m.is_final[m.entry] {
                    break;
                }
                j += 1;
            }
            if j == k {
                b.set_final(s);
            }
        }
    }
    for (p, a, q) in edges {
        b.add_transition_sym(p, a, q);
    }
    ChainAutomaton {
        automaton: b.build(),
        atom_of,
        entries,
    }
}
