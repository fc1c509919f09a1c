//! ε-free finite automata over string symbols.
//!
//! The symbol alphabet is a list of strings: edge labels when the automaton
//! is a query, edge ids when it is the image of a PMR. Acceptance of the
//! empty word is expressed only through a state that is both initial and
//! final; there are no ε-transitions anywhere.

mod ambiguity;
mod chain;
mod determinize;
mod format;
mod glushkov;
pub mod regex;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use ambiguity::check_unambiguous;
pub use chain::{concat_chain, ChainAutomaton};
pub use determinize::{determinize, minimize_dfa, DEFAULT_STATE_CAP};
pub use glushkov::glushkov;
pub use regex::Regex;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

impl StateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// How much determinism an automaton has. Always computed, never declared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutomatonKind {
    Dfa,
    Ufa,
    Nfa,
}

impl AutomatonKind {
    /// DFAs and UFAs have at most one accepting run per word.
    pub fn is_unambiguous(self) -> bool {
        !matches!(self, AutomatonKind::Nfa)
    }
}

#[derive(Debug, Clone)]
pub struct Automaton {
    state_names: Vec<String>,
    symbols: Vec<String>,
    symbol_index: HashMap<String, u32>,
    // Sorted by (symbol, target), duplicates removed.
    trans: Vec<Vec<(Symbol, StateId)>>,
    initial: Vec<StateId>,
    is_initial: Vec<bool>,
    is_final: Vec<bool>,
    kind: AutomatonKind,
}

#[derive(Debug, Default, Clone)]
pub struct AutomatonBuilder {
    state_names: Vec<String>,
    state_index: HashMap<String, u32>,
    symbols: Vec<String>,
    symbol_index: HashMap<String, u32>,
    trans: Vec<Vec<(Symbol, StateId)>>,
    is_initial: Vec<bool>,
    is_final: Vec<bool>,
}

impl AutomatonBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the state with this name, creating it if needed.
    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(&i) = self.state_index.get(name) {
            return StateId(i);
        }
        self.add_state(name)
    }

    /// Adds a fresh state. Names are for display only and need not be unique.
    pub fn add_state(&mut self, name: &str) -> StateId {
        let id = self.state_names.len() as u32;
        self.state_names.push(name.to_owned());
        self.state_index.entry(name.to_owned()).or_insert(id);
        self.trans.push(Vec::new());
        self.is_initial.push(false);
        self.is_final.push(false);
        StateId(id)
    }

    pub fn symbol(&mut self, name: &str) -> Symbol {
        if let Some(&i) = self.symbol_index.get(name) {
            return Symbol(i);
        }
        let id = self.symbols.len() as u32;
        self.symbols.push(name.to_owned());
        self.symbol_index.insert(name.to_owned(), id);
        Symbol(id)
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.is_initial[q.index()] = true;
    }

    pub fn set_final(&mut self, q: StateId) {
        self.is_final[q.index()] = true;
    }

    pub fn add_transition(&mut self, from: StateId, label: &str, to: StateId) {
        let a = self.symbol(label);
        self.add_transition_sym(from, a, to);
    }

    pub fn add_transition_sym(&mut self, from: StateId, a: Symbol, to: StateId) {
        self.trans[from.index()].push((a, to));
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    /// Finishes the automaton and classifies it.
    pub fn build(self) -> Automaton {
        let mut a = self.build_as_nfa();
        a.kind = a.classify();
        a
    }

    /// Finishes the automaton without running the ambiguity check; the kind
    /// is reported as [`AutomatonKind::Nfa`], which is always sound.
    pub(crate) fn build_as_nfa(mut self) -> Automaton {
        for row in &mut self.trans {
            row.sort_unstable();
            row.dedup();
        }
        let initial = (0..self.state_names.len() as u32)
            .map(StateId)
            .filter(|q| self.is_initial[q.index()])
            .collect();
        Automaton {
            state_names: self.state_names,
            symbols: self.symbols,
            symbol_index: self.symbol_index,
            trans: self.trans,
            initial,
            is_initial: self.is_initial,
            is_final: self.is_final,
            kind: AutomatonKind::Nfa,
        }
    }
}

impl Automaton {
    pub fn builder() -> AutomatonBuilder {
        AutomatonBuilder::new()
    }

    /// Compiles a regular expression to a trimmed, minimal DFA.
    pub fn from_regex(r: &Regex, state_cap: usize) -> Result<Automaton> {
        let nfa = glushkov(r);
        let dfa = determinize(&nfa, state_cap)?;
        Ok(minimize_dfa(&dfa))
    }

    pub fn parse_regex(text: &str, state_cap: usize) -> Result<Automaton> {
        Self::from_regex(&Regex::parse(text)?, state_cap)
    }

    pub fn parse(text: &str) -> Result<Automaton> {
        format::parse(text)
    }

    pub fn to_text(&self) -> String {
        format::write(self)
    }

    fn classify(&self) -> AutomatonKind {
        if self.initial.len() <= 1 && self.is_deterministic() {
            AutomatonKind::Dfa
        } else if check_unambiguous(self) {
            AutomatonKind::Ufa
        } else {
            AutomatonKind::Nfa
        }
    }

    pub fn kind(&self) -> AutomatonKind {
        self.kind
    }

    pub fn is_deterministic(&self) -> bool {
        self.trans
            .iter()
            .all(|row| row.windows(2).all(|w| w[0].0 != w[1].0))
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(Vec::len).sum()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_names.len() as u32).map(StateId)
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.state_names[q.index()]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.state_names
            .iter()
            .position(|n| n == name)
            .map(|i| StateId(i as u32))
    }

    pub fn alphabet(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.symbol_index.get(name).copied().map(Symbol)
    }

    pub fn symbol_name(&self, a: Symbol) -> &str {
        &self.symbols[a.index()]
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    #[inline]
    pub fn is_initial(&self, q: StateId) -> bool {
        self.is_initial[q.index()]
    }

    #[inline]
    pub fn is_final(&self, q: StateId) -> bool {
        self.is_final[q.index()]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states().filter(|&q| self.is_final(q))
    }

    /// All transitions leaving `q`, sorted by symbol.
    #[inline]
    pub fn transitions(&self, q: StateId) -> &[(Symbol, StateId)] {
        &self.trans[q.index()]
    }

    /// Successors of `q` on `a`.
    pub fn successors(&self, q: StateId, a: Symbol) -> impl Iterator<Item = StateId> + '_ {
        let row = &self.trans[q.index()];
        let lo = row.partition_point(|&(b, _)| b < a);
        row[lo..]
            .iter()
            .take_while(move |&&(b, _)| b == a)
            .map(|&(_, t)| t)
    }

    pub fn transition_triples(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        self.states()
            .flat_map(move |q| self.trans[q.index()].iter().map(move |&(a, t)| (q, a, t)))
    }

    /// Number of accepting runs on a word given as symbol names.
    pub fn count_runs(&self, word: &[&str]) -> BigUint {
        let mut cur: Vec<BigUint> = self
            .states()
            .map(|q| {
                if self.is_initial(q) {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            })
            .collect();
        for w in word {
            let Some(a) = self.symbol(w) else {
                return BigUint::zero();
            };
            let mut next = vec![BigUint::zero(); self.num_states()];
            for q in self.states() {
                if cur[q.index()].is_zero() {
                    continue;
                }
                for t in self.successors(q, a) {
                    next[t.index()] += &cur[q.index()];
                }
            }
            cur = next;
        }
        self.finals().map(|q| &cur[q.index()]).sum()
    }

    pub fn accepts(&self, word: &[&str]) -> bool {
        let mut cur: Vec<bool> = self.states().map(|q| self.is_initial(q)).collect();
        for w in word {
            let Some(a) = self.symbol(w) else {
                return false;
            };
            let mut next = vec![false; self.num_states()];
            for q in self.states().filter(|q| cur[q.index()]) {
                for t in self.successors(q, a) {
                    next[t.index()] = true;
                }
            }
            cur = next;
        }
        self.finals().any(|q| cur[q.index()])
    }

    /// Accepts the reversed language: transitions flipped, initial and
    /// final sets swapped. State ids and names are kept.
    pub fn reverse(&self) -> Automaton {
        let mut b = self.empty_copy();
        for q in self.states() {
            if self.is_final(q) {
                b.set_initial(q);
            }
            if self.is_initial(q) {
                b.set_final(q);
            }
        }
        for (p, a, q) in self.transition_triples() {
            b.add_transition_sym(q, a, p);
        }
        b.build()
    }

    /// Builder with the same states and symbols but no transitions and no
    /// initial or final marks.
    pub(crate) fn empty_copy(&self) -> AutomatonBuilder {
        let mut b = AutomatonBuilder::new();
        for name in &self.symbols {
            b.symbol(name);
        }
        for q in self.states() {
            b.add_state(self.state_name(q));
        }
        b
    }

    /// States reachable from an initial state and co-reachable to a final one.
    pub fn useful_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut fwd = vec![false; n];
        let mut stack: Vec<StateId> = self.initial.clone();
        for q in &stack {
            fwd[q.index()] = true;
        }
        while let Some(q) = stack.pop() {
            for &(_, t) in self.transitions(q) {
                if !fwd[t.index()] {
                    fwd[t.index()] = true;
                    stack.push(t);
                }
            }
        }
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (p, _, q) in self.transition_triples() {
            preds[q.index()].push(p);
        }
        let mut bwd = vec![false; n];
        let mut stack: Vec<StateId> = self.finals().collect();
        for q in &stack {
            bwd[q.index()] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &preds[q.index()] {
                if !bwd[p.index()] {
                    bwd[p.index()] = true;
                    stack.push(p);
                }
            }
        }
        (0..n).map(|i| fwd[i] && bwd[i]).collect()
    }

    /// Removes states that are unreachable or cannot reach a final state.
    /// Surviving states keep their relative order.
    pub fn trim(&self) -> Automaton {
        let useful = self.useful_states();
        let mut b = AutomatonBuilder::new();
        for name in &self.symbols {
            b.symbol(name);
        }
        let mut map = vec![None; self.num_states()];
        for q in self.states().filter(|q| useful[q.index()]) {
            let nq = b.add_state(self.state_name(q));
            if self.is_initial(q) {
                b.set_initial(nq);
            }
            if self.is_final(q) {
                b.set_final(nq);
            }
            map[q.index()] = Some(nq);
        }
        for (p, a, q) in self.transition_triples() {
            if let (Some(np), Some(nq)) = (map[p.index()], map[q.index()]) {
                b.add_transition_sym(np, a, nq);
            }
        }
        b.build()
    }

    /// The same automaton reported as a plain NFA, so that the product
    /// construction accepts it under set semantics.
    pub fn as_nfa(&self) -> Automaton {
        let mut a = self.clone();
        a.kind = AutomatonKind::Nfa;
        a
    }

    /// Accepts exactly the words of length `n` over the given symbols.
    pub fn words_of_length(symbols: &[&str], n: usize) -> Automaton {
        let mut b = AutomatonBuilder::new();
        let states: Vec<StateId> = (0..=n).map(|i| b.add_state(&i.to_string())).collect();
        b.set_initial(states[0]);
        b.set_final(states[n]);
        for w in states.windows(2) {
            for s in symbols {
                b.add_transition(w[0], s, w[1]);
            }
        }
        b.build()
    }
}
