use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;

use super::nfa::rooted_nfa;
use crate::automata::{check_unambiguous, determinize, Automaton, StateId};
use crate::error::{Error, Result};
use crate::pmr::{trim, Pmr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetStrategy {
    /// Polynomial word counting; both PMRs must be unambiguous.
    Ufa,
    /// Subset construction with a state cap.
    Determinize { cap: usize },
}

/// Whether two PMRs represent the same set of paths (multiplicities
/// ignored).
pub fn set_equivalent(r1: &Pmr, r2: &Pmr, strategy: SetStrategy) -> Result<bool> {
    if r1.graph_ref() != r2.graph_ref() {
        return Err(Error::GraphMismatch {
            left: r1.graph_ref().to_hex(),
            right: r2.graph_ref().to_hex(),
        });
    }
    let a1 = rooted_nfa(&trim(r1));
    let a2 = rooted_nfa(&trim(r2));
    match strategy {
        SetStrategy::Ufa => language_equivalent_ufa(&a1, &a2),
        SetStrategy::Determinize { cap } => language_equivalent_dfa(&a1, &a2, cap),
    }
}

/// Number of accepting runs per word length `0..=max_len`.
fn runs_by_length(
    n: usize,
    init: &[usize],
    finals: &[usize],
    moves: &[(usize, usize)],
    max_len: usize,
) -> Vec<BigUint> {
    let mut cur = vec![BigUint::zero(); n];
    for &q in init {
        cur[q] += 1u32;
    }
    let mut out = Vec::with_capacity(max_len + 1);
    for step in 0..=max_len {
        out.push(finals.iter().map(|&f| &cur[f]).sum());
        if step == max_len {
            break;
        }
        let mut next = vec![BigUint::zero(); n];
        for &(p, q) in moves {
            if !cur[p].is_zero() {
                next[q] += &cur[p];
            }
        }
        cur = next;
    }
    out
}

fn flatten(a: &Automaton) -> (Vec<usize>, Vec<usize>, Vec<(usize, usize)>) {
    (
        a.initial().iter().map(|q| q.index()).collect(),
        a.finals().map(|q| q.index()).collect(),
        a.transition_triples()
            .map(|(p, _, q)| (p.index(), q.index()))
            .collect(),
    )
}

/// Language equivalence of two unambiguous automata in polynomial time.
///
/// For unambiguous automata the number of accepting runs of length `ℓ` is
/// the number of accepted words of length `ℓ`, and the synchronized product
/// is unambiguous too and counts the common words. The languages agree iff
/// all three counts agree at every length. Each difference of counts is a
/// linear recurrence sequence of order at most `|Q₁| + |P|` (or
/// `|Q₂| + |P|`), so it vanishes everywhere once it vanishes on the first
/// `|Q₁| + |Q₂| + |P|` lengths.
pub fn language_equivalent_ufa(a1: &Automaton, a2: &Automaton) -> Result<bool> {
    if !check_unambiguous(a1) || !check_unambiguous(a2) {
        return Err(Error::Ambiguous);
    }

    // Reachable part of the synchronized product.
    let mut index: HashMap<(StateId, StateId), usize> = HashMap::new();
    let mut pairs: Vec<(StateId, StateId)> = Vec::new();
    let mut moves = Vec::new();
    for &p in a1.initial() {
        for &q in a2.initial() {
            index.insert((p, q), pairs.len());
            pairs.push((p, q));
        }
    }
    let mut head = 0;
    while head < pairs.len() {
        let (p, q) = pairs[head];
        for &(s, p2) in a1.transitions(p) {
            let Some(s2) = a2.symbol(a1.symbol_name(s)) else {
                continue;
            };
            for q2 in a2.successors(q, s2) {
                let k = *index.entry((p2, q2)).or_insert_with(|| {
                    pairs.push((p2, q2));
                    pairs.len() - 1
                });
                moves.push((head, k));
            }
        }
        head += 1;
    }
    let p_init: Vec<usize> = (0..a1.initial().len() * a2.initial().len()).collect();
    let p_final: Vec<usize> = pairs
        .iter()
        .enumerate()
        .filter(|(_, &(p, q))| a1.is_final(p) && a2.is_final(q))
        .map(|(i, _)| i)
        .collect();

    let bound = a1.num_states() + a2.num_states() + pairs.len();
    let (i1, f1, m1) = flatten(a1);
    let (i2, f2, m2) = flatten(a2);
    let c1 = runs_by_length(a1.num_states(), &i1, &f1, &m1, bound);
    let c2 = runs_by_length(a2.num_states(), &i2, &f2, &m2, bound);
    let cp = runs_by_length(pairs.len(), &p_init, &p_final, &moves, bound);
    Ok(c1 == cp && c2 == cp)
}

/// Language equivalence by determinizing both automata and searching their
/// product for a reachable pair that disagrees on acceptance.
pub fn language_equivalent_dfa(a1: &Automaton, a2: &Automaton, cap: usize) -> Result<bool> {
    let d1 = determinize(a1, cap)?;
    let d2 = determinize(a2, cap)?;
    let symbols: BTreeSet<&str> = d1
        .alphabet()
        .iter()
        .chain(d2.alphabet())
        .map(String::as_str)
        .collect();
    let step = |d: &Automaton, q: Option<StateId>, s: &str| -> Option<StateId> {
        let sym = d.symbol(s)?;
        d.successors(q?, sym).next()
    };
    let accepts = |d: &Automaton, q: Option<StateId>| q.is_some_and(|q| d.is_final(q));

    let start = (d1.initial().first().copied(), d2.initial().first().copied());
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        if accepts(&d1, p) != accepts(&d2, q) {
            return Ok(false);
        }
        for s in &symbols {
            let next = (step(&d1, p, s), step(&d2, q, s));
            if next == (None, None) {
                continue;
            }
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::DEFAULT_STATE_CAP;
    use crate::fixtures::{duplicated_path_pmr, transfer_example_graph};
    use crate::graph::Path;

    #[test]
    fn duplicate_is_set_equal_to_single() {
        let g = transfer_example_graph();
        let twice = duplicated_path_pmr(&g);
        let p = Path::from_edges(
            &g,
            g.node("a3").unwrap(),
            &[g.edge("t7").unwrap(), g.edge("t8").unwrap()],
        )
        .unwrap();
        let once = Pmr::canonical(g.graph_ref(), [&p]);
        let det = SetStrategy::Determinize {
            cap: DEFAULT_STATE_CAP,
        };
        assert!(set_equivalent(&twice, &once, det).unwrap());
        assert_eq!(
            set_equivalent(&twice, &once, SetStrategy::Ufa),
            Err(Error::Ambiguous)
        );
        assert!(set_equivalent(&once, &once, SetStrategy::Ufa).unwrap());
        let empty = Pmr::empty(g.graph_ref());
        assert!(!set_equivalent(&once, &empty, SetStrategy::Ufa).unwrap());
        assert!(!set_equivalent(&once, &empty, det).unwrap());
    }

    #[test]
    fn ufa_language_check() {
        let a = Automaton::parse_regex("a.(b.a)*", DEFAULT_STATE_CAP).unwrap();
        let b = Automaton::parse_regex("(a.b)*.a", DEFAULT_STATE_CAP).unwrap();
        let c = Automaton::parse_regex("(a.b)*", DEFAULT_STATE_CAP).unwrap();
        assert!(language_equivalent_ufa(&a, &b).unwrap());
        assert!(!language_equivalent_ufa(&a, &c).unwrap());
        assert!(language_equivalent_dfa(&a, &b, 64).unwrap());
        assert!(!language_equivalent_dfa(&a, &c, 64).unwrap());
    }
}
