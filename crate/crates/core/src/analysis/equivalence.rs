use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::automata::Automaton;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, NodeId};
use crate::pmr::Pmr;

/// Row-echelon basis over the integers. Rows are kept primitive (content 1)
/// with a positive pivot, so entries stay small.
struct Basis {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Basis {
    /// Reduces `v` against the basis; returns the remainder if it is not in
    /// the span.
    fn reduce(&self, mut v: Vec<BigInt>) -> Option<Vec<BigInt>> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            // v ← row[p]·v − v[p]·row, which zeroes v[p].
            let (a, b) = (row[*p].clone(), v[*p].clone());
            for (x, r) in v.iter_mut().zip(row) {
                *x = &a * &*x - &b * r;
            }
            make_primitive(&mut v);
        }
        v.iter().any(|x| !x.is_zero()).then_some(v)
    }

    fn push(&mut self, mut v: Vec<BigInt>) -> usize {
        make_primitive(&mut v);
        let p = v.iter().position(|x| !x.is_zero()).expect("non-zero row");
        if v[p].is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        self.rows.push((p, v));
        self.rows.len() - 1
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|x| *x = &*x / &g);
    }
}

fn dot(v: &[BigInt], w: &[BigInt]) -> BigInt {
    v.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// Weighted transition system over letters of type `K`: a move list per
/// letter, a start vector and a final functional. Repeated moves count
/// with multiplicity.
struct System<K> {
    letters: BTreeMap<K, Vec<(usize, usize)>>,
    start: Vec<BigInt>,
    eta: Vec<BigInt>,
}

impl<K: Ord> System<K> {
    fn new() -> Self {
        System {
            letters: BTreeMap::new(),
            start: Vec::new(),
            eta: Vec::new(),
        }
    }

    /// Appends `n` states and returns the offset of the first.
    fn add_states(&mut self, n: usize) -> usize {
        let off = self.start.len();
        self.start.resize(off + n, BigInt::zero());
        self.eta.resize(off + n, BigInt::zero());
        off
    }

    fn add_move(&mut self, letter: K, p: usize, q: usize) {
        self.letters.entry(letter).or_default().push((p, q));
    }

    /// Whether `eta` vanishes on every reachable vector `start·M(w)`.
    ///
    /// The reachable span is explored breadth first, keeping a basis; it
    /// has at most as many vectors as there are states. All arithmetic is
    /// exact.
    fn is_zero(&self) -> bool {
        let n = self.start.len();
        let mut basis = Basis { rows: Vec::new() };
        let mut queue = VecDeque::new();
        if let Some(v) = basis.reduce(self.start.clone()) {
            let i = basis.push(v);
            if !dot(&basis.rows[i].1, &self.eta).is_zero() {
                return false;
            }
            queue.push_back(i);
        }
        while let Some(i) = queue.pop_front() {
            let row = basis.rows[i].1.clone();
            for moves in self.letters.values() {
                let mut next = vec![BigInt::zero(); n];
                let mut any = false;
                for &(p, q) in moves {
                    if !row[p].is_zero() {
                        next[q] += &row[p];
                        any = true;
                    }
                }
                if !any {
                    continue;
                }
                if let Some(v) = basis.reduce(next) {
                    let j = basis.push(v);
                    if !dot(&basis.rows[j].1, &self.eta).is_zero() {
                        return false;
                    }
                    queue.push_back(j);
                }
            }
        }
        true
    }
}

/// Path equivalence of two ε-free NFAs: every word has the same number of
/// accepting runs in both. Decided on the difference of the two run-count
/// functions over the disjoint union.
pub fn path_equivalent(a1: &Automaton, a2: &Automaton) -> bool {
    let mut sys = System::new();
    for (a, sign) in [(a1, 1), (a2, -1)] {
        let off = sys.add_states(a.num_states());
        for (p, s, q) in a.transition_triples() {
            sys.add_move(a.symbol_name(s), off + p.index(), off + q.index());
        }
        for q in a.initial() {
            sys.start[off + q.index()] += 1;
        }
        for q in a.finals() {
            sys.eta[off + q.index()] = BigInt::from(sign);
        }
    }
    sys.is_zero()
}

/// Letters of a PMR read as a word: the start node, then the edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Step {
    Start(NodeId),
    Edge(EdgeId),
}

/// Whether two PMRs represent the same path multiset.
///
/// Each PMR is read as a weighted automaton with one extra root state that
/// moves into every source on its start node. Parallel rep-edges with the
/// same image stay separate moves, so run counts equal multiplicities.
pub fn multiset_equivalent(r1: &Pmr, r2: &Pmr) -> Result<bool> {
    if r1.graph_ref() != r2.graph_ref() {
        return Err(Error::GraphMismatch {
            left: r1.graph_ref().to_hex(),
            right: r2.graph_ref().to_hex(),
        });
    }
    let mut sys = System::new();
    for (r, sign) in [(r1, 1), (r2, -1)] {
        let off = sys.add_states(r.node_count() + 1);
        let root = off + r.node_count();
        sys.start[root] = BigInt::one();
        for &s in r.sources() {
            sys.add_move(Step::Start(r.gamma(s)), root, off + s.index());
        }
        for e in r.edges() {
            sys.add_move(
                Step::Edge(r.edge_gamma(e)),
                off + r.src(e).index(),
                off + r.tgt(e).index(),
            );
        }
        for &t in r.targets() {
            sys.eta[off + t.index()] = BigInt::from(sign);
        }
    }
    Ok(sys.is_zero())
}
