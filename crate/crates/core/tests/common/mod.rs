//! Random instance generators and reference implementations shared by the
//! integration tests. The reference matcher works on regular expression
//! derivatives and never touches the automata module.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use pmr_core::automata::Regex;
use pmr_core::graph::{GraphBuilder, GraphDb, NodeId, NodePredicate, Path};
use pmr_core::pmr::{Pmr, PmrBuilder, RepNode};
use rand::Rng;

pub const LABELS: [&str; 2] = ["a", "b"];

/// Regular expression normalized up to associativity, commutativity and
/// idempotence of union, so that a regex has finitely many derivatives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Re {
    Empty,
    Eps,
    Sym(String),
    Cat(Box<Re>, Box<Re>),
    Alt(BTreeSet<Re>),
    Star(Box<Re>),
}

fn cat(a: Re, b: Re) -> Re {
    match (a, b) {
        (Re::Empty, _) | (_, Re::Empty) => Re::Empty,
        (Re::Eps, x) | (x, Re::Eps) => x,
        (Re::Cat(x, y), z) => cat(*x, cat(*y, z)),
        (x, y) => Re::Cat(Box::new(x), Box::new(y)),
    }
}

fn alt(a: Re, b: Re) -> Re {
    let mut set = BTreeSet::new();
    for x in [a, b] {
        match x {
            Re::Empty => {}
            Re::Alt(xs) => set.extend(xs),
            x => {
                set.insert(x);
            }
        }
    }
    match set.len() {
        0 => Re::Empty,
        1 => set.into_iter().next().unwrap(),
        _ => Re::Alt(set),
    }
}

fn star(a: Re) -> Re {
    match a {
        Re::Empty | Re::Eps => Re::Eps,
        s @ Re::Star(_) => s,
        x => Re::Star(Box::new(x)),
    }
}

impl Re {
    pub fn from_regex(r: &Regex) -> Re {
        match r {
            Regex::Epsilon => Re::Eps,
            Regex::Label(a) => Re::Sym(a.clone()),
            Regex::Concat(a, b) => cat(Re::from_regex(a), Re::from_regex(b)),
            Regex::Union(a, b) => alt(Re::from_regex(a), Re::from_regex(b)),
            Regex::Star(a) => star(Re::from_regex(a)),
            Regex::Plus(a) => {
                let x = Re::from_regex(a);
                cat(x.clone(), star(x))
            }
            Regex::Optional(a) => alt(Re::Eps, Re::from_regex(a)),
        }
    }

    pub fn nullable(&self) -> bool {
        match self {
            Re::Empty | Re::Sym(_) => false,
            Re::Eps | Re::Star(_) => true,
            Re::Cat(a, b) => a.nullable() && b.nullable(),
            Re::Alt(xs) => xs.iter().any(Re::nullable),
        }
    }

    pub fn deriv(&self, c: &str) -> Re {
        match self {
            Re::Empty | Re::Eps => Re::Empty,
            Re::Sym(a) => {
                if a == c {
                    Re::Eps
                } else {
                    Re::Empty
                }
            }
            Re::Cat(a, b) => {
                let left = cat(a.deriv(c), (**b).clone());
                if a.nullable() {
                    alt(left, b.deriv(c))
                } else {
                    left
                }
            }
            Re::Alt(xs) => xs.iter().fold(Re::Empty, |acc, x| alt(acc, x.deriv(c))),
            Re::Star(a) => cat(a.deriv(c), self.clone()),
        }
    }

    pub fn matches(&self, word: &[&str]) -> bool {
        word.iter().fold(self.clone(), |r, c| r.deriv(c)).nullable()
    }
}

/// Graph with `1..=max_nodes` nodes `n0…` and up to `max_edges` edges
/// with labels from [`LABELS`]. Self-loops and parallel edges allowed.
pub fn random_graph<R: Rng>(rng: &mut R, max_nodes: usize, max_edges: usize) -> GraphDb {
    let n = rng.gen_range(1..=max_nodes);
    let m = rng.gen_range(0..=max_edges);
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_node(&format!("n{i}"));
    }
    for j in 0..m {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        let l = LABELS[rng.gen_range(0..LABELS.len())];
        b.add_edge(&format!("e{j}"), &format!("n{s}"), &format!("n{t}"), l)
            .unwrap();
    }
    b.build()
}

pub fn random_regex<R: Rng>(rng: &mut R, depth: usize) -> Regex {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return if rng.gen_bool(0.1) {
            Regex::Epsilon
        } else {
            Regex::label(LABELS[rng.gen_range(0..LABELS.len())])
        };
    }
    match rng.gen_range(0..5) {
        0 | 1 => Regex::concat(random_regex(rng, depth - 1), random_regex(rng, depth - 1)),
        2 => Regex::union(random_regex(rng, depth - 1), random_regex(rng, depth - 1)),
        3 => Regex::star(random_regex(rng, depth - 1)),
        _ => {
            if rng.gen_bool(0.5) {
                Regex::plus(random_regex(rng, depth - 1))
            } else {
                Regex::optional(random_regex(rng, depth - 1))
            }
        }
    }
}

/// PMR with `1..=max_nodes` rep-nodes over `g`. Edges follow the graph so
/// the PMR is valid; with `acyclic` they only go from lower to higher
/// rep-node index.
pub fn random_pmr<R: Rng>(rng: &mut R, g: &GraphDb, max_nodes: usize, acyclic: bool) -> Pmr {
    let n = rng.gen_range(1..=max_nodes);
    let mut b = PmrBuilder::new(g.graph_ref());
    let gamma: Vec<NodeId> = (0..n)
        .map(|_| NodeId(rng.gen_range(0..g.node_count() as u32)))
        .collect();
    let reps: Vec<RepNode> = gamma.iter().map(|&v| b.add_node(v)).collect();
    for i in 0..n {
        for j in 0..n {
            if acyclic && j <= i {
                continue;
            }
            for &e in g.out_edges(gamma[i]) {
                if g.tgt(e) == gamma[j] && rng.gen_bool(0.35) {
                    b.add_edge(reps[i], reps[j], e);
                }
            }
        }
        if rng.gen_bool(0.4) {
            b.set_source(reps[i]);
        }
        if rng.gen_bool(0.4) {
            b.set_target(reps[i]);
        }
    }
    b.build()
}

/// Every path of length at most `max_len` from `u` to `v` whose label word
/// matches `re`, each once. Walks are cut as soon as the derivative is
/// empty.
pub fn oracle_paths(
    g: &GraphDb,
    re: &Re,
    max_len: usize,
    u: &NodePredicate,
    v: &NodePredicate,
) -> BTreeMap<Path, u64> {
    fn walk(
        g: &GraphDb,
        start: NodeId,
        at: NodeId,
        re: &Re,
        max_len: usize,
        v: &NodePredicate,
        edges: &mut Vec<pmr_core::graph::EdgeId>,
        out: &mut BTreeMap<Path, u64>,
    ) {
        if re.nullable() && v.contains(at) {
            out.insert(Path::from_edges(g, start, edges).unwrap(), 1);
        }
        if edges.len() == max_len {
            return;
        }
        for &e in g.out_edges(at) {
            let d = re.deriv(g.label_name(g.label(e)));
            if d == Re::Empty {
                continue;
            }
            edges.push(e);
            walk(g, start, g.tgt(e), &d, max_len, v, edges, out);
            edges.pop();
        }
    }
    let mut out = BTreeMap::new();
    for s in g.nodes().filter(|&n| u.contains(n)) {
        walk(g, s, s, re, max_len, v, &mut Vec::new(), &mut out);
    }
    out
}

/// For every endpoint pair, all matching paths of minimum length.
///
/// Distances come from a breadth-first search over (node, derivative)
/// pairs from each start node. Because derivatives are deterministic,
/// every prefix of a shortest matching path is a shortest walk to its own
/// (node, derivative) pair, which bounds the enumeration.
pub fn oracle_shortest(g: &GraphDb, re: &Re) -> BTreeMap<Path, u64> {
    let mut out = BTreeMap::new();
    for s in g.nodes() {
        let mut dist: HashMap<(NodeId, Re), usize> = HashMap::new();
        let mut queue = VecDeque::from([(s, re.clone())]);
        dist.insert((s, re.clone()), 0);
        let mut best: BTreeMap<NodeId, usize> = BTreeMap::new();
        while let Some((v, d)) = queue.pop_front() {
            let k = dist[&(v, d.clone())];
            if d.nullable() {
                best.entry(v).or_insert(k);
            }
            for &e in g.out_edges(v) {
                let d2 = d.deriv(g.label_name(g.label(e)));
                if d2 == Re::Empty {
                    continue;
                }
                let key = (g.tgt(e), d2);
                if !dist.contains_key(&key) {
                    dist.insert(key.clone(), k + 1);
                    queue.push_back(key);
                }
            }
        }
        let mut edges = Vec::new();
        shortest_walk(g, s, s, re, &dist, &best, &mut edges, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn shortest_walk(
    g: &GraphDb,
    start: NodeId,
    at: NodeId,
    re: &Re,
    dist: &HashMap<(NodeId, Re), usize>,
    best: &BTreeMap<NodeId, usize>,
    edges: &mut Vec<pmr_core::graph::EdgeId>,
    out: &mut BTreeMap<Path, u64>,
) {
    if re.nullable() && best.get(&at) == Some(&edges.len()) {
        out.insert(Path::from_edges(g, start, edges).unwrap(), 1);
    }
    let longest = best.values().copied().max().unwrap_or(0);
    if edges.len() >= longest {
        return;
    }
    for &e in g.out_edges(at) {
        let d = re.deriv(g.label_name(g.label(e)));
        if d == Re::Empty || dist.get(&(g.tgt(e), d.clone())) != Some(&(edges.len() + 1)) {
            continue;
        }
        edges.push(e);
        shortest_walk(g, start, g.tgt(e), &d, dist, best, edges, out);
        edges.pop();
    }
}

pub fn to_multiset(paths: impl IntoIterator<Item = Path>) -> BTreeMap<Path, u64> {
    let mut m = BTreeMap::new();
    for p in paths {
        *m.entry(p).or_insert(0) += 1;
    }
    m
}

/// Represented paths of length at most `max_len` with multiplicity, by
/// carrying a vector of run counts per rep-node along each graph path.
/// Unlike walking rep-paths one by one, the work is per distinct graph
/// path.
pub fn path_counts(r: &Pmr, g: &GraphDb, max_len: usize) -> BTreeMap<Path, u64> {
    let n = r.node_count();
    let mut layer: BTreeMap<(NodeId, Vec<pmr_core::graph::EdgeId>), Vec<u64>> = BTreeMap::new();
    for &s in r.sources() {
        layer
            .entry((r.gamma(s), Vec::new()))
            .or_insert_with(|| vec![0; n])[s.index()] += 1;
    }
    let mut out = BTreeMap::new();
    for len in 0..=max_len {
        let mut next: BTreeMap<(NodeId, Vec<pmr_core::graph::EdgeId>), Vec<u64>> = BTreeMap::new();
        for ((start, edges), v) in &layer {
            let c: u64 = r.targets().iter().map(|t| v[t.index()]).sum();
            if c > 0 {
                out.insert(Path::from_edges(g, *start, edges).unwrap(), c);
            }
            if len == max_len {
                continue;
            }
            for x in r.nodes().filter(|x| v[x.index()] > 0) {
                for &e in r.out_edges(x) {
                    let mut key = edges.clone();
                    key.push(r.edge_gamma(e));
                    next.entry((*start, key)).or_insert_with(|| vec![0; n])[r.tgt(e).index()] +=
                        v[x.index()];
                }
            }
        }
        layer = next;
    }
    out
}

/// The same PMR with rep-nodes renumbered by a random permutation.
pub fn permuted<R: Rng>(rng: &mut R, r: &Pmr) -> Pmr {
    let n = r.node_count();
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut b = PmrBuilder::new(r.graph_ref());
    let mut map = vec![RepNode(0); n];
    for &i in &order {
        let v = RepNode(i as u32);
        map[i] = b.add_node(r.gamma(v));
        if r.is_source(v) {
            b.set_source(map[i]);
        }
        if r.is_target(v) {
            b.set_target(map[i]);
        }
    }
    for e in r.edges() {
        b.add_edge(
            map[r.src(e).index()],
            map[r.tgt(e).index()],
            r.edge_gamma(e),
        );
    }
    b.build()
}

/// Splits one rep-node into two copies: incoming edges are divided between
/// them at random, outgoing edges and target membership are copied, source
/// membership stays with the original. The multiset is unchanged.
pub fn unfolded<R: Rng>(rng: &mut R, r: &Pmr) -> Pmr {
    if r.node_count() == 0 {
        return r.clone();
    }
    let v = RepNode(rng.gen_range(0..r.node_count() as u32));
    let mut fresh = PmrBuilder::new(r.graph_ref());
    for x in r.nodes() {
        let y = fresh.add_node(r.gamma(x));
        if r.is_source(x) {
            fresh.set_source(y);
        }
        if r.is_target(x) {
            fresh.set_target(y);
        }
    }
    let copy = fresh.add_node(r.gamma(v));
    if r.is_target(v) {
        fresh.set_target(copy);
    }
    for e in r.edges() {
        let (s, t) = (r.src(e), r.tgt(e));
        let t2 = if t == v && rng.gen_bool(0.5) { copy } else { t };
        fresh.add_edge(s, t2, r.edge_gamma(e));
        if s == v {
            let t3 = if t == v { t2 } else { t };
            fresh.add_edge(copy, t3, r.edge_gamma(e));
        }
    }
    fresh.build()
}

/// Concatenation of two reference expressions.
pub fn concat(a: Re, b: Re) -> Re {
    cat(a, b)
}
