use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::ast::Atom;
use super::eval::{apply_mode, EvalOptions};
use crate::analysis::{count_by_source, count_paths, enumerate, Count, PathIter};
use crate::automata::{concat_chain, StateId};
use crate::error::{Error, Result};
use crate::graph::{GraphDb, NodeId, NodePredicate, Path};
use crate::pmr::{group, product_select_trim, select_trim_with_states, GroupKind, GroupedPmr, Pmr};

/// Evaluated chain query.
#[derive(Debug, Clone)]
pub struct ChainResult {
    /// Trim product of the graph with the concatenated automaton. Each of
    /// its paths is one tuple split of a matching graph path.
    pub pmr: Pmr,
    /// `U₀ … U_k`: graph nodes where some represented path starts, crosses
    /// from atom `i` to atom `i+1`, or ends.
    pub boundaries: Vec<BTreeSet<NodeId>>,
    /// Per atom, its paths grouped by endpoint pair. Only pairs that occur
    /// in some full tuple are kept.
    pub atoms: Vec<GroupedPmr>,
}

/// Checks the chain shape `(z₀,L₁,z₁), (z₁,L₂,z₂), …` with all `zᵢ`
/// distinct.
fn check_chain(atoms: &[Atom]) -> Result<()> {
    if atoms.is_empty() {
        return Err(Error::Unsupported("empty chain".into()));
    }
    for w in atoms.windows(2) {
        if w[0].to != w[1].from {
            return Err(Error::Unsupported(format!(
                "atoms must chain: `{}` is followed by `{}`",
                w[0].to, w[1].from
            )));
        }
    }
    let mut seen = HashSet::from([atoms[0].from.as_str()]);
    for a in atoms {
        if !seen.insert(a.to.as_str()) {
            return Err(Error::Unsupported(format!(
                "variable `{}` repeats; only chain-shaped joins are supported",
                a.to
            )));
        }
    }
    Ok(())
}

/// Graph nodes at each segment boundary of the chain product.
fn boundary_sets(
    r: &Pmr,
    states: &[StateId],
    atom_of: &[usize],
    k: usize,
) -> Vec<BTreeSet<NodeId>> {
    let atom = |v: crate::pmr::RepNode| atom_of[states[v.index()].index()];
    let mut u = vec![BTreeSet::new(); k + 1];
    u[0] = r.sources().iter().map(|&s| r.gamma(s)).collect();
    u[k] = r.targets().iter().map(|&t| r.gamma(t)).collect();
    for e in r.edges() {
        let (i, j) = (atom(r.src(e)), atom(r.tgt(e)));
        let gamma = r.gamma(r.src(e));
        for ub in u.iter_mut().take(j.min(k - 1) + 1).skip(i + 1) {
            ub.insert(gamma);
        }
    }
    // A path ending in atom i leaves atoms i+1.. empty at its last node.
    for &t in r.targets() {
        for ub in u.iter_mut().take(k).skip(atom(t) + 1) {
            ub.insert(r.gamma(t));
        }
    }
    u
}

/// Keeps the groups whose endpoint pair extends to a full chain of pairs.
fn semi_join(atoms: &mut [GroupedPmr]) {
    let k = atoms.len();
    let mut allowed: Option<BTreeSet<NodeId>> = None;
    for h in atoms.iter_mut() {
        if let Some(a) = &allowed {
            h.groups.retain(|g| a.contains(&g.source.unwrap()));
        }
        allowed = Some(h.groups.iter().map(|g| g.target.unwrap()).collect());
    }
    for i in (0..k).rev() {
        let h = &mut atoms[i];
        if let Some(a) = &allowed {
            h.groups.retain(|g| a.contains(&g.target.unwrap()));
        }
        allowed = Some(h.groups.iter().map(|g| g.source.unwrap()).collect());
    }
}

pub fn eval_chain(g: &GraphDb, atoms: &[Atom], opts: &EvalOptions) -> Result<ChainResult> {
    check_chain(atoms)?;
    let autos = atoms
        .iter()
        .map(|a| opts.compile(&a.lang))
        .collect::<Result<Vec<_>>>()?;
    let chain = concat_chain(&autos);
    let all = NodePredicate::All;
    // Runs of the concatenation are tuple splits, so it is ambiguous by
    // design.
    let (pmr, states) = select_trim_with_states(g, &chain.automaton, &all, &all);
    let k = atoms.len();
    let boundaries = boundary_sets(&pmr, &states, &chain.atom_of, k);

    let mut grouped = Vec::with_capacity(k);
    for (i, (atom, a)) in atoms.iter().zip(&autos).enumerate() {
        let u = NodePredicate::of(boundaries[i].iter().copied());
        let v = NodePredicate::of(boundaries[i + 1].iter().copied());
        let mut ri = product_select_trim(g, a, &u, &v, true)?;
        if let Some(m) = atom.mode {
            ri = apply_mode(&ri, g, m, opts.path_cap)?;
        }
        grouped.push(group(&ri, GroupKind::Pair));
    }
    semi_join(&mut grouped);
    Ok(ChainResult {
        pmr,
        boundaries,
        atoms: grouped,
    })
}

fn mul(a: &Count, b: &Count) -> Count {
    match (a, b) {
        _ if a.is_zero() || b.is_zero() => Count::zero(),
        (Count::Finite(x), Count::Finite(y)) => Count::Finite(x * y),
        _ => Count::Infinite,
    }
}

/// Number of result tuples starting at each node of `U₀`.
///
/// Without per-atom filters this counts paths in the chain product from
/// each source, which needs only the product itself. With filters the
/// counts come from the filtered groups, joined atom by atom.
pub fn eval_proj1(
    g: &GraphDb,
    atoms: &[Atom],
    opts: &EvalOptions,
) -> Result<BTreeMap<NodeId, Count>> {
    check_chain(atoms)?;
    if atoms.iter().all(|a| a.mode.is_none()) {
        let autos = atoms
            .iter()
            .map(|a| opts.compile(&a.lang))
            .collect::<Result<Vec<_>>>()?;
        let chain = concat_chain(&autos);
        let all = NodePredicate::All;
        let (r, _) = select_trim_with_states(g, &chain.automaton, &all, &all);
        return count_by_source(&r);
    }
    let cr = eval_chain(g, atoms, opts)?;
    // tail[v]: tuples of atoms i.. starting at v.
    let mut tail: BTreeMap<NodeId, Count> = BTreeMap::new();
    for (i, h) in cr.atoms.iter().enumerate().rev() {
        let mut next: BTreeMap<NodeId, Count> = BTreeMap::new();
        for grp in &h.groups {
            let c = count_paths(&grp.pmr)?;
            let rest = if i + 1 == cr.atoms.len() {
                Count::from(1u64)
            } else {
                tail.get(&grp.target.unwrap())
                    .cloned()
                    .unwrap_or_else(Count::zero)
            };
            let add = mul(&c, &rest);
            let cur = next
                .remove(&grp.source.unwrap())
                .unwrap_or_else(Count::zero);
            next.insert(grp.source.unwrap(), cur + add);
        }
        tail = next;
    }
    tail.retain(|_, c| !c.is_zero());
    Ok(tail)
}

/// One result tuple `(u₁, ρ₁, v₁, …, u_k, ρ_k, v_k)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChainRow(pub Vec<(NodeId, Path, NodeId)>);

impl ChainRow {
    /// Tab-separated `u₁  v₁  ρ₁  …`.
    pub fn render(&self, g: &GraphDb) -> String {
        self.0
            .iter()
            .map(|(u, p, v)| format!("{}\t{}\t{}", g.node_name(*u), g.node_name(*v), p.render(g)))
            .collect::<Vec<_>>()
            .join("\t")
    }
}

impl ChainResult {
    /// Endpoint tuples as group indices per atom, in lexicographic order.
    fn tuples(&self) -> Vec<Vec<usize>> {
        let k = self.atoms.len();
        let by_source: Vec<BTreeMap<NodeId, Vec<usize>>> = self
            .atoms
            .iter()
            .map(|h| {
                let mut m: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
                for (gi, grp) in h.groups.iter().enumerate() {
                    m.entry(grp.source.unwrap()).or_default().push(gi);
                }
                m
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn extend(
            atoms: &[GroupedPmr],
            by_source: &[BTreeMap<NodeId, Vec<usize>>],
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let i = cur.len();
            if i == atoms.len() {
                out.push(cur.clone());
                return;
            }
            let candidates: Vec<usize> = if i == 0 {
                (0..atoms[0].groups.len()).collect()
            } else {
                let v = atoms[i - 1].groups[cur[i - 1]].target.unwrap();
                by_source[i].get(&v).cloned().unwrap_or_default()
            };
            for gi in candidates {
                cur.push(gi);
                extend(atoms, by_source, cur, out);
                cur.pop();
            }
        }
        extend(&self.atoms, &by_source, &mut cur, &mut out);
        out
    }

    /// Endpoint tuples `(u₁, …, u_k, v_k)`.
    pub fn endpoint_tuples(&self) -> Vec<Vec<NodeId>> {
        self.tuples()
            .into_iter()
            .map(|t| {
                let mut nodes: Vec<NodeId> = t
                    .iter()
                    .enumerate()
                    .map(|(i, &gi)| self.atoms[i].groups[gi].source.unwrap())
                    .collect();
                let last = self.atoms.len() - 1;
                nodes.push(self.atoms[last].groups[t[last]].target.unwrap());
                nodes
            })
            .collect()
    }
}

/// Streams result tuples: for each endpoint tuple, every combination of
/// one path per atom group, last atom varying fastest.
pub struct ChainRows<'a> {
    cr: &'a ChainResult,
    tuples: Vec<Vec<usize>>,
    next_tuple: usize,
    groups: Vec<&'a Pmr>,
    iters: Vec<PathIter<'a>>,
    current: Vec<Path>,
}

impl ChainRows<'_> {
    fn row(&self) -> ChainRow {
        ChainRow(
            self.current
                .iter()
                .map(|p| (p.source(), p.clone(), p.target()))
                .collect(),
        )
    }
}

impl Iterator for ChainRows<'_> {
    type Item = ChainRow;

    fn next(&mut self) -> Option<ChainRow> {
        loop {
            if self.iters.is_empty() {
                let t = self.tuples.get(self.next_tuple)?;
                self.next_tuple += 1;
                self.groups = t
                    .iter()
                    .enumerate()
                    .map(|(i, &gi)| &self.cr.atoms[i].groups[gi].pmr)
                    .collect();
                self.iters = self.groups.iter().map(|r| enumerate(r)).collect();
                let first: Option<Vec<Path>> = self.iters.iter_mut().map(Iterator::next).collect();
                match first {
                    Some(ps) => {
                        self.current = ps;
                        return Some(self.row());
                    }
                    None => {
                        self.iters.clear();
                        continue;
                    }
                }
            }
            let mut i = self.iters.len();
            while i > 0 {
                i -= 1;
                if let Some(p) = self.iters[i].next() {
                    self.current[i] = p;
                    for j in i + 1..self.iters.len() {
                        self.iters[j] = enumerate(self.groups[j]);
                        self.current[j] = self.iters[j].next().expect("group is non-empty");
                    }
                    return Some(self.row());
                }
            }
            self.iters.clear();
        }
    }
}

/// Streams the tuples of a chain result, stopping after `limit` rows.
pub fn chain_tab_enumerate(
    cr: &ChainResult,
    limit: Option<usize>,
) -> impl Iterator<Item = ChainRow> + '_ {
    let rows = ChainRows {
        cr,
        tuples: cr.tuples(),
        next_tuple: 0,
        groups: Vec::new(),
        iters: Vec::new(),
        current: Vec::new(),
    };
    rows.take(limit.unwrap_or(usize::MAX))
}

/// Total number of result tuples.
pub fn chain_count(cr: &ChainResult) -> Result<Count> {
    let counts: Vec<Vec<Count>> = cr
        .atoms
        .iter()
        .map(|h| h.groups.iter().map(|grp| count_paths(&grp.pmr)).collect())
        .collect::<Result<_>>()?;
    Ok(cr.tuples().iter().fold(Count::zero(), |acc, t| {
        let c = t
            .iter()
            .enumerate()
            .fold(Count::from(1u64), |c, (i, &gi)| mul(&c, &counts[i][gi]));
        acc + c
    }))
}
