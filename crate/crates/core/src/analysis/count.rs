use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::pmr::{Pmr, RepNode};

/// A path count: a natural number or infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(BigUint),
    Infinite,
}

impl Count {
    pub fn zero() -> Count {
        Count::Finite(BigUint::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Count::Infinite)
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Count::Finite(n) if n.is_zero())
    }
}

impl std::ops::Add for Count {
    type Output = Count;

    fn add(self, rhs: Count) -> Count {
        match (self, rhs) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a + b),
            _ => Count::Infinite,
        }
    }
}

impl From<u64> for Count {
    fn from(n: u64) -> Count {
        Count::Finite(BigUint::from(n))
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("inf"),
        }
    }
}

/// Number of paths from each node to a target, `Infinite` for nodes that
/// can reach a cycle. Exact on trim PMRs (there every node reaches a
/// target, so every reachable cycle is on a represented path).
///
/// Nodes are peeled in reverse topological order: a node leaves once all
/// its successors have. Whatever is never peeled can reach a cycle.
pub fn counts_to_target(r: &Pmr) -> Vec<Count> {
    let mut outdeg: Vec<usize> = r.nodes().map(|v| r.out_edges(v).len()).collect();
    let mut finite: Vec<Option<BigUint>> = vec![None; r.node_count()];
    let mut queue: Vec<RepNode> = r.nodes().filter(|v| outdeg[v.index()] == 0).collect();
    while let Some(v) = queue.pop() {
        let mut c = if r.is_target(v) {
            BigUint::one()
        } else {
            BigUint::zero()
        };
        for &e in r.out_edges(v) {
            c += finite[r.tgt(e).index()]
                .as_ref()
                .expect("successors are peeled first");
        }
        finite[v.index()] = Some(c);
        for &e in r.in_edges(v) {
            let u = r.src(e);
            outdeg[u.index()] -= 1;
            if outdeg[u.index()] == 0 {
                queue.push(u);
            }
        }
    }
    finite
        .into_iter()
        .map(|c| c.map_or(Count::Infinite, Count::Finite))
        .collect()
}

/// Size of the represented multiset. Requires a trim PMR.
pub fn count_paths(r: &Pmr) -> Result<Count> {
    if !r.is_trim() {
        return Err(Error::NotTrim);
    }
    let cnt = counts_to_target(r);
    Ok(r.sources()
        .iter()
        .fold(Count::zero(), |acc, s| acc + cnt[s.index()].clone()))
}

/// Represented paths grouped by the graph node they start at. Requires a
/// trim PMR.
pub fn count_by_source(r: &Pmr) -> Result<BTreeMap<NodeId, Count>> {
    if !r.is_trim() {
        return Err(Error::NotTrim);
    }
    let cnt = counts_to_target(r);
    let mut out: BTreeMap<NodeId, Count> = BTreeMap::new();
    for &s in r.sources() {
        let c = out.remove(&r.gamma(s)).unwrap_or_else(Count::zero);
        out.insert(r.gamma(s), c + cnt[s.index()].clone());
    }
    Ok(out)
}

/// Per-node path counts of an acyclic PMR.
#[derive(Debug, Clone)]
pub struct PathCountAnnotation {
    /// Paths from the node to some target.
    pub to_target: Vec<BigUint>,
    /// Paths from some source to the node.
    pub from_source: Vec<BigUint>,
}

impl PathCountAnnotation {
    pub fn compute(r: &Pmr) -> Result<Self> {
        let order = r.topological_order().ok_or(Error::InfiniteMultiset)?;
        let mut to_target = vec![BigUint::zero(); r.node_count()];
        for &v in order.iter().rev() {
            let mut c = if r.is_target(v) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
            for &e in r.out_edges(v) {
                c += &to_target[r.tgt(e).index()];
            }
            to_target[v.index()] = c;
        }
        let mut from_source = vec![BigUint::zero(); r.node_count()];
        for &v in &order {
            let mut c = if r.is_source(v) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
            for &e in r.in_edges(v) {
                c += &from_source[r.src(e).index()];
            }
            from_source[v.index()] = c;
        }
        Ok(PathCountAnnotation {
            to_target,
            from_source,
        })
    }
}
