use std::borrow::Cow;
use std::collections::BTreeSet;

use super::{select, trim, NodePredicate, Pmr, RepNode};
use crate::graph::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Source,
    Target,
    Pair,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Source => "src",
            GroupKind::Target => "tgt",
            GroupKind::Pair => "pair",
        }
    }
}

/// One part of a grouped result; the key fields that the grouping uses are
/// set.
#[derive(Debug, Clone)]
pub struct Group {
    pub source: Option<NodeId>,
    pub target: Option<NodeId>,
    pub pmr: Pmr,
}

#[derive(Debug, Clone)]
pub struct GroupedPmr {
    pub kind: GroupKind,
    pub groups: Vec<Group>,
}

impl GroupedPmr {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn get(&self, source: Option<NodeId>, target: Option<NodeId>) -> Option<&Pmr> {
        self.groups
            .iter()
            .find(|g| g.source == source && g.target == target)
            .map(|g| &g.pmr)
    }
}

/// Endpoint pairs `(γ(s), γ(t))` connected by some path, sorted.
pub(crate) fn endpoint_pairs(r: &Pmr) -> Vec<(NodeId, NodeId)> {
    let mut pairs = BTreeSet::new();
    let mut seen = vec![false; r.node_count()];
    for x in r.source_gammas() {
        seen.iter_mut().for_each(|s| *s = false);
        let mut stack: Vec<RepNode> = r
            .sources()
            .iter()
            .copied()
            .filter(|&s| r.gamma(s) == x)
            .collect();
        for s in &stack {
            seen[s.index()] = true;
        }
        while let Some(v) = stack.pop() {
            if r.is_target(v) {
                pairs.insert((x, r.gamma(v)));
            }
            for &e in r.out_edges(v) {
                let w = r.tgt(e);
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    stack.push(w);
                }
            }
        }
    }
    pairs.into_iter().collect()
}

/// Partitions the represented paths by source, target, or both. Groups are
/// sorted by key.
pub fn group(r: &Pmr, kind: GroupKind) -> GroupedPmr {
    let r: Cow<Pmr> = if r.is_trim() {
        Cow::Borrowed(r)
    } else {
        Cow::Owned(trim(r))
    };
    let all = NodePredicate::All;
    let groups = match kind {
        GroupKind::Source => r
            .source_gammas()
            .into_iter()
            .map(|x| Group {
                source: Some(x),
                target: None,
                pmr: select(&r, &NodePredicate::single(x), &all),
            })
            .collect(),
        GroupKind::Target => r
            .target_gammas()
            .into_iter()
            .map(|y| Group {
                source: None,
                target: Some(y),
                pmr: select(&r, &all, &NodePredicate::single(y)),
            })
            .collect(),
        GroupKind::Pair => endpoint_pairs(&r)
            .into_iter()
            .map(|(x, y)| Group {
                source: Some(x),
                target: Some(y),
                pmr: select(&r, &NodePredicate::single(x), &NodePredicate::single(y)),
            })
            .collect(),
    };
    GroupedPmr { kind, groups }
}
