use std::collections::BTreeMap;

use super::ast::{Endpoints, Lang, Mode, Query};
use super::chain::{eval_chain, eval_proj1, ChainResult};
use crate::analysis::{enumerate, Count, PathIter};
use crate::automata::{Automaton, DEFAULT_STATE_CAP};
use crate::error::{Error, Result};
use crate::graph::{GraphDb, NodeId, NodePredicate, Path};
use crate::pmr::{
    group, product_select_trim, radix_shortest_filter, select, shortest_filter,
    simple_trail_filter, GroupedPmr, PathMode, Pmr, DEFAULT_PATH_CAP,
};

/// Evaluation settings.
#[derive(Debug, Clone)]
pub struct EvalOptions {
    /// State cap for compiling regular expressions.
    pub det_cap: usize,
    /// Path cap for the simple and trail filters.
    pub path_cap: usize,
    /// Accept ambiguous automata. Path sets stay right but multiplicities
    /// do not.
    pub allow_ambiguous: bool,
    /// Automata referenced as `@name`.
    pub automata: BTreeMap<String, Automaton>,
    /// Let endpoint names missing from the graph select nothing instead of
    /// failing.
    pub missing_nodes_match_nothing: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            det_cap: DEFAULT_STATE_CAP,
            path_cap: DEFAULT_PATH_CAP,
            allow_ambiguous: false,
            automata: BTreeMap::new(),
            missing_nodes_match_nothing: false,
        }
    }
}

impl EvalOptions {
    pub(crate) fn compile(&self, lang: &Lang) -> Result<Automaton> {
        let a = match lang {
            Lang::Regex(r) => Automaton::from_regex(r, self.det_cap)?,
            Lang::Named(n) => self
                .automata
                .get(n)
                .cloned()
                .ok_or_else(|| Error::Unknown {
                    kind: "automaton",
                    name: n.clone(),
                })?,
        };
        if !self.allow_ambiguous && !a.kind().is_unambiguous() {
            return Err(Error::Ambiguous);
        }
        Ok(a)
    }
}

pub(crate) fn resolve(g: &GraphDb, ends: &Endpoints, opts: &EvalOptions) -> Result<NodePredicate> {
    match ends {
        Endpoints::All => Ok(NodePredicate::All),
        Endpoints::Nodes(names) if opts.missing_nodes_match_nothing => {
            Ok(NodePredicate::of(names.iter().filter_map(|n| g.node(n))))
        }
        Endpoints::Nodes(names) => names
            .iter()
            .map(|n| {
                g.node(n).ok_or_else(|| Error::Unknown {
                    kind: "node",
                    name: n.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(NodePredicate::of),
    }
}

pub(crate) fn apply_mode(r: &Pmr, g: &GraphDb, m: Mode, path_cap: usize) -> Result<Pmr> {
    Ok(match m {
        Mode::Shortest => shortest_filter(r),
        Mode::Radix => radix_shortest_filter(r, g),
        Mode::Simple => simple_trail_filter(r, PathMode::Simple, path_cap)?,
        Mode::Trail => simple_trail_filter(r, PathMode::Trail, path_cap)?,
    })
}

/// Evaluates a path query to a trim PMR. Grouping and chains are rejected
/// here; see [`run`].
pub fn eval(g: &GraphDb, q: &Query, opts: &EvalOptions) -> Result<Pmr> {
    match q {
        Query::Lang(l) => {
            let a = opts.compile(l)?;
            product_select_trim(g, &a, &NodePredicate::All, &NodePredicate::All, true)
        }
        Query::Select { src, tgt, child } => {
            let (u, v) = (resolve(g, src, opts)?, resolve(g, tgt, opts)?);
            match child.as_ref() {
                Query::Lang(l) => product_select_trim(g, &opts.compile(l)?, &u, &v, true),
                other => Ok(select(&eval(g, other, opts)?, &u, &v)),
            }
        }
        Query::Mode(m, child) => apply_mode(&eval(g, child, opts)?, g, *m, opts.path_cap),
        Query::Union(parts) => {
            let rs = parts
                .iter()
                .map(|p| eval(g, p, opts))
                .collect::<Result<Vec<_>>>()?;
            Ok(Pmr::union_all(g.graph_ref(), &rs))
        }
        Query::Group(..) => Err(Error::Unsupported(
            "group is only allowed at the top level".into(),
        )),
        Query::Chain(_) | Query::Proj1(_) => Err(Error::Unsupported(
            "chains are only allowed at the top level".into(),
        )),
    }
}

/// Evaluates `group(kind, q)`.
pub fn eval_grouped(g: &GraphDb, q: &Query, opts: &EvalOptions) -> Result<GroupedPmr> {
    match q {
        Query::Group(kind, child) => Ok(group(&eval(g, child, opts)?, *kind)),
        _ => Err(Error::Unsupported("expected a group query".into())),
    }
}

/// Result of any top-level query.
#[derive(Debug, Clone)]
pub enum Answer {
    Paths(Pmr),
    Grouped(GroupedPmr),
    Chain(ChainResult),
    Proj1(BTreeMap<NodeId, Count>),
}

pub fn run(g: &GraphDb, q: &Query, opts: &EvalOptions) -> Result<Answer> {
    match q {
        Query::Group(..) => eval_grouped(g, q, opts).map(Answer::Grouped),
        Query::Chain(atoms) => eval_chain(g, atoms, opts).map(Answer::Chain),
        Query::Proj1(atoms) => eval_proj1(g, atoms, opts).map(Answer::Proj1),
        _ => eval(g, q, opts).map(Answer::Paths),
    }
}

/// One row of a path table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Row {
    pub src: NodeId,
    pub tgt: NodeId,
    pub path: Path,
}

impl Row {
    /// Tab-separated `src  tgt  v0 e1 v1 …`.
    pub fn render(&self, g: &GraphDb) -> String {
        format!(
            "{}\t{}\t{}",
            g.node_name(self.src),
            g.node_name(self.tgt),
            self.path.render(g)
        )
    }
}

/// Streams `(src, tgt, path)` rows of a PMR with multiplicity.
pub fn tab_enumerate(r: &Pmr) -> impl Iterator<Item = Row> + '_ {
    enumerate(r).map(|path| Row {
        src: path.source(),
        tgt: path.target(),
        path,
    })
}

/// Per-group row streams of a grouped result, in group order.
pub fn tab_enumerate_grouped(
    gr: &GroupedPmr,
) -> impl Iterator<Item = (Option<NodeId>, Option<NodeId>, PathIter<'_>)> {
    gr.groups
        .iter()
        .map(|grp| (grp.source, grp.target, enumerate(&grp.pmr)))
}
