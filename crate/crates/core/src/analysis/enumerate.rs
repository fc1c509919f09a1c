use std::borrow::Cow;

use super::sample::paths_of_length;
use crate::graph::Path;
use crate::pmr::{trim, Pmr, RepEdge, RepNode};

/// Depth-first stream of the represented paths, with multiplicity.
///
/// On a trim PMR every descent reaches a target, so the work between two
/// emitted paths is bounded by the length of the path just left plus the
/// one being emitted. Order follows the order of sources and adjacency
/// lists. With `max_len` the stream stops descending at that length, which
/// makes it finite even on cyclic PMRs.
#[derive(Debug)]
pub struct PathIter<'a> {
    r: Cow<'a, Pmr>,
    max_len: Option<usize>,
    next_source: usize,
    stack: Vec<(RepNode, usize)>,
    edges: Vec<RepEdge>,
}

impl<'a> PathIter<'a> {
    pub fn new(r: &'a Pmr, max_len: Option<usize>) -> Self {
        let r = if r.is_trim() {
            Cow::Borrowed(r)
        } else {
            Cow::Owned(trim(r))
        };
        PathIter {
            r,
            max_len,
            next_source: 0,
            stack: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn emit(&self) -> Path {
        self.r.image(self.stack[0].0, &self.edges)
    }
}

impl Iterator for PathIter<'_> {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        loop {
            let Some(&mut (v, ref mut i)) = self.stack.last_mut() else {
                let s = *self.r.sources().get(self.next_source)?;
                self.next_source += 1;
                self.stack.push((s, 0));
                if self.r.is_target(s) {
                    return Some(self.emit());
                }
                continue;
            };
            let out = self.r.out_edges(v);
            let room = self.max_len.is_none_or(|m| self.edges.len() < m);
            if *i < out.len() && room {
                let e = out[*i];
                *i += 1;
                let w = self.r.tgt(e);
                self.stack.push((w, 0));
                self.edges.push(e);
                if self.r.is_target(w) {
                    return Some(self.emit());
                }
            } else {
                self.stack.pop();
                self.edges.pop();
            }
        }
    }
}

/// Streams the represented paths of a trim PMR.
pub fn enumerate(r: &Pmr) -> PathIter<'_> {
    PathIter::new(r, None)
}

/// Streams the represented paths of length at most `max_len`.
pub fn enumerate_bounded(r: &Pmr, max_len: usize) -> PathIter<'_> {
    PathIter::new(r, Some(max_len))
}

/// Streams represented paths shortest first: all paths of length 0, then
/// 1, and so on. Works for infinite multisets; stops after `max_len` if
/// given, and on acyclic PMRs once no longer path can exist.
pub fn enumerate_by_length(r: &Pmr, max_len: Option<usize>) -> impl Iterator<Item = Path> + '_ {
    let limit = match (max_len, r.is_acyclic()) {
        (Some(m), _) => Some(m),
        (None, true) => Some(r.node_count()),
        (None, false) => None,
    };
    (0..)
        .take_while(move |&n| limit.is_none_or(|m| n <= m))
        .flat_map(move |n| {
            let layer = paths_of_length(r, n);
            PathIter::new(&layer, None).collect::<Vec<_>>().into_iter()
        })
}
