use std::borrow::Cow;
use std::collections::HashMap;

use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::RngCore;

use super::count::{counts_to_target, Count};
use crate::error::{Error, Result};
use crate::graph::Path;
use crate::pmr::{trim, Pmr, PmrBuilder, RepNode};

/// The represented paths of length exactly `n`, as a trim PMR.
///
/// This is the product of `r` with the automaton accepting every word of
/// length `n`: node `(v, i)` means "at `v` after `i` steps". Only the part
/// reachable from `S × {0}` is built.
pub fn paths_of_length(r: &Pmr, n: usize) -> Pmr {
    let mut b = PmrBuilder::new(r.graph_ref());
    let mut index: HashMap<(RepNode, usize), RepNode> = HashMap::new();
    let mut layer: Vec<RepNode> = Vec::new();
    for &s in r.sources() {
        let x = b.add_node(r.gamma(s));
        b.set_source(x);
        index.insert((s, 0), x);
        layer.push(s);
    }
    for i in 0..n {
        let mut next = Vec::new();
        for &v in &layer {
            let from = index[&(v, i)];
            for &e in r.out_edges(v) {
                let w = r.tgt(e);
                let to = *index.entry((w, i + 1)).or_insert_with(|| {
                    next.push(w);
                    b.add_node(r.gamma(w))
                });
                b.add_edge(from, to, r.edge_gamma(e));
            }
        }
        layer = next;
    }
    for &v in &layer {
        if r.is_target(v) {
            b.set_target(index[&(v, n)]);
        }
    }
    trim(&b.build())
}

/// Draws one represented path uniformly at random, counting multiplicity.
///
/// Without `length` the multiset must be finite. With `length` only paths
/// of that length are considered. Returns `None` when there is nothing to
/// draw.
///
/// A single number `k < N` is drawn and the `k`-th path in depth-first
/// order is walked to, using the per-node path counts; every path has
/// probability exactly `1/N`.
pub fn sample_uniform<R: RngCore + ?Sized>(
    r: &Pmr,
    length: Option<usize>,
    rng: &mut R,
) -> Result<Option<Path>> {
    let r: Cow<Pmr> = match length {
        Some(n) => Cow::Owned(paths_of_length(r, n)),
        None if r.is_trim() => Cow::Borrowed(r),
        None => Cow::Owned(trim(r)),
    };
    let cnt: Vec<BigUint> = counts_to_target(&r)
        .into_iter()
        .map(|c| match c {
            Count::Finite(n) => Ok(n),
            Count::Infinite => Err(Error::InfiniteMultiset),
        })
        .collect::<Result<_>>()?;
    let total: BigUint = r.sources().iter().map(|s| &cnt[s.index()]).sum();
    if total.is_zero() {
        return Ok(None);
    }
    let mut k = rng.gen_biguint_below(&total);

    let mut at = None;
    for &s in r.sources() {
        if k < cnt[s.index()] {
            at = Some(s);
            break;
        }
        k -= &cnt[s.index()];
    }
    let start = at.expect("k is below the total");
    let mut v = start;
    let mut edges = Vec::new();
    loop {
        if r.is_target(v) {
            if k.is_zero() {
                break;
            }
            k -= 1u32;
        }
        let mut moved = false;
        for &e in r.out_edges(v) {
            let w = r.tgt(e);
            if k < cnt[w.index()] {
                edges.push(e);
                v = w;
                moved = true;
                break;
            }
            k -= &cnt[w.index()];
        }
        assert!(moved, "path counts are consistent");
    }
    Ok(Some(r.image(start, &edges)))
}
