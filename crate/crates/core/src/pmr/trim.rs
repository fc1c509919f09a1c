use super::{NodePredicate, Pmr, RepNode};

fn mark(r: &Pmr, starts: impl Iterator<Item = RepNode>, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; r.node_count()];
    let mut stack: Vec<RepNode> = Vec::new();
    for v in starts {
        if !seen[v.index()] {
            seen[v.index()] = true;
            stack.push(v);
        }
    }
    while let Some(v) = stack.pop() {
        let next = if forward {
            r.out_edges(v)
        } else {
            r.in_edges(v)
        };
        for &e in next {
            let w = if forward { r.tgt(e) } else { r.src(e) };
            if !seen[w.index()] {
                seen[w.index()] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Keeps exactly the nodes and edges that lie on some source-to-target
/// path. Relative order of the survivors is preserved.
pub fn trim(r: &Pmr) -> Pmr {
    select(r, &NodePredicate::All, &NodePredicate::All)
}

/// Restricts sources to those mapped into `u` and targets to those mapped
/// into `v`, then trims.
pub fn select(r: &Pmr, u: &NodePredicate, v: &NodePredicate) -> Pmr {
    let src_ok = |x: RepNode| r.is_source(x) && u.contains(r.gamma(x));
    let tgt_ok = |x: RepNode| r.is_target(x) && v.contains(r.gamma(x));
    let fwd = mark(r, r.sources().iter().copied().filter(|&x| src_ok(x)), true);
    let bwd = mark(r, r.targets().iter().copied().filter(|&x| tgt_ok(x)), false);
    let keep_node: Vec<bool> = fwd.iter().zip(&bwd).map(|(&f, &b)| f && b).collect();
    let keep_edge: Vec<bool> = r
        .edges()
        .map(|e| fwd[r.src(e).index()] && bwd[r.tgt(e).index()])
        .collect();
    r.restrict(&keep_node, &keep_edge, src_ok, tgt_ok)
}
