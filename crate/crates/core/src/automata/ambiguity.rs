use super::{Automaton, StateId};

/// True iff no word has two distinct accepting runs.
///
/// Builds the self-product on state pairs with synchronized symbols and
/// keeps the pairs that are reachable from `I × I` and co-reachable to
/// `F × F`. Two different accepting runs on one word must pass through a
/// pair `(p, q)` with `p ≠ q`, and any such surviving pair yields two runs.
pub fn check_unambiguous(a: &Automaton) -> bool {
    let n = a.num_states();
    let idx = |p: StateId, q: StateId| p.index() * n + q.index();

    let mut fwd = vec![false; n * n];
    let mut stack = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &p in a.initial() {
        for &q in a.initial() {
            if !fwd[idx(p, q)] {
                fwd[idx(p, q)] = true;
                stack.push((p, q));
            }
        }
    }
    while let Some((p, q)) = stack.pop() {
        let (tp, tq) = (a.transitions(p), a.transitions(q));
        // Both rows are sorted by symbol: merge-join them.
        let (mut i, mut j) = (0, 0);
        while i < tp.len() && j < tq.len() {
            let (sa, sb) = (tp[i].0, tq[j].0);
            if sa < sb {
                i += 1;
            } else if sb < sa {
                j += 1;
            } else {
                let i_end = i + tp[i..].iter().take_while(|t| t.0 == sa).count();
                let j_end = j + tq[j..].iter().take_while(|t| t.0 == sa).count();
                for &(_, p2) in &tp[i..i_end] {
                    for &(_, q2) in &tq[j..j_end] {
                        let k = idx(p2, q2);
                        edges.push((idx(p, q), k));
                        if !fwd[k] {
                            fwd[k] = true;
                            stack.push((p2, q2));
                        }
                    }
                }
                i = i_end;
                j = j_end;
            }
        }
    }

    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for &(u, v) in &edges {
        preds[v].push(u);
    }
    let mut bwd = vec![false; n * n];
    let mut stack: Vec<usize> = Vec::new();
    for p in a.finals() {
        for q in a.finals() {
            let k = idx(p, q);
            if fwd[k] && !bwd[k] {
                bwd[k] = true;
                stack.push(k);
            }
        }
    }
    while let Some(k) = stack.pop() {
        for &u in &preds[k] {
            if !bwd[u] {
                bwd[u] = true;
                stack.push(u);
            }
        }
    }
    !(0..n * n).any(|k| bwd[k] && k / n != k % n)
}
