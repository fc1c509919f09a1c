use super::{Automaton, Regex};

/// Position automaton of a regular expression.
///
/// One state per label occurrence plus an initial state `0`. A transition
/// into position `p` is always labeled with the label at `p`, so the result
/// is ε-free by construction.
pub fn glushkov(r: &Regex) -> Automaton {
    let mut labels: Vec<&str> = Vec::new();
    let mut follow: Vec<Vec<usize>> = Vec::new();
    let info = walk(r, &mut labels, &mut follow);

    let mut b = Automaton::builder();
    let init = b.add_state("0");
    let pos: Vec<_> = (0..labels.len())
        .map(|i| b.add_state(&(i + 1).to_string()))
        .collect();
    b.set_initial(init);
    if info.nullable {
        b.set_final(init);
    }
    for &p in &info.last {
        b.set_final(pos[p]);
    }
    for &p in &info.first {
        b.add_transition(init, labels[p], pos[p]);
    }
    for (p, succ) in follow.iter().enumerate() {
        for &q in succ {
            b.add_transition(pos[p], labels[q], pos[q]);
        }
    }
    b.build()
}

struct Info {
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
}

fn walk<'a>(r: &'a Regex, labels: &mut Vec<&'a str>, follow: &mut Vec<Vec<usize>>) -> Info {
    match r {
        Regex::Epsilon => Info {
            nullable: true,
            first: vec![],
            last: vec![],
        },
        Regex::Label(a) => {
            let p = labels.len();
            labels.push(a);
            follow.push(Vec::new());
            Info {
                nullable: false,
                first: vec![p],
                last: vec![p],
            }
        }
        Regex::Concat(x, y) => {
            let a = walk(x, labels, follow);
            let b = walk(y, labels, follow);
            link(follow, &a.last, &b.first);
            let mut first = a.first;
            if a.nullable {
                first.extend(&b.first);
            }
            let mut last = b.last;
            if b.nullable {
                last.extend(&a.last);
            }
            Info {
                nullable: a.nullable && b.nullable,
                first,
                last,
            }
        }
        Regex::Union(x, y) => {
            let a = walk(x, labels, follow);
            let b = walk(y, labels, follow);
            Info {
                nullable: a.nullable || b.nullable,
                first: [a.first, b.first].concat(),
                last: [a.last, b.last].concat(),
            }
        }
        Regex::Star(x) => {
            let a = walk(x, labels, follow);
            link(follow, &a.last, &a.first);
            Info {
                nullable: true,
                ..a
            }
        }
        Regex::Plus(x) => {
            let a = walk(x, labels, follow);
            link(follow, &a.last, &a.first);
            a
        }
        Regex::Optional(x) => {
            let a = walk(x, labels, follow);
            Info {
                nullable: true,
                ..a
            }
        }
    }
}

fn link(follow: &mut [Vec<usize>], from: &[usize], to: &[usize]) {
    for &p in from {
        for &q in to {
            if !follow[p].contains(&q) {
                follow[p].push(q);
            }
        }
    }
}
