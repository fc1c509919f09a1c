//! Text format for automata:
//!
//! ```text
//! state 1 initial
//! state 2
//! state 3 final
//! trans 1 Transfer 2
//! trans 2 Transfer 3
//! ```

use std::collections::HashMap;

use super::{Automaton, StateId};
use crate::error::{Error, Result};

pub(super) fn parse(text: &str) -> Result<Automaton> {
    let mut b = Automaton::builder();
    let mut declared: HashMap<String, StateId> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["state", id, flags @ ..] => {
                if declared.contains_key(*id) {
                    return Err(Error::format(line_no, format!("duplicate state `{id}`")));
                }
                let q = b.add_state(id);
                declared.insert((*id).to_owned(), q);
                for f in flags {
                    match *f {
                        "initial" => b.set_initial(q),
                        "final" => b.set_final(q),
                        other => {
                            return Err(Error::format(
                                line_no,
                                format!("unknown state flag `{other}`"),
                            ))
                        }
                    }
                }
            }
            ["trans", from, label, to] => {
                let lookup = |name: &str| {
                    declared
                        .get(name)
                        .copied()
                        .ok_or_else(|| Error::format(line_no, format!("undeclared state `{name}`")))
                };
                let (p, q) = (lookup(from)?, lookup(to)?);
                b.add_transition(p, label, q);
            }
            ["state"] => {
                return Err(Error::format(
                    line_no,
                    "expected `state <id> [initial] [final]`",
                ))
            }
            ["trans", ..] => {
                return Err(Error::format(
                    line_no,
                    "expected `trans <from> <label> <to>`",
                ))
            }
            [kw, ..] => {
                return Err(Error::format(
                    line_no,
                    format!("unknown declaration `{kw}`"),
                ))
            }
        }
    }
    Ok(b.build())
}

pub(super) fn write(a: &Automaton) -> String {
    let mut s = String::new();
    for q in a.states() {
        s.push_str("state ");
        s.push_str(a.state_name(q));
        if a.is_initial(q) {
            s.push_str(" initial");
        }
        if a.is_final(q) {
            s.push_str(" final");
        }
        s.push('\n');
    }
    for (p, sym, q) in a.transition_triples() {
        s.push_str(&format!(
            "trans {} {} {}\n",
            a.state_name(p),
            a.symbol_name(sym),
            a.state_name(q)
        ));
    }
    s
}
