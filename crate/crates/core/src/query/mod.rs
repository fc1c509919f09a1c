//! Query language, evaluation plans and tabular output.

mod ast;
mod chain;
mod eval;
mod parse;

pub use ast::{Atom, Endpoints, Lang, Mode, Query};
pub use chain::{
    chain_count, chain_tab_enumerate, eval_chain, eval_proj1, ChainResult, ChainRow, ChainRows,
};
pub use eval::{
    eval, eval_grouped, run, tab_enumerate, tab_enumerate_grouped, Answer, EvalOptions, Row,
};
