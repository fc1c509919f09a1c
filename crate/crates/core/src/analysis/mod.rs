//! Operations over PMRs: counting, sampling, enumeration, equivalence and
//! reduction.

mod bisim;
mod count;
mod enumerate;
mod equivalence;
mod nfa;
mod projection;
mod sample;
mod set_equiv;

pub use bisim::bisim_reduce;
pub use count::{count_by_source, count_paths, counts_to_target, Count, PathCountAnnotation};
pub use enumerate::{enumerate, enumerate_bounded, enumerate_by_length, PathIter};
pub use equivalence::{multiset_equivalent, path_equivalent};
pub use nfa::{nfa_to_pmr, pmr_to_nfa};
pub use projection::graph_projection;
pub use sample::{paths_of_length, sample_uniform};
pub use set_equiv::{
    language_equivalent_dfa, language_equivalent_ufa, set_equivalent, SetStrategy,
};
