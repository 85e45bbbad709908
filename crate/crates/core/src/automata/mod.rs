//! Automaton types: symbol-labelled NFAs, regex-labelled EFAs, their
//! underlying digraphs and the canonical string codec for complete
//! initially-connected DFAs.

mod canonical;
mod digraph;
mod efa;
mod nfa;

pub use canonical::CanonicalString;
pub use digraph::Digraph;
pub use efa::Efa;
pub use nfa::{Nfa, Trim};

/// Dense state index.
pub type State = usize;
