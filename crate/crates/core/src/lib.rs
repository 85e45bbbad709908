//! Conversion of finite automata to regular expressions by state
//! elimination, with elimination-ordering heuristics and an experiment
//! harness over uniformly random complete initially-connected DFAs.
//!
//! ```
//! use stelim::{run_heuristic, CanonicalString, Heuristic, Variant};
//!
//! let dfa: CanonicalString = "4 2 12312312 F=3".parse().unwrap();
//! let out = run_heuristic(&dfa.to_nfa(), &Heuristic::Dm, Variant::WithoutNormalization).unwrap();
//! assert_eq!(out.size, 12);
//! ```

pub mod automata;
pub mod bridges;
pub mod cycles;
pub mod elimination;
pub mod error;
pub mod harness;
pub mod ordering;
pub mod pipeline;
pub mod regex;
pub mod sampler;
pub mod scalar;

/// Alphabetic sizes and weights. Saturates at `u128::MAX`.
pub type Size = u128;
/// Unbounded alphabetic sizes, see [`regex::Regex::alphabetic_size_as`].
pub type ExactSize = num_bigint::BigUint;
/// Aggregate statistics over sizes.
pub type Stat = f64;

pub use automata::{CanonicalString, Digraph, Efa, Nfa, State, Trim};
pub use elimination::{convert, ConversionResult, Variant};
pub use error::{Error, Result};
pub use ordering::{LoopDegree, OrderingStrategy};
pub use pipeline::{run_heuristic, Heuristic, Outcome};
pub use regex::{Letter, Regex};
pub use sampler::{FinalMode, SampleSpec};
