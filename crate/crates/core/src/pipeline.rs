//! Named heuristics and the trim, convert and renumber pipeline that runs
//! one of them on an automaton.

use std::fmt;
use std::str::FromStr;

use crate::automata::{Efa, Nfa, State, Trim};
use crate::bridges::BridgeLast;
use crate::cycles::{CycleDynamic, CycleStatic};
use crate::elimination::{convert, Variant};
use crate::error::{Error, Result};
use crate::ordering::{
    brute_force_optimal, DelgadoMorais, FixedOrder, OrderingStrategy, RandomOrder,
    DEFAULT_BRUTE_FORCE_CAP,
};
use crate::regex::Regex;
use crate::Size;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heuristic {
    /// `s`: increasing state number, the canonical string order.
    Canonical,
    /// `random`: a uniformly random order drawn from the seed.
    Random(u64),
    /// `dm`: Delgado–Morais weights.
    Dm,
    /// `cs`: static cycle counts.
    CycleStatic,
    /// `cd`: per-step label-weighted cycle counts.
    CycleDynamic,
    /// `hw`: bridge states last, DM elsewhere.
    BridgesLast,
    /// `bf`: the best order found by exhaustive search.
    BruteForce,
}

impl Heuristic {
    pub const NAMES: [&'static str; 7] = ["s", "random", "dm", "cs", "cd", "hw", "bf"];

    pub fn name(&self) -> &'static str {
        match self {
            Heuristic::Canonical => "s",
            Heuristic::Random(_) => "random",
            Heuristic::Dm => "dm",
            Heuristic::CycleStatic => "cs",
            Heuristic::CycleDynamic => "cd",
            Heuristic::BridgesLast => "hw",
            Heuristic::BruteForce => "bf",
        }
    }

    /// The ordering strategy for `efa`, or `None` for brute force.
    pub fn strategy(&self, efa: &Efa) -> Option<Box<dyn OrderingStrategy>> {
        Some(match *self {
            Heuristic::Canonical => Box::new(FixedOrder::ascending()),
            Heuristic::Random(seed) => Box::new(RandomOrder::new(seed)),
            Heuristic::Dm => Box::new(DelgadoMorais::default()),
            Heuristic::CycleStatic => Box::new(CycleStatic::new(efa)),
            Heuristic::CycleDynamic => Box::new(CycleDynamic::new()),
            Heuristic::BridgesLast => Box::new(BridgeLast::new(efa, DelgadoMorais::default())),
            Heuristic::BruteForce => return None,
        })
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    /// Parses a heuristic name; `random` takes its seed as `random:<seed>`
    /// and defaults to seed 0.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "s" => Heuristic::Canonical,
            "random" => Heuristic::Random(0),
            "dm" => Heuristic::Dm,
            "cs" => Heuristic::CycleStatic,
            "cd" => Heuristic::CycleDynamic,
            "hw" => Heuristic::BridgesLast,
            "bf" => Heuristic::BruteForce,
            other => match other.strip_prefix("random:").map(str::parse) {
                Some(Ok(seed)) => Heuristic::Random(seed),
                _ => return Err(Error::UnknownHeuristic(other.to_string())),
            },
        })
    }
}

/// Result of running a heuristic on an automaton.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub regex: Regex,
    pub size: Size,
    /// Eliminated states, numbered as in the input automaton.
    pub order: Vec<State>,
    /// A cycle heuristic hit the enumeration cap and used DM weights.
    pub fell_back: bool,
    /// The automaton accepts nothing; `regex` is `∅`.
    pub degenerate: bool,
}

/// Trims `nfa`, converts it with `heuristic` under `variant`, and maps the
/// elimination order back to the numbering of `nfa`.
pub fn run_heuristic(nfa: &Nfa, heuristic: &Heuristic, variant: Variant) -> Result<Outcome> {
    let (trimmed, old_to_new) = match nfa.trim() {
        Trim::Trimmed { nfa, old_to_new } => (nfa, old_to_new),
        Trim::EmptyLanguage => {
            return Ok(Outcome {
                regex: Regex::empty_set(),
                size: 0,
                order: Vec::new(),
                fell_back: false,
                degenerate: true,
            })
        }
    };
    let mut new_to_old = vec![0; trimmed.state_count()];
    for (old, new) in old_to_new.iter().enumerate() {
        if let Some(new) = new {
            new_to_old[*new] = old;
        }
    }
    let efa = Efa::from_nfa(&trimmed);
    let (regex, order, fell_back) = match heuristic.strategy(&efa) {
        Some(mut strategy) => {
            let result = convert(&efa, &mut strategy, variant)?;
            (result.regex, result.order, strategy.fell_back())
        }
        None => {
            let bf = brute_force_optimal(&efa, variant, DEFAULT_BRUTE_FORCE_CAP)?;
            let mut replay = FixedOrder::new(bf.best_order);
            let result = convert(&efa, &mut replay, variant)?;
            (result.regex, result.order, false)
        }
    };
    let order = order
        .into_iter()
        .map(|q| new_to_old.get(q).copied().ok_or(Error::UnknownState(q)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome {
        size: regex.alphabetic_size(),
        regex,
        order,
        fell_back,
        degenerate: false,
    })
}
