//! Uniform random complete initially-connected DFAs.
//!
//! A transition table is drawn uniformly among all `n^(n·k)` tables with
//! initial state 0 and redrawn until every state is reachable. Each
//! isomorphism class of ICDFAs contains exactly `(n−1)!` such tables (an
//! automorphism fixing the initial state fixes every reachable state), so
//! the canonical string of an accepted draw is uniform over ICDFAs.
//!
//! Every sample has its own generator, a ChaCha8 stream selected by the
//! sample index under the run seed, so samples can be drawn in any order
//! or concurrently with identical results.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::automata::{CanonicalString, Nfa, State};
use crate::error::{Error, Result};

/// Identifier written to experiment metadata.
pub const RNG_ID: &str = "chacha8(seed_from_u64(seed)).set_stream(index)";

pub const MAX_ATTEMPTS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum FinalMode {
    /// A uniformly random non-empty subset of states.
    #[default]
    UniformNonempty,
    /// Each state final with probability 1/2; the set may be empty.
    EachStateHalf,
}

impl FinalMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FinalMode::UniformNonempty => "uniform-nonempty",
            FinalMode::EachStateHalf => "each-state-half",
        }
    }
}

impl fmt::Display for FinalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FinalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-nonempty" => Ok(FinalMode::UniformNonempty),
            "each-state-half" => Ok(FinalMode::EachStateHalf),
            other => Err(Error::InvalidSampleSpec(format!(
                "unknown final mode `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub n: usize,
    pub k: usize,
    pub count: usize,
    pub seed: u64,
    pub final_mode: FinalMode,
}

impl SampleSpec {
    pub fn new(n: usize, k: usize, count: usize, seed: u64) -> Result<Self> {
        let spec = SampleSpec {
            n,
            k,
            count,
            seed,
            final_mode: FinalMode::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_final_mode(mut self, mode: FinalMode) -> Self {
        self.final_mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 || self.count == 0 {
            return Err(Error::InvalidSampleSpec(format!(
                "n, k and count must be positive (n={}, k={}, count={})",
                self.n, self.k, self.count
            )));
        }
        Ok(())
    }

    /// Header line for sample files.
    pub fn header(&self) -> String {
        format!(
            "# n={} k={} count={} seed={} final_mode={} rng={}",
            self.n, self.k, self.count, self.seed, self.final_mode, RNG_ID
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub index: usize,
    pub canonical: CanonicalString,
    /// Tables drawn before an initially connected one came up.
    pub attempts: u64,
}

impl Sample {
    pub fn dfa(&self) -> Nfa {
        self.canonical.to_nfa()
    }
}

pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Draws sample `index` of `spec`.
pub fn sample_icdfa(spec: &SampleSpec, index: usize) -> Result<Sample> {
    spec.validate()?;
    let mut rng = sample_rng(spec.seed, index);
    let (n, k) = (spec.n, spec.k);
    let mut table = vec![0; n * k];
    for attempt in 1..=MAX_ATTEMPTS {
        table.iter_mut().for_each(|t| *t = rng.gen_range(0..n));
        if let Some(digits) = canonical_digits(&table, n, k) {
            let finals = draw_finals(&mut rng, n, spec.final_mode);
            let canonical = CanonicalString::new(n, k, digits, finals)?;
            return Ok(Sample {
                index,
                canonical,
                attempts: attempt,
            });
        }
    }
    Err(Error::SamplerExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// All samples of `spec`, in index order.
pub fn samples(spec: &SampleSpec) -> Result<Vec<Sample>> {
    use rayon::prelude::*;
    (0..spec.count)
        .into_par_iter()
        .map(|i| sample_icdfa(spec, i))
        .collect()
}

/// Canonical digits of the table when every state is reachable from 0.
fn canonical_digits(table: &[State], n: usize, k: usize) -> Option<Vec<State>> {
    let mut new_of = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    new_of[0] = 0;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for &t in &table[q * k..(q + 1) * k] {
            if new_of[t] == usize::MAX {
                new_of[t] = order.len();
                order.push(t);
            }
        }
    }
    if order.len() != n {
        return None;
    }
    Some(
        order
            .iter()
            .flat_map(|&q| table[q * k..(q + 1) * k].iter().map(|&t| new_of[t]))
            .collect(),
    )
}

fn draw_finals(rng: &mut ChaCha8Rng, n: usize, mode: FinalMode) -> Vec<State> {
    loop {
        let finals: Vec<State> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !finals.is_empty() || mode == FinalMode::EachStateHalf {
            return finals;
        }
    }
}
