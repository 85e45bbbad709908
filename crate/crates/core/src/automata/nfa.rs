use std::collections::{BTreeSet, VecDeque};

use super::{Digraph, State};
use crate::error::{Error, Result};
use crate::regex::Letter;

/// Nondeterministic finite automaton over the alphabet `0..alphabet`, with
/// states `0..states`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    states: usize,
    alphabet: usize,
    transitions: BTreeSet<(State, Letter, State)>,
    initial: State,
    finals: BTreeSet<State>,
}

/// Outcome of [`Nfa::trim`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trim {
    /// The useful part of the automaton. `old_to_new[q]` is the new number of
    /// state `q`, or `None` when `q` was removed.
    Trimmed {
        nfa: Nfa,
        old_to_new: Vec<Option<State>>,
    },
    /// No final state is reachable; the language is empty.
    EmptyLanguage,
}

impl Nfa {
    pub fn new<T, F>(
        states: usize,
        alphabet: usize,
        transitions: T,
        initial: State,
        finals: F,
    ) -> Result<Self>
    where
        T: IntoIterator<Item = (State, Letter, State)>,
        F: IntoIterator<Item = State>,
    {
        if initial >= states {
            return Err(Error::InvalidAutomaton(format!(
                "initial state {initial} out of range for {states} states"
            )));
        }
        let transitions: BTreeSet<_> = transitions.into_iter().collect();
        if let Some(&(p, a, q)) = transitions
            .iter()
            .find(|&&(p, a, q)| p >= states || q >= states || a as usize >= alphabet)
        {
            return Err(Error::InvalidAutomaton(format!(
                "transition ({p}, {a}, {q}) out of range"
            )));
        }
        let finals: BTreeSet<_> = finals.into_iter().collect();
        if let Some(f) = finals.iter().find(|&&f| f >= states) {
            return Err(Error::InvalidAutomaton(format!(
                "final state {f} out of range"
            )));
        }
        Ok(Nfa {
            states,
            alphabet,
            transitions,
            initial,
            finals,
        })
    }

    /// Complete DFA from a row-major transition table: `table[q * alphabet + a]`
    /// is the target of `q` on letter `a`. The initial state is 0.
    pub fn complete_dfa<F>(alphabet: usize, table: &[State], finals: F) -> Result<Self>
    where
        F: IntoIterator<Item = State>,
    {
        if alphabet == 0 || table.is_empty() || !table.len().is_multiple_of(alphabet) {
            return Err(Error::InvalidAutomaton(format!(
                "table of length {} does not fit alphabet size {alphabet}",
                table.len()
            )));
        }
        let states = table.len() / alphabet;
        let transitions = table
            .iter()
            .enumerate()
            .map(|(i, &t)| (i / alphabet, (i % alphabet) as Letter, t));
        Nfa::new(states, alphabet, transitions, 0, finals)
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<State> {
        &self.finals
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals.contains(&q)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, Letter, State)> + '_ {
        self.transitions.iter().copied()
    }

    /// Targets of `q` on `letter`.
    pub fn targets(&self, q: State, letter: Letter) -> impl Iterator<Item = State> + '_ {
        self.transitions
            .range((q, letter, 0)..=(q, letter, State::MAX))
            .map(|&(_, _, t)| t)
    }

    /// The transition target when the automaton is deterministic and defined on `(q, letter)`.
    pub fn target(&self, q: State, letter: Letter) -> Option<State> {
        self.targets(q, letter).next()
    }

    pub fn is_deterministic(&self) -> bool {
        self.transitions
            .iter()
            .zip(self.transitions.iter().skip(1))
            .all(|(x, y)| (x.0, x.1) != (y.0, y.1))
    }

    pub fn is_complete_dfa(&self) -> bool {
        self.is_deterministic() && self.transitions.len() == self.states * self.alphabet
    }

    pub fn underlying_digraph(&self) -> Digraph {
        Digraph::from_arcs(
            self.states,
            self.transitions.iter().map(|&(p, _, q)| (p, q)),
        )
    }

    pub fn is_initially_connected(&self) -> bool {
        self.underlying_digraph()
            .reachable_from(self.initial, None)
            .iter()
            .all(|&r| r)
    }

    /// Language membership by subset simulation.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut current: BTreeSet<State> = BTreeSet::from([self.initial]);
        for &a in word {
            current = current.iter().flat_map(|&q| self.targets(q, a)).collect();
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|q| self.finals.contains(q))
    }

    /// Membership for a deterministic automaton by following single transitions.
    pub fn dfa_accepts(&self, word: &[Letter]) -> Result<bool> {
        if !self.is_deterministic() {
            return Err(Error::InvalidAutomaton(
                "automaton is not deterministic".into(),
            ));
        }
        let mut q = self.initial;
        for &a in word {
            match self.target(q, a) {
                Some(t) => q = t,
                None => return Ok(false),
            }
        }
        Ok(self.finals.contains(&q))
    }

    /// Removes inaccessible and useless states, renumbering survivors in their
    /// original relative order.
    pub fn trim(&self) -> Trim {
        let g = self.underlying_digraph();
        let forward = g.reachable_from(self.initial, None);
        let backward = g.reverse().reachable_from_set(self.finals.iter().copied());
        if !backward[self.initial] {
            return Trim::EmptyLanguage;
        }
        let mut old_to_new = vec![None; self.states];
        let mut next = 0;
        for q in 0..self.states {
            if forward[q] && backward[q] {
                old_to_new[q] = Some(next);
                next += 1;
            }
        }
        let transitions = self
            .transitions
            .iter()
            .filter_map(|&(p, a, q)| Some((old_to_new[p]?, a, old_to_new[q]?)));
        let finals = self.finals.iter().filter_map(|&f| old_to_new[f]);
        let nfa = Nfa::new(
            next,
            self.alphabet,
            transitions,
            old_to_new[self.initial].unwrap(),
            finals,
        )
        .expect("trimmed automaton is well formed");
        Trim::Trimmed { nfa, old_to_new }
    }

    /// Renumbers states: state `q` becomes `perm[q]`. `perm` must be a permutation.
    pub fn relabel(&self, perm: &[State]) -> Result<Nfa> {
        let mut seen = vec![false; self.states];
        if perm.len() != self.states
            || perm
                .iter()
                .any(|&p| p >= self.states || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidAutomaton(
                "relabeling is not a permutation".into(),
            ));
        }
        Nfa::new(
            self.states,
            self.alphabet,
            self.transitions
                .iter()
                .map(|&(p, a, q)| (perm[p], a, perm[q])),
            perm[self.initial],
            self.finals.iter().map(|&f| perm[f]),
        )
    }

    /// Breadth-first order of the states reachable from the initial state,
    /// visiting successors by increasing letter and then target number.
    pub(crate) fn bfs_order(&self) -> Vec<State> {
        let mut seen = vec![false; self.states];
        let mut order = Vec::with_capacity(self.states);
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &(_, _, t) in self
                .transitions
                .range((q, 0, 0)..=(q, Letter::MAX, State::MAX))
            {
                if !std::mem::replace(&mut seen[t], true) {
                    queue.push_back(t);
                }
            }
        }
        order
    }
}
