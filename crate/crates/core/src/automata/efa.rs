use std::collections::BTreeSet;

use super::{Digraph, Nfa, State};
use crate::error::{Error, Result};
use crate::regex::Regex;

/// Extended finite automaton: transitions carry regular expressions.
///
/// State numbers are stable slots. Eliminating a state marks its slot dead
/// and added states take fresh slots, so an elimination order can always be
/// reported in the numbering of the automaton it started from. A missing
/// label means `∅`; stored labels are never `∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Efa {
    alphabet: usize,
    initial: State,
    finals: BTreeSet<State>,
    alive: Vec<bool>,
    labels: Vec<Vec<Option<Regex>>>,
}

impl Efa {
    pub fn new(states: usize, alphabet: usize, initial: State) -> Result<Self> {
        if initial >= states {
            return Err(Error::UnknownState(initial));
        }
        Ok(Efa {
            alphabet,
            initial,
            finals: BTreeSet::new(),
            alive: vec![true; states],
            labels: vec![vec![None; states]; states],
        })
    }

    /// Converts an automaton by merging parallel transitions into a union
    /// of their symbols, in increasing letter order.
    pub fn from_nfa(nfa: &Nfa) -> Efa {
        let n = nfa.state_count();
        let mut efa = Efa::new(n, nfa.alphabet(), nfa.initial()).expect("nfa is well formed");
        for (p, a, q) in nfa.transitions() {
            efa.add_to_label(p, q, Regex::symbol(a));
        }
        efa.finals = nfa.finals().clone();
        efa
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

    /// One past the largest slot number ever used.
    pub fn slot_count(&self) -> usize {
        self.alive.len()
    }

    pub fn state_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn contains(&self, q: State) -> bool {
        self.alive.get(q).copied().unwrap_or(false)
    }

    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.alive.len()).filter(move |&q| self.alive[q])
    }

    /// States that may be eliminated: all but the initial and final ones.
    pub fn eliminable(&self) -> Vec<State> {
        self.states()
            .filter(|q| *q != self.initial && !self.finals.contains(q))
            .collect()
    }

    pub fn is_protected(&self, q: State) -> bool {
        q == self.initial || self.finals.contains(&q)
    }

    pub fn label(&self, p: State, q: State) -> Option<&Regex> {
        self.labels.get(p)?.get(q)?.as_ref()
    }

    pub fn label_or_empty(&self, p: State, q: State) -> Regex {
        self.label(p, q).cloned().unwrap_or_else(Regex::empty_set)
    }

    /// Replaces the label on `(p, q)`; `∅` removes it.
    pub fn set_label(&mut self, p: State, q: State, label: Regex) -> Result<()> {
        for s in [p, q] {
            if !self.contains(s) {
                return Err(Error::UnknownState(s));
            }
        }
        self.labels[p][q] = (!label.is_empty_set()).then_some(label);
        Ok(())
    }

    fn add_to_label(&mut self, p: State, q: State, extra: Regex) {
        let merged = Regex::union([self.label_or_empty(p, q), extra]);
        self.labels[p][q] = (!merged.is_empty_set()).then_some(merged);
    }

    pub fn set_initial(&mut self, q: State) -> Result<()> {
        if !self.contains(q) {
            return Err(Error::UnknownState(q));
        }
        self.initial = q;
        Ok(())
    }

    pub fn set_finals<I: IntoIterator<Item = State>>(&mut self, finals: I) -> Result<()> {
        let finals: BTreeSet<State> = finals.into_iter().collect();
        if let Some(&f) = finals.iter().find(|&&f| !self.contains(f)) {
            return Err(Error::UnknownState(f));
        }
        self.finals = finals;
        Ok(())
    }

    /// Adds a state without transitions and returns its number.
    pub fn add_state(&mut self) -> State {
        let q = self.alive.len();
        self.alive.push(true);
        for row in &mut self.labels {
            row.push(None);
        }
        self.labels.push(vec![None; q + 1]);
        q
    }

    /// Loop label of `q`, if any.
    pub fn loop_label(&self, q: State) -> Option<&Regex> {
        self.label(q, q)
    }

    /// States with a label into `q`, `q` itself excluded.
    pub fn predecessors(&self, q: State) -> impl Iterator<Item = (State, &Regex)> + '_ {
        self.states()
            .filter(move |&p| p != q)
            .filter_map(move |p| self.label(p, q).map(|r| (p, r)))
    }

    /// States with a label from `q`, `q` itself excluded.
    pub fn successors(&self, q: State) -> impl Iterator<Item = (State, &Regex)> + '_ {
        self.states()
            .filter(move |&p| p != q)
            .filter_map(move |p| self.label(q, p).map(|r| (p, r)))
    }

    pub fn labels(&self) -> impl Iterator<Item = (State, State, &Regex)> + '_ {
        self.states().flat_map(move |p| {
            self.states()
                .filter_map(move |q| self.label(p, q).map(|r| (p, q, r)))
        })
    }

    /// One arc per non-`∅` label, over the slot numbering (dead slots are isolated vertices).
    pub fn underlying_digraph(&self) -> Digraph {
        Digraph::from_arcs(self.slot_count(), self.labels().map(|(p, q, _)| (p, q)))
    }

    /// Removes `q`, rerouting every path `p → q → r` into the label
    /// `α_pr + α_pq α_qq★ α_qr`.
    pub fn eliminate_state(&self, q: State) -> Result<Efa> {
        let mut next = self.clone();
        next.eliminate_in_place(q)?;
        Ok(next)
    }

    pub fn eliminate_in_place(&mut self, q: State) -> Result<()> {
        if !self.contains(q) {
            return Err(Error::UnknownState(q));
        }
        if self.is_protected(q) {
            return Err(Error::ProtectedState(q));
        }
        let ins: Vec<(State, Regex)> = self.predecessors(q).map(|(p, r)| (p, r.clone())).collect();
        let outs: Vec<(State, Regex)> = self.successors(q).map(|(p, r)| (p, r.clone())).collect();
        let through = Regex::star(self.label_or_empty(q, q));
        for (p, into) in &ins {
            for (r, out) in &outs {
                let path = Regex::concat([into.clone(), through.clone(), out.clone()]);
                self.add_to_label(*p, *r, path);
            }
        }
        self.alive[q] = false;
        for row in &mut self.labels {
            row[q] = None;
        }
        self.labels[q].iter_mut().for_each(|l| *l = None);
        Ok(())
    }

    /// Membership by simulating the EFA on `word`: a configuration is a
    /// state together with the residual of the label being read. Used as a
    /// test oracle; cost grows with label sizes.
    pub fn accepts(&self, word: &[crate::regex::Letter]) -> bool {
        use std::collections::HashSet;
        // configurations: (state, residual label towards target) or at-state
        let mut at: HashSet<State> = HashSet::from([self.initial]);
        let mut inside: Vec<(Regex, State)> = Vec::new();
        let close = |at: &mut HashSet<State>, inside: &Vec<(Regex, State)>| {
            // epsilon closure through nullable labels and nullable residuals
            let mut stack: Vec<State> = at.iter().copied().collect();
            for (res, t) in inside {
                if res.is_nullable() && at.insert(*t) {
                    stack.push(*t);
                }
            }
            while let Some(p) = stack.pop() {
                for (t, l) in self
                    .states()
                    .filter_map(|t| self.label(p, t).map(|l| (t, l)))
                {
                    if l.is_nullable() && at.insert(t) {
                        stack.push(t);
                    }
                }
            }
        };
        close(&mut at, &inside);
        for &a in word {
            let mut next_inside: Vec<(Regex, State)> = Vec::new();
            for &p in &at {
                for t in self.states() {
                    if let Some(l) = self.label(p, t) {
                        let d = l.derivative(a);
                        if !d.is_empty_set() && !next_inside.contains(&(d.clone(), t)) {
                            next_inside.push((d, t));
                        }
                    }
                }
            }
            for (res, t) in &inside {
                let d = res.derivative(a);
                if !d.is_empty_set() && !next_inside.contains(&(d.clone(), *t)) {
                    next_inside.push((d, *t));
                }
            }
            inside = next_inside;
            at = HashSet::new();
            close(&mut at, &inside);
        }
        at.iter().any(|q| self.finals.contains(q))
    }
}
