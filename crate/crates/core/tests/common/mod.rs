//! Oracles shared by the integration tests. None of them call into the
//! library beyond reading the structure of its values.

#![allow(dead_code)]

pub mod suites;

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use stelim::regex::Kind;
use stelim::{CanonicalString, Letter, Nfa, Regex};

/// The four-state DFA of the DM worked example.
pub fn small_dfa() -> CanonicalString {
    CanonicalString::from_digits("12312312", Some(2), [3]).unwrap()
}

/// The five-state DFA of the cycle worked example.
pub fn five_state_dfa() -> CanonicalString {
    CanonicalString::from_digits("1232004232", Some(2), [3, 4]).unwrap()
}

/// Every word over `k` letters of length at most `max_len`, shortest first.
pub fn words(k: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                (0..k as Letter).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `spans[i][j]` holds when `word[i..j]` belongs to the language of `r`.
pub fn spans(r: &Regex, word: &[Letter]) -> Vec<Vec<bool>> {
    let n = word.len();
    let mut m = vec![vec![false; n + 1]; n + 1];
    match r.kind() {
        Kind::EmptySet => {}
        Kind::Epsilon => (0..=n).for_each(|i| m[i][i] = true),
        Kind::Symbol(a) => (0..n)
            .filter(|&i| word[i] == *a)
            .for_each(|i| m[i][i + 1] = true),
        Kind::Union(parts) => {
            for p in parts {
                let s = spans(p, word);
                for i in 0..=n {
                    for j in i..=n {
                        m[i][j] |= s[i][j];
                    }
                }
            }
        }
        Kind::Concat(parts) => {
            (0..=n).for_each(|i| m[i][i] = true);
            for p in parts {
                let s = spans(p, word);
                let mut next = vec![vec![false; n + 1]; n + 1];
                for i in 0..=n {
                    for mid in i..=n {
                        if m[i][mid] {
                            for j in mid..=n {
                                next[i][j] |= s[mid][j];
                            }
                        }
                    }
                }
                m = next;
            }
        }
        Kind::Star(inner) => {
            let s = spans(inner, word);
            (0..=n).for_each(|i| m[i][i] = true);
            for len in 1..=n {
                for i in 0..=n - len {
                    let j = i + len;
                    m[i][j] = (i + 1..=j).any(|mid| s[i][mid] && m[mid][j]);
                }
            }
        }
    }
    m
}

pub fn span_match(r: &Regex, word: &[Letter]) -> bool {
    spans(r, word)[0][word.len()]
}

/// Subset simulation of an automaton given as a transition list.
pub fn nfa_accepts(nfa: &Nfa, word: &[Letter]) -> bool {
    let mut current: BTreeSet<usize> = [nfa.initial()].into();
    for &a in word {
        current = nfa
            .transitions()
            .filter(|&(p, b, _)| b == a && current.contains(&p))
            .map(|(_, _, q)| q)
            .collect();
    }
    current.iter().any(|q| nfa.finals().contains(q))
}

/// Adjacency lists of the state graph of `nfa`.
pub fn adjacency(nfa: &Nfa) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); nfa.state_count()];
    for (p, _, q) in nfa.transitions() {
        if !adj[p].contains(&q) {
            adj[p].push(q);
        }
    }
    adj
}

/// States reachable from `start` without entering `avoid`.
pub fn reach(adj: &[Vec<usize>], start: usize, avoid: Option<usize>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    if Some(start) == avoid {
        return seen;
    }
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for &q in &adj[p] {
            if Some(q) != avoid && !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    seen
}

/// A random automaton with `n` states over `k` letters, each transition
/// present with probability `density`, trimmed; `None` when the language
/// is empty.
pub fn random_trim_nfa<R: Rng>(rng: &mut R, n: usize, k: usize, density: f64) -> Option<Nfa> {
    let transitions: Vec<(usize, Letter, usize)> = (0..n)
        .flat_map(|p| (0..k as Letter).flat_map(move |a| (0..n).map(move |q| (p, a, q))))
        .filter(|_| rng.gen_bool(density))
        .collect();
    let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    match Nfa::new(n, k, transitions, 0, finals).unwrap().trim() {
        stelim::Trim::Trimmed { nfa, .. } => Some(nfa),
        stelim::Trim::EmptyLanguage => None,
    }
}

/// Thompson automaton of an expression: `eps` and `sym` are the ε and
/// letter arcs of each node.
struct Thompson {
    eps: Vec<Vec<usize>>,
    sym: Vec<Vec<(Letter, usize)>>,
}

impl Thompson {
    fn node(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.sym.push(Vec::new());
        self.eps.len() - 1
    }

    fn build(&mut self, r: &Regex) -> (usize, usize) {
        let (s, e) = (self.node(), self.node());
        match r.kind() {
            Kind::EmptySet => {}
            Kind::Epsilon => self.eps[s].push(e),
            Kind::Symbol(a) => self.sym[s].push((*a, e)),
            Kind::Union(parts) => {
                for p in parts {
                    let (ps, pe) = self.build(p);
                    self.eps[s].push(ps);
                    self.eps[pe].push(e);
                }
            }
            Kind::Concat(parts) => {
                let mut at = s;
                for p in parts {
                    let (ps, pe) = self.build(p);
                    self.eps[at].push(ps);
                    at = pe;
                }
                self.eps[at].push(e);
            }
            Kind::Star(inner) => {
                let (is, ie) = self.build(inner);
                self.eps[s].extend([is, e]);
                self.eps[ie].extend([is, e]);
            }
        }
        (s, e)
    }

    fn closure(&self, mut set: Vec<usize>) -> Vec<usize> {
        let mut seen = vec![false; self.eps.len()];
        set.iter().for_each(|&q| seen[q] = true);
        let mut i = 0;
        while i < set.len() {
            for &t in &self.eps[set[i]] {
                if !seen[t] {
                    seen[t] = true;
                    set.push(t);
                }
            }
            i += 1;
        }
        set
    }
}

/// Words over `k` letters of length at most `max_len` in the language of
/// `r`, by simulating its Thompson automaton.
pub fn regex_words(r: &Regex, k: usize, max_len: usize) -> BTreeSet<Vec<Letter>> {
    let mut t = Thompson {
        eps: Vec::new(),
        sym: Vec::new(),
    };
    let (start, end) = t.build(r);
    let mut out = BTreeSet::new();
    let mut stack = vec![(Vec::new(), t.closure(vec![start]))];
    while let Some((word, set)) = stack.pop() {
        if set.contains(&end) {
            out.insert(word.clone());
        }
        if word.len() == max_len {
            continue;
        }
        for a in 0..k as Letter {
            let next: BTreeSet<usize> = set
                .iter()
                .flat_map(|&q| t.sym[q].iter().filter(|&&(b, _)| b == a).map(|&(_, p)| p))
                .collect();
            if !next.is_empty() {
                let mut w = word.clone();
                w.push(a);
                stack.push((w, t.closure(next.into_iter().collect())));
            }
        }
    }
    out
}
