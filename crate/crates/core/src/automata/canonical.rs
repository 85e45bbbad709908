//! Canonical strings of complete initially-connected DFAs.
//!
//! States are numbered by first occurrence in a breadth-first scan that
//! starts at the initial state and visits transitions by increasing letter.
//! The transition table, read row by row in that numbering, is the canonical
//! string; two ICDFAs are isomorphic iff their strings are equal.
//!
//! Line format: `n k <digits> F=<finals>` where `<digits>` is one character
//! per state number when `n <= 10` and space-separated numbers otherwise.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{Nfa, State};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalString {
    states: usize,
    alphabet: usize,
    digits: Vec<State>,
    finals: BTreeSet<State>,
}

impl CanonicalString {
    /// Validates a digit sequence. Every state `m > 0` must first occur
    /// right after `m - 1` has occurred and before its own row starts.
    pub fn new<F>(states: usize, alphabet: usize, digits: Vec<State>, finals: F) -> Result<Self>
    where
        F: IntoIterator<Item = State>,
    {
        if states == 0 || alphabet == 0 {
            return Err(Error::InvalidCanonical("n and k must be positive".into()));
        }
        if digits.len() != states * alphabet {
            return Err(Error::InvalidCanonical(format!(
                "expected {} digits for n={states}, k={alphabet}, got {}",
                states * alphabet,
                digits.len()
            )));
        }
        let mut max_seen = 0;
        for (pos, &d) in digits.iter().enumerate() {
            if pos % alphabet == 0 && pos / alphabet > max_seen {
                return Err(Error::InvalidCanonical(format!(
                    "state {} is not reachable before its own row",
                    pos / alphabet
                )));
            }
            if d >= states {
                return Err(Error::InvalidCanonical(format!(
                    "state {d} at position {pos} out of range"
                )));
            }
            if d > max_seen + 1 {
                return Err(Error::InvalidCanonical(format!(
                    "state {d} at position {pos} occurs before state {}",
                    max_seen + 1
                )));
            }
            max_seen = max_seen.max(d);
        }
        if max_seen + 1 != states {
            return Err(Error::InvalidCanonical(format!(
                "state {} never occurs",
                max_seen + 1
            )));
        }
        let finals: BTreeSet<State> = finals.into_iter().collect();
        if let Some(f) = finals.iter().find(|&&f| f >= states) {
            return Err(Error::InvalidCanonical(format!(
                "final state {f} out of range"
            )));
        }
        Ok(CanonicalString {
            states,
            alphabet,
            digits,
            finals,
        })
    }

    /// Parses the digit field alone. A field without spaces is read one
    /// character per state; `n` is then the largest digit plus one.
    pub fn from_digits<F>(text: &str, alphabet: Option<usize>, finals: F) -> Result<Self>
    where
        F: IntoIterator<Item = State>,
    {
        let digits = parse_digits(text)?;
        let states = digits.iter().max().map_or(0, |m| m + 1);
        let alphabet = match alphabet {
            Some(k) => k,
            None if states > 0 && digits.len() % states == 0 => digits.len() / states,
            None => {
                return Err(Error::InvalidCanonical(format!(
                    "cannot infer k from {} digits over {states} states",
                    digits.len()
                )))
            }
        };
        CanonicalString::new(states, alphabet, digits, finals)
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn digits(&self) -> &[State] {
        &self.digits
    }

    pub fn finals(&self) -> &BTreeSet<State> {
        &self.finals
    }

    pub fn with_finals<F: IntoIterator<Item = State>>(&self, finals: F) -> Result<Self> {
        CanonicalString::new(self.states, self.alphabet, self.digits.clone(), finals)
    }

    /// The complete DFA with `δ(q, a) = digits[q·k + a]` and initial state 0.
    pub fn to_nfa(&self) -> Nfa {
        Nfa::complete_dfa(self.alphabet, &self.digits, self.finals.iter().copied())
            .expect("validated canonical string")
    }

    /// Canonical string of a complete initially-connected DFA, together with
    /// the relabeling `old_to_new` that maps its states to canonical numbers.
    pub fn from_dfa(dfa: &Nfa) -> Result<(Self, Vec<State>)> {
        if !dfa.is_complete_dfa() {
            return Err(Error::InvalidAutomaton("not a complete DFA".into()));
        }
        let order = dfa.bfs_order();
        if order.len() != dfa.state_count() {
            return Err(Error::InvalidAutomaton("not initially connected".into()));
        }
        let mut old_to_new = vec![0; dfa.state_count()];
        for (new, &old) in order.iter().enumerate() {
            old_to_new[old] = new;
        }
        let k = dfa.alphabet();
        let digits = order
            .iter()
            .flat_map(|&q| (0..k).map(move |a| (q, a)))
            .map(|(q, a)| old_to_new[dfa.target(q, a as u32).unwrap()])
            .collect();
        let finals = dfa.finals().iter().map(|&f| old_to_new[f]);
        let s = CanonicalString::new(dfa.state_count(), k, digits, finals)?;
        Ok((s, old_to_new))
    }

    /// The digit field: single characters when `n <= 10`, space separated otherwise.
    pub fn digits_text(&self) -> String {
        if self.states <= 10 {
            self.digits
                .iter()
                .map(|d| char::from(b'0' + *d as u8))
                .collect()
        } else {
            let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
            parts.join(" ")
        }
    }

    pub fn finals_text(&self) -> String {
        let parts: Vec<String> = self.finals.iter().map(|f| f.to_string()).collect();
        parts.join(",")
    }
}

fn parse_digits(text: &str) -> Result<Vec<State>> {
    let text = text.trim();
    let bad = |t: &str| Error::InvalidCanonical(format!("bad state number `{t}`"));
    if text.contains(char::is_whitespace) {
        text.split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(t)))
            .collect()
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as State)
                    .ok_or_else(|| bad(&c.to_string()))
            })
            .collect()
    }
}

/// Parses a comma-separated list of state numbers; the empty string is the empty set.
pub(crate) fn parse_state_list(text: &str) -> Result<Vec<State>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidCanonical(format!("bad state number `{t}`")))
        })
        .collect()
}

impl fmt::Display for CanonicalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} F={}",
            self.states,
            self.alphabet,
            self.digits_text(),
            self.finals_text()
        )
    }
}

impl FromStr for CanonicalString {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let malformed = || Error::InvalidCanonical(format!("malformed line `{line}`"));
        if tokens.len() < 4 {
            return Err(malformed());
        }
        let n: usize = tokens[0].parse().map_err(|_| malformed())?;
        let k: usize = tokens[1].parse().map_err(|_| malformed())?;
        let finals = tokens[tokens.len() - 1]
            .strip_prefix("F=")
            .ok_or_else(malformed)?;
        let body = &tokens[2..tokens.len() - 1];
        let digits = if n <= 10 && body.len() == 1 {
            parse_digits(body[0])?
        } else {
            parse_digits(&body.join(" "))?
        };
        CanonicalString::new(n, k, digits, parse_state_list(finals)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_worked_example() {
        let s = CanonicalString::from_digits("12312312", None, [3]).unwrap();
        assert_eq!((s.state_count(), s.alphabet()), (4, 2));
        let d = s.to_nfa();
        let expected = [
            (0, 0, 1),
            (0, 1, 2),
            (1, 0, 3),
            (1, 1, 1),
            (2, 0, 2),
            (2, 1, 3),
            (3, 0, 1),
            (3, 1, 2),
        ];
        assert_eq!(d.transitions().collect::<Vec<_>>(), expected);
        assert_eq!(CanonicalString::from_dfa(&d).unwrap().0, s);
    }

    #[test]
    fn one_state() {
        let s = CanonicalString::from_digits("00", None, [0]).unwrap();
        let d = s.to_nfa();
        assert_eq!(d.state_count(), 1);
        assert!(d.dfa_accepts(&[0, 1, 1]).unwrap());
        let d3 = Nfa::complete_dfa(3, &[0, 0, 0], []).unwrap();
        assert_eq!(
            CanonicalString::from_dfa(&d3).unwrap().0.digits_text(),
            "000"
        );
    }

    #[test]
    fn cycle_example_encoding() {
        let d = Nfa::complete_dfa(2, &[1, 2, 3, 2, 0, 0, 4, 2, 3, 2], [3, 4]).unwrap();
        let (s, perm) = CanonicalString::from_dfa(&d).unwrap();
        assert_eq!(s.digits_text(), "1232004232");
        assert_eq!(perm, vec![0, 1, 2, 3, 4]);
        assert_eq!(s.to_nfa(), d);
    }

    #[test]
    fn relabels_by_first_occurrence() {
        // the 4.3 automaton with states 1 and 2 swapped
        let d = Nfa::complete_dfa(2, &[2, 1, 1, 3, 3, 2, 2, 1], [3]).unwrap();
        let (s, perm) = CanonicalString::from_dfa(&d).unwrap();
        assert_eq!(s.digits_text(), "12312312");
        assert_eq!(perm, vec![0, 2, 1, 3]);
    }

    #[test]
    fn rejects_non_canonical() {
        assert!(CanonicalString::from_digits("21312312", None, [3]).is_err());
        assert!(CanonicalString::new(4, 2, vec![1, 2, 3, 1, 2, 3, 1], [3]).is_err());
        assert!(CanonicalString::new(2, 2, vec![1, 2, 1, 1], []).is_err());
        // state 2 first appears only in its own row
        assert!(CanonicalString::new(3, 1, vec![1, 0, 2], []).is_err());
        assert!(CanonicalString::new(2, 1, vec![0, 1], []).is_err());
        assert!(CanonicalString::new(2, 1, vec![1, 0], [2]).is_err());
    }

    #[test]
    fn rejects_incomplete_or_disconnected() {
        let partial = Nfa::new(2, 1, [(0, 0, 1)], 0, []).unwrap();
        assert!(CanonicalString::from_dfa(&partial).is_err());
        let disconnected = Nfa::complete_dfa(1, &[0, 1], []).unwrap();
        assert!(CanonicalString::from_dfa(&disconnected).is_err());
    }

    #[test]
    fn line_format() {
        let s: CanonicalString = "4 2 12312312 F=3".parse().unwrap();
        assert_eq!(s.to_string(), "4 2 12312312 F=3");
        let empty: CanonicalString = "1 1 0 F=".parse().unwrap();
        assert!(empty.finals().is_empty());

        let mut digits: Vec<usize> = (1..12).collect();
        digits.push(0);
        let big = CanonicalString::new(12, 1, digits, [0, 11]).unwrap();
        let line = big.to_string();
        assert_eq!(line, "12 1 1 2 3 4 5 6 7 8 9 10 11 0 F=0,11");
        assert_eq!(line.parse::<CanonicalString>().unwrap(), big);
        assert!("4 2 12312312".parse::<CanonicalString>().is_err());
    }
}
