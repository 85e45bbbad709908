//! Regular expressions over a finite alphabet of letter indices.
//!
//! Values are immutable and reference counted, so subexpressions produced by
//! state elimination are shared rather than copied. The alphabetic size and
//! nullability of every node are computed once at construction; the size of
//! an expression whose expanded tree would have billions of leaves is
//! therefore available in constant time.
//!
//! The smart constructors ([`Regex::union`], [`Regex::concat`],
//! [`Regex::star`]) apply a fixed rule set: the `∅`/`ε` identities and
//! annihilations, flattening of nested unions and concatenations, and removal
//! of structurally repeated union members. No other Kleene-algebra rewriting
//! is performed.

mod deriv;
mod text;

use std::collections::HashMap;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Magnitude;
use crate::Size;

pub use text::RegexText;

/// Alphabet index of a symbol.
pub type Letter = u32;

/// The shape of a regular expression node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    EmptySet,
    Epsilon,
    Symbol(Letter),
    Union(Vec<Regex>),
    Concat(Vec<Regex>),
    Star(Regex),
}

/// Operator accepted by [`Regex::build_simplified`] and [`Regex::build_naive`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Union,
    Concat,
    Star,
}

#[derive(Debug)]
struct Node {
    kind: Kind,
    size: Size,
    nullable: bool,
    hash: u64,
}

#[derive(Clone)]
pub struct Regex(Arc<Node>);

impl Regex {
    fn from_kind(kind: Kind) -> Self {
        let (size, nullable) = match &kind {
            Kind::EmptySet => (0, false),
            Kind::Epsilon => (0, true),
            Kind::Symbol(_) => (1, false),
            Kind::Union(parts) => (
                parts
                    .iter()
                    .fold(0, |s: Size, p| s.saturating_add(p.0.size)),
                parts.iter().any(Regex::is_nullable),
            ),
            Kind::Concat(parts) => (
                parts
                    .iter()
                    .fold(0, |s: Size, p| s.saturating_add(p.0.size)),
                parts.iter().all(Regex::is_nullable),
            ),
            Kind::Star(inner) => (inner.0.size, true),
        };
        let mut h = DefaultHasher::new();
        match &kind {
            Kind::EmptySet => 0u8.hash(&mut h),
            Kind::Epsilon => 1u8.hash(&mut h),
            Kind::Symbol(a) => (2u8, a).hash(&mut h),
            Kind::Union(parts) => {
                3u8.hash(&mut h);
                parts.iter().for_each(|p| p.0.hash.hash(&mut h));
            }
            Kind::Concat(parts) => {
                4u8.hash(&mut h);
                parts.iter().for_each(|p| p.0.hash.hash(&mut h));
            }
            Kind::Star(inner) => (5u8, inner.0.hash).hash(&mut h),
        }
        Regex(Arc::new(Node {
            kind,
            size,
            nullable,
            hash: h.finish(),
        }))
    }

    pub fn empty_set() -> Self {
        Self::from_kind(Kind::EmptySet)
    }

    pub fn epsilon() -> Self {
        Self::from_kind(Kind::Epsilon)
    }

    pub fn symbol(letter: Letter) -> Self {
        Self::from_kind(Kind::Symbol(letter))
    }

    /// Simplified union. Members equal to `∅` are dropped, nested unions are
    /// flattened and a member structurally equal to an earlier one is dropped.
    /// The relative order of the remaining members is kept.
    pub fn union<I: IntoIterator<Item = Regex>>(parts: I) -> Self {
        let mut out: Vec<Regex> = Vec::new();
        let mut push = |r: &Regex| {
            if !out.contains(r) {
                out.push(r.clone());
            }
        };
        for part in parts {
            match part.kind() {
                Kind::EmptySet => {}
                Kind::Union(inner) => inner.iter().for_each(&mut push),
                _ => push(&part),
            }
        }
        match out.len() {
            0 => Self::empty_set(),
            1 => out.pop().unwrap(),
            _ => Self::from_kind(Kind::Union(out)),
        }
    }

    /// Simplified concatenation: `∅` annihilates, `ε` is dropped, nested
    /// concatenations are flattened.
    pub fn concat<I: IntoIterator<Item = Regex>>(parts: I) -> Self {
        let mut out: Vec<Regex> = Vec::new();
        for part in parts {
            match part.kind() {
                Kind::EmptySet => return Self::empty_set(),
                Kind::Epsilon => {}
                Kind::Concat(inner) => out.extend(inner.iter().cloned()),
                _ => out.push(part),
            }
        }
        match out.len() {
            0 => Self::epsilon(),
            1 => out.pop().unwrap(),
            _ => Self::from_kind(Kind::Concat(out)),
        }
    }

    /// Simplified star: `∅★ = ε★ = ε`.
    pub fn star(inner: Regex) -> Self {
        match inner.kind() {
            Kind::EmptySet | Kind::Epsilon => Self::epsilon(),
            _ => Self::from_kind(Kind::Star(inner)),
        }
    }

    /// Combines `operands` with `op` through the simplifying constructors.
    pub fn build_simplified(op: Operator, operands: Vec<Regex>) -> Result<Self> {
        check_arity(op, &operands)?;
        Ok(match op {
            Operator::Union => Self::union(operands),
            Operator::Concat => Self::concat(operands),
            Operator::Star => Self::star(operands.into_iter().next().unwrap()),
        })
    }

    /// Combines `operands` with `op` without any rewriting. A single operand
    /// of a union or concatenation is returned as is. The result may violate
    /// the simplified-form invariants; it exists as a reference point.
    pub fn build_naive(op: Operator, mut operands: Vec<Regex>) -> Result<Self> {
        check_arity(op, &operands)?;
        Ok(match op {
            _ if operands.len() == 1 && op != Operator::Star => operands.pop().unwrap(),
            Operator::Union => Self::from_kind(Kind::Union(operands)),
            Operator::Concat => Self::from_kind(Kind::Concat(operands)),
            Operator::Star => Self::from_kind(Kind::Star(operands.pop().unwrap())),
        })
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn is_empty_set(&self) -> bool {
        matches!(self.kind(), Kind::EmptySet)
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self.kind(), Kind::Epsilon)
    }

    /// Whether the empty word belongs to the language.
    pub fn is_nullable(&self) -> bool {
        self.0.nullable
    }

    /// Number of symbol leaves, saturating at `u128::MAX`.
    pub fn alphabetic_size(&self) -> Size {
        self.0.size
    }

    /// Number of symbol leaves computed in `M`, walking the shared
    /// representation once per distinct node.
    pub fn alphabetic_size_as<M: Magnitude>(&self) -> M {
        fn go<M: Magnitude>(r: &Regex, memo: &mut HashMap<*const Node, M>) -> M {
            let key = Arc::as_ptr(&r.0);
            if let Some(m) = memo.get(&key) {
                return m.clone();
            }
            let m = match r.kind() {
                Kind::EmptySet | Kind::Epsilon => M::zero(),
                Kind::Symbol(_) => M::one(),
                Kind::Union(ps) | Kind::Concat(ps) => {
                    ps.iter().fold(M::zero(), |acc, p| acc.plus(&go(p, memo)))
                }
                Kind::Star(inner) => go(inner, memo),
            };
            memo.insert(key, m.clone());
            m
        }
        go(self, &mut HashMap::new())
    }

    /// Number of distinct nodes in the shared representation.
    pub fn node_count(&self) -> usize {
        fn go(r: &Regex, seen: &mut std::collections::HashSet<*const Node>) {
            if !seen.insert(Arc::as_ptr(&r.0)) {
                return;
            }
            match r.kind() {
                Kind::Union(ps) | Kind::Concat(ps) => ps.iter().for_each(|p| go(p, seen)),
                Kind::Star(inner) => go(inner, seen),
                _ => {}
            }
        }
        let mut seen = Default::default();
        go(self, &mut seen);
        seen.len()
    }

    /// Whether all invariants of the simplified form hold throughout the expression.
    pub fn is_simplified(&self) -> bool {
        match self.kind() {
            Kind::EmptySet | Kind::Epsilon | Kind::Symbol(_) => true,
            Kind::Union(ps) => {
                ps.len() >= 2
                    && ps
                        .iter()
                        .all(|p| !p.is_empty_set() && !matches!(p.kind(), Kind::Union(_)))
                    && ps.iter().enumerate().all(|(i, p)| !ps[..i].contains(p))
                    && ps.iter().all(Regex::is_simplified)
            }
            Kind::Concat(ps) => {
                ps.len() >= 2
                    && ps.iter().all(|p| {
                        !p.is_empty_set() && !p.is_epsilon() && !matches!(p.kind(), Kind::Concat(_))
                    })
                    && ps.iter().all(Regex::is_simplified)
            }
            Kind::Star(inner) => {
                !inner.is_empty_set() && !inner.is_epsilon() && inner.is_simplified()
            }
        }
    }

    /// Rebuilds the expression bottom-up through the simplifying constructors.
    pub fn simplify(&self) -> Regex {
        match self.kind() {
            Kind::EmptySet | Kind::Epsilon | Kind::Symbol(_) => self.clone(),
            Kind::Union(ps) => Self::union(ps.iter().map(Regex::simplify)),
            Kind::Concat(ps) => Self::concat(ps.iter().map(Regex::simplify)),
            Kind::Star(inner) => Self::star(inner.simplify()),
        }
    }

    /// Membership test by successive derivatives and a final nullability check.
    pub fn matches(&self, word: &[Letter]) -> bool {
        let mut current = self.clone();
        for &letter in word {
            if current.is_empty_set() {
                return false;
            }
            current = current.derivative(letter);
        }
        current.is_nullable()
    }

    /// Textual form with the given alphabet size, see [`RegexText`].
    pub fn to_text(&self, alphabet: usize) -> String {
        RegexText::new(self, alphabet).to_string()
    }

    /// Parses the textual form produced by [`Regex::to_text`], building
    /// through the simplifying constructors.
    pub fn parse(input: &str, alphabet: usize) -> Result<Regex> {
        text::parse(input, alphabet)
    }
}

fn check_arity(op: Operator, operands: &[Regex]) -> Result<()> {
    match (op, operands.len()) {
        (_, 0) => Err(Error::InvalidRegex(
            "operator applied to no operands".into(),
        )),
        (Operator::Star, n) if n != 1 => Err(Error::InvalidRegex(format!(
            "star takes exactly one operand, got {n}"
        ))),
        _ => Ok(()),
    }
}

impl PartialEq for Regex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.size == other.0.size
                && self.0.kind == other.0.kind)
    }
}

impl Eq for Regex {}

impl Hash for Regex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state);
    }
}

impl fmt::Debug for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Regex({})", RegexText::new(self, 26))
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        RegexText::new(self, 26).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Regex {
        Regex::symbol(0)
    }
    fn b() -> Regex {
        Regex::symbol(1)
    }

    #[test]
    fn alphabetic_size_examples() {
        assert_eq!(Regex::epsilon().alphabetic_size(), 0);
        let r = Regex::concat([a(), Regex::star(Regex::union([b(), a()]))]);
        assert_eq!(r.alphabetic_size(), 3);
        assert_eq!(r.alphabetic_size_as::<f64>(), 3.0);
    }

    #[test]
    fn identities_and_annihilators() {
        assert_eq!(Regex::union([Regex::empty_set(), a()]), a());
        assert_eq!(
            Regex::concat([Regex::epsilon(), a(), Regex::epsilon()]),
            a()
        );
        assert_eq!(Regex::star(Regex::epsilon()), Regex::epsilon());
        assert_eq!(Regex::star(Regex::empty_set()), Regex::epsilon());
        assert_eq!(Regex::concat([a(), Regex::empty_set()]), Regex::empty_set());
        assert_eq!(Regex::concat(Vec::new()), Regex::epsilon());
        assert_eq!(Regex::union(Vec::new()), Regex::empty_set());
    }

    #[test]
    fn union_flattens_and_deduplicates_without_reordering() {
        let ab = Regex::union([a(), b()]);
        let r = Regex::union([b(), ab.clone(), a()]);
        match r.kind() {
            Kind::Union(ps) => assert_eq!(ps, &vec![b(), a()]),
            k => panic!("unexpected {k:?}"),
        }
        assert_eq!(Regex::union([ab.clone(), ab.clone()]), ab);
    }

    #[test]
    fn concat_flattens() {
        let r = Regex::concat([a(), Regex::concat([b(), a()])]);
        match r.kind() {
            Kind::Concat(ps) => assert_eq!(ps.len(), 3),
            k => panic!("unexpected {k:?}"),
        }
        assert!(r.is_simplified());
    }

    #[test]
    fn build_simplified_arity() {
        assert!(Regex::build_simplified(Operator::Star, vec![a(), b()]).is_err());
        assert!(Regex::build_simplified(Operator::Union, vec![]).is_err());
        let r = Regex::build_simplified(Operator::Union, vec![Regex::empty_set(), a()]).unwrap();
        assert_eq!(r, a());
    }

    #[test]
    fn naive_keeps_structure() {
        let r = Regex::build_naive(Operator::Concat, vec![Regex::epsilon(), a()]).unwrap();
        assert!(!r.is_simplified());
        assert_eq!(r.simplify(), a());
    }

    #[test]
    fn matches_examples() {
        assert!(Regex::epsilon().matches(&[]));
        let abstar = Regex::concat([a(), Regex::star(b())]);
        assert!(abstar.matches(&[0, 1, 1]));
        assert!(!abstar.matches(&[1]));
        assert!(!Regex::empty_set().matches(&[]));
        assert!(!Regex::empty_set().matches(&[0, 1]));
    }

    #[test]
    fn shared_size_counts_every_occurrence() {
        let mut r = Regex::star(Regex::union([a(), b()]));
        for _ in 0..100 {
            r = Regex::star(Regex::concat([r.clone(), r]));
        }
        assert_eq!(r.alphabetic_size(), 1u128 << 101);
        assert!(r.node_count() < 300);
        let big: num_bigint::BigUint = r.alphabetic_size_as();
        assert_eq!(big, num_bigint::BigUint::from(1u128 << 101));
    }
}
