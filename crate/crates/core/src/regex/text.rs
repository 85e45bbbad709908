//! Textual regex syntax.
//!
//! `@` is the empty set, `~` the empty word, `+` union, juxtaposition
//! concatenation and postfix `*` star. With at most 26 letters a symbol is a
//! lowercase letter (`a` is index 0); with more, symbol `i` is written `s<i>`
//! and concatenated factors are separated by a space.

use std::fmt;

use super::{Kind, Regex};
use crate::error::{Error, Result};

/// Display adapter that renders a [`Regex`] for a given alphabet size.
pub struct RegexText<'a> {
    regex: &'a Regex,
    alphabet: usize,
}

impl<'a> RegexText<'a> {
    pub fn new(regex: &'a Regex, alphabet: usize) -> Self {
        RegexText { regex, alphabet }
    }

    fn letters(&self) -> bool {
        self.alphabet <= 26
    }
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Union,
    Concat,
    Star,
}

impl RegexText<'_> {
    fn write(&self, r: &Regex, ctx: Prec, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let own = match r.kind() {
            Kind::Union(_) => Prec::Union,
            Kind::Concat(_) => Prec::Concat,
            _ => Prec::Star,
        };
        let paren = own < ctx;
        if paren {
            f.write_str("(")?;
        }
        match r.kind() {
            Kind::EmptySet => f.write_str("@")?,
            Kind::Epsilon => f.write_str("~")?,
            Kind::Symbol(a) if self.letters() => write!(f, "{}", char::from(b'a' + *a as u8))?,
            Kind::Symbol(a) => write!(f, "s{a}")?,
            Kind::Union(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    self.write(p, Prec::Union, f)?;
                }
            }
            Kind::Concat(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 && !self.letters() {
                        f.write_str(" ")?;
                    }
                    // a nested concatenation only occurs in naive trees
                    self.write(p, Prec::Star, f)?;
                }
            }
            Kind::Star(inner) => {
                self.write(inner, Prec::Star, f)?;
                f.write_str("*")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for RegexText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.regex, Prec::Union, f)
    }
}

pub(super) fn parse(input: &str, alphabet: usize) -> Result<Regex> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        alphabet,
    };
    let r = p.union()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(r)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    alphabet: usize,
}

impl Parser {
    fn peek(&mut self) -> Option<char> {
        while matches!(self.chars.get(self.pos), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn error(&self, what: &str) -> Error {
        Error::InvalidRegex(format!("{what} at offset {}", self.pos))
    }

    fn union(&mut self) -> Result<Regex> {
        let mut parts = vec![self.concat()?];
        while self.peek() == Some('+') {
            self.pos += 1;
            parts.push(self.concat()?);
        }
        Ok(Regex::union(parts))
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut parts = vec![self.postfix()?];
        while matches!(self.peek(), Some(c) if c != '+' && c != ')') {
            parts.push(self.postfix()?);
        }
        Ok(Regex::concat(parts))
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end"))?;
        self.pos += 1;
        match c {
            '@' => Ok(Regex::empty_set()),
            '~' => Ok(Regex::epsilon()),
            '(' => {
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            's' if self.alphabet > 26 => {
                let start = self.pos;
                while matches!(self.chars.get(self.pos), Some(d) if d.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let letter: u32 = digits.parse().map_err(|_| self.error("bad symbol"))?;
                self.symbol(letter)
            }
            c if c.is_ascii_lowercase() && self.alphabet <= 26 => {
                self.symbol(c as u32 - 'a' as u32)
            }
            _ => {
                self.pos -= 1;
                Err(self.error(&format!("unexpected '{c}'")))
            }
        }
    }

    fn symbol(&self, letter: u32) -> Result<Regex> {
        if (letter as usize) < self.alphabet {
            Ok(Regex::symbol(letter))
        } else {
            Err(self.error(&format!(
                "symbol {letter} outside alphabet of size {}",
                self.alphabet
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_parentheses() {
        let r = Regex::parse("a(b+a)*", 2).unwrap();
        assert_eq!(r.alphabetic_size(), 3);
        assert_eq!(r.to_text(2), "a(b+a)*");
        let r = Regex::parse("(ab)*+~", 2).unwrap();
        assert_eq!(r.to_text(2), "(ab)*+~");
        assert_eq!(Regex::empty_set().to_text(2), "@");
    }

    #[test]
    fn large_alphabets_use_indexed_symbols() {
        let r = Regex::concat([
            Regex::symbol(1),
            Regex::symbol(12),
            Regex::star(Regex::symbol(27)),
        ]);
        let text = r.to_text(30);
        assert_eq!(text, "s1 s12 s27*");
        assert_eq!(Regex::parse(&text, 30).unwrap(), r);
    }

    #[test]
    fn rejects_out_of_alphabet_symbols() {
        assert!(Regex::parse("c", 2).is_err());
        assert!(Regex::parse("(a", 2).is_err());
        assert!(Regex::parse("a)", 2).is_err());
    }
}
