//! Free-group words over the letters `c`, `d`, `t` and the macro letters `b<i>`.
//!
//! Text grammar (whitespace between terms is optional):
//!
//! ```text
//! word := term* | "1"
//! term := sym ("^" int)?
//! sym  := "c" | "d" | "t" | "b" int | "[" word "," word "]"
//! ```
//!
//! Bracket terms are commutators with the convention `[u, v] = u^-1 v^-1 u v`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sym {
    C,
    D,
    /// The stable letter.
    T,
    /// `b_i`, expanding to `d c^-1` for `i = 0` and `[b_0, d^i]` otherwise.
    B(i64),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::C => f.write_str("c"),
            Sym::D => f.write_str("d"),
            Sym::T => f.write_str("t"),
            Sym::B(i) => write!(f, "b{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub sym: Sym,
    /// Never zero inside a [`Word`].
    pub exp: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// A freely reduced word: adjacent letters never share a symbol.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letter(sym: Sym, exp: i64) -> Self {
        let mut w = Self::empty();
        w.push(sym, exp);
        w
    }

    pub fn c() -> Self {
        Self::letter(Sym::C, 1)
    }

    pub fn d() -> Self {
        Self::letter(Sym::D, 1)
    }

    pub fn t() -> Self {
        Self::letter(Sym::T, 1)
    }

    pub fn b(i: i64) -> Self {
        Self::letter(Sym::B(i), 1)
    }

    pub fn from_letters<I: IntoIterator<Item = (Sym, i64)>>(letters: I) -> Self {
        let mut w = Self::empty();
        for (s, e) in letters {
            w.push(s, e);
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends `sym^exp`, merging with the last letter when the symbols agree.
    pub fn push(&mut self, sym: Sym, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.sym == sym {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(Letter { sym, exp });
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for l in &rhs.letters {
            out.push(l.sym, l.exp);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        Self::from_letters(self.letters.iter().rev().map(|l| (l.sym, -l.exp)))
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[u, v] = u^-1 v^-1 u v`, freely reduced.
    pub fn commutator(u: &Self, v: &Self) -> Self {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    /// Replaces every `b_i` letter by its definition over `c` and `d`.
    pub fn expand_b(&self) -> Self {
        let mut out = Self::empty();
        for l in &self.letters {
            match l.sym {
                Sym::B(i) => out = out.mul(&b_definition(i).pow(l.exp)),
                s => out.push(s, l.exp),
            }
        }
        out
    }

    pub fn has_b(&self) -> bool {
        self.letters.iter().any(|l| matches!(l.sym, Sym::B(_)))
    }

    pub fn has_t(&self) -> bool {
        self.letters.iter().any(|l| l.sym == Sym::T)
    }

    pub fn t_exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.sym == Sym::T)
            .map(|l| l.exp)
            .sum()
    }

    /// `max(0, -min prefix t-exponent sum)`: the conjugating power that keeps
    /// every prefix offset nonnegative.
    pub fn max_negative_offset(&self) -> u64 {
        let mut run = 0i64;
        let mut lowest = 0i64;
        for l in &self.letters {
            if l.sym == Sym::T {
                run += l.exp;
                lowest = lowest.min(run);
            }
        }
        lowest.unsigned_abs()
    }
}

/// `b_0 = d c^-1`, `b_i = [b_0, d^i] = c d^-i c^-1 d^i`.
fn b_definition(i: i64) -> Word {
    let b0 = Word::from_letters([(Sym::D, 1), (Sym::C, -1)]);
    if i == 0 {
        b0
    } else {
        Word::commutator(&b0, &Word::letter(Sym::D, i))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.exp == 1 {
                write!(f, "{}", l.sym)?;
            } else {
                write!(f, "{}^{}", l.sym, l.exp)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        p.skip_ws();
        if p.peek() == Some(b'1') {
            p.pos += 1;
            p.skip_ws();
            return match p.peek() {
                None => Ok(Word::empty()),
                Some(_) => Err(p.error("unexpected input after identity word \"1\"")),
            };
        }
        let w = p.word()?;
        p.skip_ws();
        match p.peek() {
            None => Ok(w),
            Some(c) => Err(p.error(&format!("unexpected character {:?}", c as char))),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = Word::empty();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'c' | b'd' | b't' | b'b' | b'[') => {
                    let term = self.term()?;
                    w = w.mul(&term);
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let base = match self.peek() {
            Some(b'c') => {
                self.pos += 1;
                Word::c()
            }
            Some(b'd') => {
                self.pos += 1;
                Word::d()
            }
            Some(b't') => {
                self.pos += 1;
                Word::t()
            }
            Some(b'b') => {
                self.pos += 1;
                let i = self.int()?;
                Word::b(i)
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.skip_ws();
                if self.peek() != Some(b',') {
                    return Err(self.error("expected ',' in commutator"));
                }
                self.pos += 1;
                let v = self.word()?;
                self.skip_ws();
                if self.peek() != Some(b']') {
                    return Err(self.error("expected ']' closing commutator"));
                }
                self.pos += 1;
                Word::commutator(&u, &v)
            }
            _ => return Err(self.error("expected a generator")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            let paren = self.peek() == Some(b'(');
            if paren {
                self.pos += 1;
            }
            let k = self.int()?;
            if paren {
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
            }
            if k == 0 {
                return Err(ParseError {
                    pos: start,
                    msg: "exponent 0 is not allowed".into(),
                });
            }
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        text.parse().map_err(|_| ParseError {
            pos: start,
            msg: format!("expected an integer, found {text:?}"),
        })
    }
}
