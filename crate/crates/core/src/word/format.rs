//! Nested text form of words, e.g. `((a^1 b^2)^1 (a^1 b a)^6 (a^1 b^2)^1 a^1 b)`.
//!
//! Grammar (whitespace and commas separate items):
//!
//! ```text
//! word    := item*
//! item    := primary ('^' integer)*
//! primary := label | '(' word ')'
//! ```
//!
//! A parenthesised group always parses to `Concat`, so rendering and parsing
//! round-trip exactly.

use std::fmt;
use std::str::FromStr;

use super::{Label, Word};
use crate::error::{Error, Result};

impl<L: Label> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Symbol(l) => write!(f, "{l}"),
            Word::Concat(items) => {
                f.write_str("(")?;
                for (i, w) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{w}")?;
                }
                f.write_str(")")
            }
            Word::Power(inner, e) => match **inner {
                Word::Power(..) => write!(f, "({inner})^{e}"),
                _ => write!(f, "{inner}^{e}"),
            },
        }
    }
}

impl<L: Label> FromStr for Word<L> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut items = p.sequence()?;
        p.skip_separators();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected ')'"));
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Word::Concat(items)
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b',')
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn sequence<L: Label>(&mut self) -> Result<Vec<Word<L>>> {
        let mut items = Vec::new();
        loop {
            self.skip_separators();
            match self.peek() {
                None | Some(b')') => return Ok(items),
                _ => items.push(self.item()?),
            }
        }
    }

    fn item<L: Label>(&mut self) -> Result<Word<L>> {
        let mut w = self.primary()?;
        loop {
            let save = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
                self.pos += 1;
            }
            if self.peek() != Some(b'^') {
                self.pos = save;
                return Ok(w);
            }
            self.pos += 1;
            while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
                self.pos += 1;
            }
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected an exponent after '^'"));
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e = text.parse::<u64>().map_err(|_| Error::Parse {
                position: start,
                message: format!("exponent {text} out of range"),
            })?;
            w = w.pow(e);
        }
    }

    fn primary<L: Label>(&mut self) -> Result<Word<L>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let items = self.sequence()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("unclosed '('"));
                }
                self.pos += 1;
                Ok(Word::Concat(items))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let token = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                L::parse_token(token).map(Word::Symbol).ok_or(Error::Parse {
                    position: start,
                    message: format!("unknown symbol {token:?}"),
                })
            }
            Some(c) => Err(self.error(format!("unexpected character {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
