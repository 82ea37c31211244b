//! Arc-label words with nested integer powers.
//!
//! `(a^2, b)^3` is stored as `Power(Concat[Power(a, 2), b], 3)` and expands to
//! `a a b a a b a a b`. Expansion is streaming: [`Word::symbols`] walks the
//! tree with an explicit stack, so a word whose flat length is the size of a
//! torus is never materialised as a list.

mod format;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use crate::torus::Generator;

/// An arc label. Tokens in the text form are one ASCII letter optionally
/// followed by digits.
pub trait Label:
    Copy + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn parse_token(token: &str) -> Option<Self>;
}

impl Label for Generator {
    fn parse_token(token: &str) -> Option<Self> {
        let digits = token.strip_prefix('x')?;
        match digits.parse::<usize>() {
            Ok(n) if n >= 1 && !digits.starts_with('0') => Some(Generator(n - 1)),
            _ => None,
        }
    }
}

/// An abstract letter such as the `a`, `b` of the prism digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub char);

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Label for Letter {
    fn parse_token(token: &str) -> Option<Self> {
        let mut chars = token.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_lowercase() => Some(Letter(c)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word<L> {
    Symbol(L),
    Concat(Vec<Word<L>>),
    Power(Box<Word<L>>, u64),
}

impl<L: Label> Word<L> {
    pub fn empty() -> Self {
        Word::Concat(Vec::new())
    }

    pub fn sym(label: L) -> Self {
        Word::Symbol(label)
    }

    pub fn concat(items: impl IntoIterator<Item = Word<L>>) -> Self {
        Word::Concat(items.into_iter().collect())
    }

    pub fn pow(self, exponent: u64) -> Self {
        Word::Power(Box::new(self), exponent)
    }

    /// Run-length compresses a flat symbol stream: maximal runs of one label
    /// become `Power(label, run)`.
    pub fn from_symbols(symbols: impl IntoIterator<Item = L>) -> Self {
        let mut items = Vec::new();
        let mut run: Option<(L, u64)> = None;
        for s in symbols {
            match &mut run {
                Some((label, n)) if *label == s => *n += 1,
                _ => {
                    if let Some((label, n)) = run.take() {
                        items.push(Self::run(label, n));
                    }
                    run = Some((s, 1));
                }
            }
        }
        if let Some((label, n)) = run {
            items.push(Self::run(label, n));
        }
        Word::Concat(items)
    }

    fn run(label: L, n: u64) -> Self {
        if n == 1 {
            Word::Symbol(label)
        } else {
            Word::Symbol(label).pow(n)
        }
    }

    /// Number of symbols after full expansion (saturating).
    pub fn flat_length(&self) -> u64 {
        match self {
            Word::Symbol(_) => 1,
            Word::Concat(items) => items
                .iter()
                .fold(0u64, |acc, w| acc.saturating_add(w.flat_length())),
            Word::Power(inner, e) => inner.flat_length().saturating_mul(*e),
        }
    }

    /// How often each label occurs in the expansion, computed on the tree.
    pub fn counts(&self) -> BTreeMap<L, u64> {
        let mut out = BTreeMap::new();
        self.accumulate_counts(1, &mut out);
        out
    }

    fn accumulate_counts(&self, factor: u64, out: &mut BTreeMap<L, u64>) {
        match self {
            Word::Symbol(l) => {
                let c = out.entry(*l).or_insert(0);
                *c = c.saturating_add(factor);
            }
            Word::Concat(items) => items.iter().for_each(|w| w.accumulate_counts(factor, out)),
            Word::Power(inner, e) => {
                if *e > 0 {
                    inner.accumulate_counts(factor.saturating_mul(*e), out)
                }
            }
        }
    }

    /// Distinct labels appearing anywhere in the tree, including under
    /// zero exponents.
    pub fn labels(&self) -> Vec<L> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_labels(&self, out: &mut Vec<L>) {
        match self {
            Word::Symbol(l) => out.push(*l),
            Word::Concat(items) => items.iter().for_each(|w| w.collect_labels(out)),
            Word::Power(inner, _) => inner.collect_labels(out),
        }
    }

    pub fn map_labels<M: Label>(&self, f: &mut impl FnMut(L) -> M) -> Word<M> {
        match self {
            Word::Symbol(l) => Word::Symbol(f(*l)),
            Word::Concat(items) => Word::Concat(items.iter().map(|w| w.map_labels(f)).collect()),
            Word::Power(inner, e) => Word::Power(Box::new(inner.map_labels(f)), *e),
        }
    }

    pub fn symbols(&self) -> Symbols<'_, L> {
        Symbols {
            stack: vec![Frame::Concat(std::slice::from_ref(self))],
        }
    }

    pub fn expand(&self) -> Vec<L> {
        self.symbols().collect()
    }
}

impl Word<Generator> {
    /// Flat generator indices, 0-based.
    pub fn to_flat(&self) -> Vec<usize> {
        self.symbols().map(Generator::index).collect()
    }

    pub fn from_flat(indices: &[usize]) -> Self {
        Word::from_symbols(indices.iter().map(|&i| Generator(i)))
    }
}

enum Frame<'a, L> {
    Concat(&'a [Word<L>]),
    Power { inner: &'a Word<L>, remaining: u64 },
}

/// Left-to-right expansion of a [`Word`]; memory is bounded by the tree depth.
pub struct Symbols<'a, L> {
    stack: Vec<Frame<'a, L>>,
}

impl<'a, L: Copy> Iterator for Symbols<'a, L> {
    type Item = L;

    fn next(&mut self) -> Option<L> {
        loop {
            let node = match self.stack.last_mut()? {
                Frame::Concat(items) => match items.split_first() {
                    Some((first, rest)) => {
                        *items = rest;
                        first
                    }
                    None => {
                        self.stack.pop();
                        continue;
                    }
                },
                Frame::Power { inner, remaining } => {
                    if *remaining == 0 {
                        self.stack.pop();
                        continue;
                    }
                    *remaining -= 1;
                    *inner
                }
            };
            match node {
                Word::Symbol(l) => return Some(*l),
                Word::Concat(items) => self.stack.push(Frame::Concat(items)),
                Word::Power(inner, e) => self.stack.push(Frame::Power {
                    inner,
                    remaining: *e,
                }),
            }
        }
    }
}
