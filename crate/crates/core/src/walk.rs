//! Tracing words through a torus, and the hamiltonian path / cycle verifiers
//! that turn a word into a certificate.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::torus::{Generator, Permutation, TorusSpec, Vertex};
use crate::word::{Label, Symbols, Word};

/// Assigns a group element to each arc label.
pub trait Steps<L> {
    fn spec(&self) -> &TorusSpec;

    fn displacement(&self, label: L) -> Option<Vertex>;

    fn apply(&self, v: &mut Vertex, label: L);
}

impl Steps<Generator> for TorusSpec {
    fn spec(&self) -> &TorusSpec {
        self
    }

    fn displacement(&self, g: Generator) -> Option<Vertex> {
        (g.0 < self.dims()).then(|| {
            let mut v = self.zero();
            v.0[g.0] = 1;
            v
        })
    }

    fn apply(&self, v: &mut Vertex, g: Generator) {
        self.step_in_place(v, g)
    }
}

/// Arbitrary displacements, e.g. `a = (1, 0)`, `b = (1, 1)` in `Z_m x Z_N`.
#[derive(Debug, Clone)]
pub struct StepSet<L> {
    spec: TorusSpec,
    steps: BTreeMap<L, Vertex>,
}

impl<L: Label> StepSet<L> {
    pub fn new(spec: TorusSpec, steps: impl IntoIterator<Item = (L, Vertex)>) -> Result<Self> {
        let steps: BTreeMap<L, Vertex> = steps.into_iter().collect();
        for v in steps.values() {
            spec.check(v)?;
        }
        Ok(StepSet { spec, steps })
    }
}

impl<L: Label> Steps<L> for StepSet<L> {
    fn spec(&self) -> &TorusSpec {
        &self.spec
    }

    fn displacement(&self, label: L) -> Option<Vertex> {
        self.steps.get(&label).cloned()
    }

    fn apply(&self, v: &mut Vertex, label: L) {
        let d = &self.steps[&label];
        for ((c, &dc), &m) in v.0.iter_mut().zip(&d.0).zip(self.spec.moduli()) {
            *c = (*c + dc) % m;
        }
    }
}

fn check_labels<L: Label, S: Steps<L>>(steps: &S, word: &Word<L>) -> Result<()> {
    for l in word.labels() {
        if steps.displacement(l).is_none() {
            return Err(Error::UnknownSymbol(l.to_string()));
        }
    }
    Ok(())
}

/// Streaming trace `v_0, v_1, ..., v_n` with `v_i = v_0 + a_1 + ... + a_i`.
pub struct Walk<'a, L, S> {
    steps: &'a S,
    symbols: Symbols<'a, L>,
    current: Option<Vertex>,
    started: bool,
}

impl<L: Label, S: Steps<L>> Iterator for Walk<'_, L, S> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if !self.started {
            self.started = true;
            return self.current.clone();
        }
        let label = self.symbols.next()?;
        let v = self.current.as_mut()?;
        self.steps.apply(v, label);
        Some(v.clone())
    }
}

pub fn walk<'a, L: Label, S: Steps<L>>(
    steps: &'a S,
    start: &Vertex,
    word: &'a Word<L>,
) -> Result<Walk<'a, L, S>> {
    steps.spec().check(start)?;
    check_labels(steps, word)?;
    Ok(Walk {
        steps,
        symbols: word.symbols(),
        current: Some(start.clone()),
        started: false,
    })
}

/// An ordered vertex list produced by a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace(pub Vec<Vertex>);

impl Trace {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn last(&self) -> &Vertex {
        self.0.last().expect("a trace always contains its start")
    }
}

pub fn trace<L: Label, S: Steps<L>>(steps: &S, start: &Vertex, word: &Word<L>) -> Result<Trace> {
    Ok(Trace(walk(steps, start, word)?.collect()))
}

/// Final vertex of the trace, computed from per-label counts without expanding.
pub fn endpoint<L: Label, S: Steps<L>>(
    steps: &S,
    start: &Vertex,
    word: &Word<L>,
) -> Result<Vertex> {
    let spec = steps.spec();
    spec.check(start)?;
    let mut acc: Vec<u128> = start.0.iter().map(|&c| c as u128).collect();
    for (label, count) in word.counts() {
        let d = steps
            .displacement(label)
            .ok_or_else(|| Error::UnknownSymbol(label.to_string()))?;
        for ((a, &dc), &m) in acc.iter_mut().zip(&d.0).zip(spec.moduli()) {
            let m = m as u128;
            *a = (*a + (dc as u128 % m) * (count as u128 % m)) % m;
        }
    }
    Ok(Vertex(acc.into_iter().map(|c| c as u64).collect()))
}

/// Why a word failed to certify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Defect {
    InvalidVertex {
        message: String,
    },
    InvalidSymbol {
        symbol: String,
    },
    LengthMismatch {
        expected: u64,
        found: u64,
    },
    /// The trace revisits `vertex` at step `position`; it was first seen at `first_visit`.
    RepeatedVertex {
        vertex: Vertex,
        position: u64,
        first_visit: u64,
    },
    EndpointMismatch {
        expected: Vertex,
        found: Vertex,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::InvalidVertex { message } => write!(f, "invalid vertex: {message}"),
            Defect::InvalidSymbol { symbol } => write!(f, "symbol {symbol} is not a generator of this torus"),
            Defect::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: word has {found} steps, a hamiltonian walk needs {expected}")
            }
            Defect::RepeatedVertex { vertex, position, first_visit } => write!(
                f,
                "repeated vertex ({vertex}) at trace index {position}, first visited at index {first_visit}"
            ),
            Defect::EndpointMismatch { expected, found } => {
                write!(f, "endpoint mismatch: trace ends at ({found}), expected ({expected})")
            }
        }
    }
}

/// Walks `word` from `start` with an exact visited table, stopping at the
/// first repeat. Returns the final vertex. `allow_closing` permits the last
/// step to land back on `start`.
fn exact_walk(
    spec: &TorusSpec,
    start: &Vertex,
    word: &Word<Generator>,
    allow_closing: bool,
) -> std::result::Result<Vertex, Defect> {
    let n = spec.vertex_count();
    let len = word.flat_length();
    let mut first_seen = vec![u64::MAX; n];
    let mut v = start.clone();
    let mut idx = spec.index_of(&v);
    let start_idx = idx;
    first_seen[idx] = 0;
    for (pos, g) in word.symbols().enumerate() {
        let pos = pos as u64 + 1;
        let i = g.0;
        let c = &mut v.0[i];
        *c += 1;
        if *c == spec.modulus(i) {
            *c = 0;
            idx -= (spec.modulus(i) as usize - 1) * spec.stride(i);
        } else {
            idx += spec.stride(i);
        }
        if first_seen[idx] != u64::MAX {
            if allow_closing && pos == len && idx == start_idx {
                continue;
            }
            return Err(Defect::RepeatedVertex {
                vertex: v,
                position: pos,
                first_visit: first_seen[idx],
            });
        }
        first_seen[idx] = pos;
    }
    Ok(v)
}

fn precheck(
    spec: &TorusSpec,
    vertices: &[&Vertex],
    word: &Word<Generator>,
) -> std::result::Result<(), Defect> {
    for v in vertices {
        spec.check(v).map_err(|e| Defect::InvalidVertex {
            message: e.to_string(),
        })?;
    }
    if let Some(g) = word.labels().into_iter().find(|g| g.0 >= spec.dims()) {
        return Err(Defect::InvalidSymbol {
            symbol: g.to_string(),
        });
    }
    Ok(())
}

/// An endpoint-checked hamiltonian path. `verified` is true only when the
/// trace visits every vertex exactly once and ends at `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCertificate {
    spec: TorusSpec,
    start: Vertex,
    target: Vertex,
    word: Word<Generator>,
    verified: bool,
    defect: Option<Defect>,
}

impl PathCertificate {
    pub fn spec(&self) -> &TorusSpec {
        &self.spec
    }

    pub fn start(&self) -> &Vertex {
        &self.start
    }

    pub fn target(&self) -> &Vertex {
        &self.target
    }

    pub fn word(&self) -> &Word<Generator> {
        &self.word
    }

    pub fn into_word(self) -> Word<Generator> {
        self.word
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn defect(&self) -> Option<&Defect> {
        self.defect.as_ref()
    }

    pub fn length(&self) -> u64 {
        self.word.flat_length()
    }

    /// The same word started at `start + shift`; re-verified.
    pub fn translated(&self, shift: &Vertex) -> PathCertificate {
        let start = self.spec.add(&self.start, shift);
        let target = self.spec.add(&self.target, shift);
        verify_ham_path(&self.spec, &start, &target, self.word.clone())
    }

    pub fn vertices(&self) -> Result<Trace> {
        trace(&self.spec, &self.start, &self.word)
    }
}

pub fn verify_ham_path(
    spec: &TorusSpec,
    start: &Vertex,
    target: &Vertex,
    word: Word<Generator>,
) -> PathCertificate {
    let result = precheck(spec, &[start, target], &word).and_then(|()| {
        let expected = spec.vertex_count() as u64 - 1;
        let found = word.flat_length();
        if found != expected {
            return Err(Defect::LengthMismatch { expected, found });
        }
        let end = exact_walk(spec, start, &word, false)?;
        if &end != target {
            return Err(Defect::EndpointMismatch {
                expected: target.clone(),
                found: end,
            });
        }
        Ok(())
    });
    PathCertificate {
        spec: spec.clone(),
        start: start.clone(),
        target: target.clone(),
        word,
        verified: result.is_ok(),
        defect: result.err(),
    }
}

/// A verified hamiltonian cycle based at 0. Only [`verify_ham_cycle`] builds one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    spec: TorusSpec,
    word: Word<Generator>,
}

pub fn verify_ham_cycle(
    spec: &TorusSpec,
    word: Word<Generator>,
) -> std::result::Result<CycleWitness, Defect> {
    let zero = spec.zero();
    precheck(spec, &[], &word)?;
    let expected = spec.vertex_count() as u64;
    let found = word.flat_length();
    if found != expected {
        return Err(Defect::LengthMismatch { expected, found });
    }
    let end = exact_walk(spec, &zero, &word, true)?;
    if end != zero {
        return Err(Defect::EndpointMismatch {
            expected: zero,
            found: end,
        });
    }
    Ok(CycleWitness {
        spec: spec.clone(),
        word,
    })
}

impl CycleWitness {
    pub fn spec(&self) -> &TorusSpec {
        &self.spec
    }

    pub fn base(&self) -> Vertex {
        self.spec.zero()
    }

    pub fn word(&self) -> &Word<Generator> {
        &self.word
    }

    pub fn into_word(self) -> Word<Generator> {
        self.word
    }

    pub fn len(&self) -> usize {
        self.spec.vertex_count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The arc labels `c_{j+1} - c_j` in order.
    pub fn arc_labels(&self) -> Vec<Generator> {
        self.word.expand()
    }

    /// `c_0, ..., c_{N-1}`.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let n = self.len();
        walk(&self.spec, &self.spec.zero(), &self.word)
            .expect("witness is verified")
            .take(n)
    }

    /// `d_C(0, v)` for every vertex, indexed by [`TorusSpec::index_of`].
    pub fn distance_table(&self) -> Vec<u64> {
        let mut table = vec![0; self.len()];
        for (j, v) in self.vertices().enumerate() {
            table[self.spec.index_of(&v)] = j as u64;
        }
        table
    }

    /// Conjugates the cycle by a coordinate permutation; the result passes
    /// through `perm.apply(v)` wherever the original passed through `v`.
    pub fn permuted(&self, perm: &Permutation) -> Result<CycleWitness> {
        self.spec.check_permutation(perm)?;
        let word = self.word.map_labels(&mut |g| perm.apply_generator(g));
        verify_ham_cycle(&self.spec, word)
            .map_err(|d| Error::Internal(format!("permuted cycle failed: {d}")))
    }
}

/// Position of `v` along the cycle, `0 <= d < N`.
pub fn cycle_distance(c: &CycleWitness, v: &Vertex) -> Result<u64> {
    c.spec.check(v)?;
    c.vertices()
        .position(|u| &u == v)
        .map(|j| j as u64)
        .ok_or_else(|| Error::InvalidArgument(format!("({v}) is not on the cycle")))
}
