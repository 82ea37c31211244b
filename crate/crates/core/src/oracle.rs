//! Brute-force ground truth on small tori.
//!
//! Nothing here uses the constructions in [`crate::paths`] or the congruence
//! theory beyond deciding which targets to search. The search is a plain
//! depth-first enumeration of arc choices over a 64-bit vertex mask, pruned by
//! three local facts about any completion of the current prefix:
//!
//! * every unvisited vertex still needs an entering arc from the unvisited
//!   region or the current vertex (at most one may depend on the current
//!   vertex alone, and then it is the forced next step);
//! * at most one unvisited vertex may lack an exit into the unvisited region,
//!   and it must be an admissible end;
//! * the unvisited region must be reachable from the current vertex.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::torus::{gcd, Generator, TorusSpec, Vertex};
use crate::walk::verify_ham_path;
use crate::word::Word;

pub const DEFAULT_CAP: usize = 32;
pub const HARD_CAP: usize = 64;
pub const CAP_ENV: &str = "TORUS_HAM_CAP";

/// Largest torus the exhaustive search accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP }
    }
}

impl OracleConfig {
    /// Caps above [`DEFAULT_CAP`] need `allow_large`; nothing above
    /// [`HARD_CAP`] is accepted.
    pub fn with_cap(cap: usize, allow_large: bool) -> Result<Self> {
        if cap > HARD_CAP {
            return Err(Error::InvalidArgument(format!(
                "search cap {cap} exceeds the hard limit of {HARD_CAP}"
            )));
        }
        if cap > DEFAULT_CAP && !allow_large {
            return Err(Error::InvalidArgument(format!(
                "search cap {cap} exceeds {DEFAULT_CAP}; pass the large-cap acknowledgement to accept the runtime"
            )));
        }
        Ok(OracleConfig { cap })
    }

    /// Reads [`CAP_ENV`]; the variable counts as the large-cap acknowledgement.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV) {
            Ok(s) => {
                let cap = s.trim().parse().map_err(|_| {
                    Error::InvalidArgument(format!("{CAP_ENV}={s:?} is not a vertex count"))
                })?;
                OracleConfig::with_cap(cap, true)
            }
            Err(_) => Ok(OracleConfig::default()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, spec: &TorusSpec) -> Result<()> {
        if spec.vertex_count() > self.cap {
            return Err(Error::SizeCapExceeded {
                count: spec.vertex_count(),
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Adjacency as bit masks, arcs listed in generator order.
struct BitGraph {
    n: usize,
    out: Vec<Vec<(Generator, usize)>>,
    out_mask: Vec<u64>,
    in_mask: Vec<u64>,
}

impl BitGraph {
    fn new(spec: &TorusSpec) -> Self {
        let n = spec.vertex_count();
        let mut out = vec![Vec::new(); n];
        let mut out_mask = vec![0u64; n];
        let mut in_mask = vec![0u64; n];
        for (u, v) in spec.vertices().enumerate() {
            for g in spec.generators() {
                let w = spec.index_of(&spec.add_step(&v, g));
                out[u].push((g, w));
                out_mask[u] |= 1 << w;
                in_mask[w] |= 1 << u;
            }
        }
        BitGraph {
            n,
            out,
            out_mask,
            in_mask,
        }
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

struct Search<'a> {
    g: &'a BitGraph,
    end_mask: u64,
    labels: Vec<Generator>,
}

enum Prune {
    Dead,
    Forced(usize),
    Free,
}

impl Search<'_> {
    fn prune(&self, current: usize, unvisited: u64) -> Prune {
        let g = self.g;
        if unvisited & self.end_mask == 0 {
            return Prune::Dead;
        }
        let current_bit = 1u64 << current;
        let mut forced = None;
        let mut sinks = 0;
        for u in bits(unvisited) {
            let entering = g.in_mask[u] & (unvisited | current_bit) & !(1 << u);
            if entering == 0 {
                return Prune::Dead;
            }
            if entering == current_bit {
                if forced.is_some() {
                    return Prune::Dead;
                }
                forced = Some(u);
            }
            if g.out_mask[u] & unvisited & !(1 << u) == 0 {
                sinks += 1;
                if sinks > 1 || self.end_mask & (1 << u) == 0 {
                    return Prune::Dead;
                }
            }
        }
        let mut reached = g.out_mask[current] & unvisited;
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= g.out_mask[u];
            }
            next &= unvisited & !reached;
            reached |= next;
            frontier = next;
        }
        if reached != unvisited {
            return Prune::Dead;
        }
        match forced {
            Some(u) => Prune::Forced(u),
            None => Prune::Free,
        }
    }

    fn extend(&mut self, current: usize, unvisited: u64) -> bool {
        if unvisited == 0 {
            return self.end_mask & (1 << current) != 0;
        }
        let forced = match self.prune(current, unvisited) {
            Prune::Dead => return false,
            Prune::Forced(u) => Some(u),
            Prune::Free => None,
        };
        let g = self.g;
        for &(label, next) in &g.out[current] {
            if unvisited & (1 << next) == 0 || forced.is_some_and(|f| f != next) {
                continue;
            }
            self.labels.push(label);
            if self.extend(next, unvisited & !(1 << next)) {
                return true;
            }
            self.labels.pop();
        }
        false
    }
}

fn search(g: &BitGraph, start: usize, end_mask: u64) -> Option<Vec<Generator>> {
    let mut s = Search {
        g,
        end_mask,
        labels: Vec::with_capacity(g.n),
    };
    s.extend(start, g.all() & !(1 << start)).then_some(s.labels)
}

/// Exhaustive decision: is there a hamiltonian path from `start` to `target`?
/// Returns a witness word when there is.
pub fn ham_path_exists(
    spec: &TorusSpec,
    start: &Vertex,
    target: &Vertex,
    cfg: &OracleConfig,
) -> Result<Option<Word<Generator>>> {
    cfg.check(spec)?;
    spec.check(start)?;
    spec.check(target)?;
    if start == target {
        return Ok(None);
    }
    let g = BitGraph::new(spec);
    let (s, t) = (spec.index_of(start), spec.index_of(target));
    Ok(search(&g, s, 1 << t).map(Word::from_symbols))
}

/// Exhaustive search for a hamiltonian cycle through 0.
pub fn ham_cycle_search(spec: &TorusSpec, cfg: &OracleConfig) -> Result<Option<Word<Generator>>> {
    cfg.check(spec)?;
    let g = BitGraph::new(spec);
    let zero = spec.index_of(&spec.zero());
    Ok(search(&g, zero, g.in_mask[zero]).map(|mut labels| {
        let last = spec.vertex_at(labels.iter().fold(zero, |v, l| g.out[v][l.0].1));
        let closing = spec
            .generators()
            .find(|&x| spec.add_step(&last, x).is_zero())
            .expect("end vertex has an arc to 0");
        labels.push(closing);
        Word::from_symbols(labels)
    }))
}

/// Largest torus handled by [`endpoint_set_dp`].
pub const DP_CAP: usize = 20;

/// Every end vertex of a hamiltonian path from `start`, by dynamic
/// programming over visited subsets. Independent of the depth-first search.
pub fn endpoint_set_dp(spec: &TorusSpec, start: &Vertex) -> Result<Vec<Vertex>> {
    if spec.vertex_count() > DP_CAP {
        return Err(Error::SizeCapExceeded {
            count: spec.vertex_count(),
            cap: DP_CAP,
        });
    }
    spec.check(start)?;
    let g = BitGraph::new(spec);
    let n = g.n;
    let s = spec.index_of(start);
    // ends[mask] = set of vertices where a path from `start` covering `mask` can end
    let mut ends = vec![0u32; 1 << n];
    ends[1 << s] = 1 << s;
    for mask in 0..(1usize << n) {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        for v in bits(e as u64) {
            for u in bits(g.out_mask[v] & !(mask as u64)) {
                ends[mask | (1 << u)] |= 1 << u;
            }
        }
    }
    Ok(bits(ends[(1 << n) - 1] as u64)
        .map(|i| spec.vertex_at(i))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterexampleKind {
    /// Satisfies the congruence but no hamiltonian path ends there.
    PredictedUnreachable,
    /// A hamiltonian path ends there despite the congruence failing.
    ReachableUnpredicted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub vertex: Vertex,
    pub kind: CounterexampleKind,
}

/// Which ends of hamiltonian paths from `start` exist, against the congruence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndpointReport {
    pub spec: TorusSpec,
    pub start: Vertex,
    pub gcd: u64,
    pub reachable: Vec<Vertex>,
    pub predicted: Vec<Vertex>,
    pub agreement: bool,
    pub counterexamples: Vec<Counterexample>,
    /// Whether targets failing the congruence were searched too, rather than
    /// excluded because the congruence is necessary.
    pub negatives_searched: bool,
    /// For two coordinates: whether the torus has a hamiltonian cycle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hamiltonian_cycle: Option<bool>,
}

impl EndpointReport {
    /// `reachable` is contained in `predicted`.
    pub fn necessity_holds(&self) -> bool {
        self.counterexamples
            .iter()
            .all(|c| c.kind != CounterexampleKind::ReachableUnpredicted)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EndpointOptions {
    pub search_negatives: bool,
}

pub fn endpoint_set(
    spec: &TorusSpec,
    start: &Vertex,
    cfg: &OracleConfig,
    opts: EndpointOptions,
) -> Result<EndpointReport> {
    cfg.check(spec)?;
    spec.check(start)?;
    let g = BitGraph::new(spec);
    let s = spec.index_of(start);
    let targets: Vec<(Vertex, bool)> = spec
        .vertices()
        .filter(|v| v != start)
        .map(|v| {
            let predicted = spec.ham_path_congruence_ok(start, &v);
            (v, predicted)
        })
        .filter(|(_, predicted)| *predicted || opts.search_negatives)
        .collect();

    let found: Vec<(Vertex, bool, Option<Vec<Generator>>)> = targets
        .into_par_iter()
        .map(|(v, predicted)| {
            let labels = search(&g, s, 1 << spec.index_of(&v));
            (v, predicted, labels)
        })
        .collect();

    let mut reachable = Vec::new();
    let mut counterexamples = Vec::new();
    for (v, predicted, labels) in found {
        if let Some(labels) = labels {
            let cert = verify_ham_path(spec, start, &v, Word::from_symbols(labels));
            if let Some(d) = cert.defect() {
                return Err(Error::Internal(format!(
                    "search witness for ({v}) rejected: {d}"
                )));
            }
            if !predicted {
                counterexamples.push(Counterexample {
                    vertex: v.clone(),
                    kind: CounterexampleKind::ReachableUnpredicted,
                });
            }
            reachable.push(v);
        } else if predicted {
            counterexamples.push(Counterexample {
                vertex: v,
                kind: CounterexampleKind::PredictedUnreachable,
            });
        }
    }
    let predicted: Vec<Vertex> = spec
        .vertices()
        .filter(|v| v != start && spec.ham_path_congruence_ok(start, v))
        .collect();
    let hamiltonian_cycle = match spec.moduli() {
        &[m1, m2] => Some(ham_cycle_exists_2d(m1, m2)),
        _ => None,
    };
    Ok(EndpointReport {
        spec: spec.clone(),
        start: start.clone(),
        gcd: spec.gcd(),
        agreement: counterexamples.is_empty(),
        reachable,
        predicted,
        counterexamples,
        negatives_searched: opts.search_negatives,
        hamiltonian_cycle,
    })
}

/// `C_{m1} x C_{m2}` has a hamiltonian cycle iff `s1 m1 + s2 m2 = m1 m2` for
/// some coprime positive `s1, s2`. Since `s2 >= 1`, `s1 < m2`.
pub fn ham_cycle_exists_2d(m1: u64, m2: u64) -> bool {
    two_cycle_coefficients(m1, m2).is_some()
}

/// The first coprime pair `(s1, s2)` solving `s1 m1 + s2 m2 = m1 m2`.
pub fn two_cycle_coefficients(m1: u64, m2: u64) -> Option<(u64, u64)> {
    let total = m1 * m2;
    (1..m2).find_map(|s1| {
        let rest = total - s1 * m1;
        (rest % m2 == 0)
            .then(|| (s1, rest / m2))
            .filter(|&(s1, s2)| s2 >= 1 && gcd(s1, s2) == 1)
    })
}

/// Endpoint reports from 0 for each spec, in input order.
pub fn conjecture_scan(specs: &[TorusSpec], cfg: &OracleConfig) -> Result<Vec<EndpointReport>> {
    if let Some(s) = specs.iter().find(|s| s.dims() < 3) {
        return Err(Error::InvalidArgument(format!(
            "conjecture scan needs k >= 3, got {s}"
        )));
    }
    scan_specs(specs, cfg)
}

pub(crate) fn scan_specs(specs: &[TorusSpec], cfg: &OracleConfig) -> Result<Vec<EndpointReport>> {
    specs
        .par_iter()
        .map(|s| endpoint_set(s, &s.zero(), cfg, EndpointOptions::default()))
        .collect()
}

/// All tori with `k` coordinates, nondecreasing cycle lengths `>= 2` and at
/// most `max_vertices` vertices, in lexicographic order.
pub fn mixed_specs(k: usize, max_vertices: usize) -> Vec<TorusSpec> {
    fn rec(k: usize, min: u64, budget: usize, prefix: &mut Vec<u64>, out: &mut Vec<TorusSpec>) {
        if prefix.len() == k {
            out.push(TorusSpec::new(prefix.clone()).expect("moduli >= 2"));
            return;
        }
        let remaining = (k - prefix.len() - 1) as u32;
        let mut m = min;
        // the remaining coordinates need at least m each
        while (m as usize)
            .checked_pow(remaining + 1)
            .is_some_and(|p| p <= budget)
        {
            prefix.push(m);
            rec(k, m, budget / m as usize, prefix, out);
            prefix.pop();
            m += 1;
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, 2, max_vertices, &mut Vec::new(), &mut out);
    }
    out
}
