//! Hamiltonian paths from `u` to `v` in `(Z_m)^k`, `k >= 3`.
//!
//! Every path from 0 ends in `H - x1`, where `H` is the arc-forcing subgroup
//! `{h : h_1 + ... + h_k == 0 (mod m)}`. Conversely, for a target `v` in
//! `H - x1` the construction is:
//!
//! 1. Take a hamiltonian cycle `c_0, ..., c_N` (`N = m^{k-1}`) of `H` with the
//!    generators `x_i - x1`, chosen so `v + x1` sits at an even position `2n`.
//!    `H` with those generators is isomorphic to `(Z_m)^{k-1}` with its
//!    standard generators ([`ArcForcingIso`]).
//! 2. Map `Z_m x Z_N` into `(Z_m)^k` by `(i, j) -> i x1 + c_j`. Under this map
//!    `a = (1, 0)` becomes `x1` and `b = (1, 1)` becomes `x1 + (c_{j+1} - c_j)`,
//!    which is again a standard generator.
//! 3. Push the explicit path [`prism_path_word`] from `0` to `(-1, 2n)` through
//!    the map; it ends at `c_{2n} - x1 = v`.
//!
//! For odd `m` the cycle comes from [`even_distance_cycle_power`]. For even `m`
//! any cycle works once a coordinate permutation makes `v_1` odd, because the
//! parity of `h_1` two-colours the cycle.

use serde::Serialize;

use crate::cycles::{even_distance_cycle_power, standard_cycle};
use crate::error::{Error, Result};
use crate::torus::{Generator, Permutation, TorusSpec, Vertex};
use crate::walk::{cycle_distance, verify_ham_path, CycleWitness, PathCertificate, StepSet};
use crate::word::{Letter, Word};

pub const A: Letter = Letter('a');
pub const B: Letter = Letter('b');

/// `psi : (Z_m)^{k-1} -> H`, `psi(w) = sum_i w_i (x_{i+1} - x1)`, with inverse
/// `h -> (h_2, ..., h_k)`.
#[derive(Debug, Clone)]
pub struct ArcForcingIso {
    m: u64,
    full: TorusSpec,
    reduced: TorusSpec,
}

impl ArcForcingIso {
    pub fn new(m: u64, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!(
                "the arc-forcing subgroup needs k >= 2, got {k}"
            )));
        }
        Ok(ArcForcingIso {
            m,
            full: TorusSpec::power(m, k)?,
            reduced: TorusSpec::power(m, k - 1)?,
        })
    }

    /// `(Z_m)^k`.
    pub fn full(&self) -> &TorusSpec {
        &self.full
    }

    /// `(Z_m)^{k-1}`.
    pub fn reduced(&self) -> &TorusSpec {
        &self.reduced
    }

    pub fn contains(&self, h: &Vertex) -> bool {
        self.full.check(h).is_ok() && self.full.residue_sum(h, self.m) == 0
    }

    pub fn forward(&self, w: &Vertex) -> Result<Vertex> {
        self.reduced.check(w)?;
        let s = self.reduced.residue_sum(w, self.m);
        let mut coords = vec![(self.m - s) % self.m];
        coords.extend_from_slice(w.coords());
        Ok(Vertex(coords))
    }

    pub fn backward(&self, h: &Vertex) -> Result<Vertex> {
        if !self.contains(h) {
            return Err(Error::NotInSubgroup(h.to_string()));
        }
        Ok(Vertex(h.coords()[1..].to_vec()))
    }

    /// The image `x_{i+2} - x1` of the generator `e_{i+1}` of `(Z_m)^{k-1}`.
    pub fn generator_image(&self, e: Generator) -> Result<Vertex> {
        let gen = self.reduced.generator(e.0)?;
        let mut coords = vec![0; self.full.dims()];
        coords[0] = self.m - 1;
        coords[gen.0 + 1] = 1;
        Ok(Vertex(coords))
    }
}

fn check_prism(m: u64, big_n: u64, n: u64) -> Result<()> {
    if m < 2 || big_n < 2 {
        return Err(Error::InvalidArgument(format!(
            "prism needs m, N >= 2, got m={m}, N={big_n}"
        )));
    }
    if 2 * n >= big_n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= n < N/2, got n={n}, N={big_n}"
        )));
    }
    Ok(())
}

/// `((a^{m-2}, b^2)^n, (a^{m-2}, b, a)^{N-2n-1}, (a^{m-2}, b^2)^n, a^{m-2}, b)`,
/// a hamiltonian path from 0 to `(-1, 2n)` in `Z_m x Z_N` with arcs
/// `a = (1, 0)`, `b = (1, 1)`.
pub fn prism_path_word(m: u64, big_n: u64, n: u64) -> Result<Word<Letter>> {
    check_prism(m, big_n, n)?;
    let a = || Word::sym(A);
    let b = || Word::sym(B);
    let double = || Word::concat([a().pow(m - 2), b().pow(2)]).pow(n);
    Ok(Word::concat([
        double(),
        Word::concat([a().pow(m - 2), b(), a()]).pow(big_n - 2 * n - 1),
        double(),
        a().pow(m - 2),
        b(),
    ]))
}

/// The step set `{a = (1, 0), b = (1, 1)}` of `Z_m x Z_N`.
pub fn prism_steps(m: u64, big_n: u64) -> Result<StepSet<Letter>> {
    let spec = TorusSpec::new(vec![m, big_n])?;
    let a = spec.vertex(vec![1, 0])?;
    let b = spec.vertex(vec![1, 1])?;
    StepSet::new(spec, [(A, a), (B, b)])
}

/// Pushes the prism path through `(i, j) -> i x1 + c_j`, where `c` is `inner`
/// (a cycle of `(Z_m)^{k-1}`) carried into `H` by [`ArcForcingIso`]. The
/// result runs from 0 to `c_{2n} - x1`.
pub fn prop33_path(m: u64, k: usize, inner: &CycleWitness, n: u64) -> Result<PathCertificate> {
    let iso = ArcForcingIso::new(m, k)?;
    if inner.spec() != iso.reduced() {
        return Err(Error::InvalidArgument(format!(
            "inner cycle lives on {}, expected {}",
            inner.spec(),
            iso.reduced()
        )));
    }
    let big_n = inner.len() as u64;
    let prism = prism_path_word(m, big_n, n)?;
    let arcs = inner.arc_labels();

    let mut cursor = 0usize;
    let word = Word::from_symbols(prism.symbols().map(|l| {
        if l == A {
            Generator(0)
        } else {
            // x1 + (x_{t+2} - x1)
            let g = Generator(arcs[cursor].0 + 1);
            cursor = (cursor + 1) % arcs.len();
            g
        }
    }));
    if cursor != ((big_n + 2 * n) % big_n) as usize {
        return Err(Error::Internal(format!(
            "cursor ended at {cursor}, expected {}",
            (big_n + 2 * n) % big_n
        )));
    }

    let c_2n = inner
        .vertices()
        .nth(2 * n as usize)
        .ok_or_else(|| Error::Internal("cycle shorter than 2n".into()))?;
    let full = iso.full();
    let target = full.sub(
        &iso.forward(&c_2n)?,
        &full.add_step(&full.zero(), Generator(0)),
    );
    let cert = verify_ham_path(full, &full.zero(), &target, word);
    match cert.defect() {
        None => Ok(cert),
        Some(d) => Err(Error::Internal(format!(
            "prism path on {full} failed verification: {d}"
        ))),
    }
}

fn check_target(m: u64, k: usize, v: &Vertex) -> Result<TorusSpec> {
    let spec = TorusSpec::power(m, k)?;
    spec.check(v)?;
    if spec.residue_sum(v, m) != m - 1 {
        return Err(Error::InvalidArgument(format!(
            "({v}) is not in H - x1: coordinate sum is not -1 mod {m}"
        )));
    }
    Ok(spec)
}

/// Odd `m`: the cycle of `(Z_m)^{k-1}` is chosen so `psi^{-1}(v + x1)` lies at
/// an even distance.
pub fn main_path_odd(m: u64, k: usize, v: &Vertex) -> Result<PathCertificate> {
    if m % 2 == 0 {
        return Err(Error::OddModulusRequired(m));
    }
    if k < 3 {
        return Err(Error::UnsupportedDimension(k));
    }
    let spec = check_target(m, k, v)?;
    let iso = ArcForcingIso::new(m, k)?;
    let h = spec.add_step(v, Generator(0));
    let w = iso.backward(&h)?;
    let cycle = even_distance_cycle_power(m, k - 1, &w)?;
    ends_at(prop33_path(m, k, &cycle.witness, cycle.distance / 2)?, v)
}

fn ends_at(cert: PathCertificate, v: &Vertex) -> Result<PathCertificate> {
    if cert.target() != v {
        return Err(Error::Internal(format!(
            "path ends at ({}), expected ({v})",
            cert.target()
        )));
    }
    Ok(cert)
}

/// Even `m`: relabel so `v_1` is odd, then any cycle of `(Z_m)^{k-1}` puts
/// `v + x1` at an even distance.
pub fn main_path_even(m: u64, k: usize, v: &Vertex) -> Result<PathCertificate> {
    if m % 2 != 0 {
        return Err(Error::InvalidArgument(format!("modulus {m} is odd")));
    }
    if k < 3 {
        return Err(Error::UnsupportedDimension(k));
    }
    let spec = check_target(m, k, v)?;
    let odd = v.coords().iter().position(|c| c % 2 == 1).ok_or_else(|| {
        Error::Internal(format!(
            "({v}) has coordinate sum -1 mod {m} but no odd coordinate"
        ))
    })?;
    let perm = Permutation::transposition(k, odd, 0);
    let moved = spec.permute_coords(v, &perm)?;

    let iso = ArcForcingIso::new(m, k)?;
    let cycle = standard_cycle(m, k - 1)?;
    let w = iso.backward(&spec.add_step(&moved, Generator(0)))?;
    let d = cycle_distance(&cycle, &w)?;
    if d % 2 != 0 {
        return Err(Error::Internal(format!(
            "odd distance {d} to ({w}) on a cycle of {}",
            cycle.spec()
        )));
    }
    let cert = prop33_path(m, k, &cycle, d / 2)?;
    if perm.is_identity() {
        return ends_at(cert, v);
    }
    let inv = perm.inverse();
    let word = cert.word().map_labels(&mut |g| inv.apply_generator(g));
    let cert = verify_ham_path(&spec, &spec.zero(), v, word);
    match cert.defect() {
        None => Ok(cert),
        Some(d) => Err(Error::Internal(format!(
            "relabelled path failed verification: {d}"
        ))),
    }
}

/// Why no hamiltonian path can exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refusal {
    pub modulus: u64,
    pub distance: u64,
    /// `distance mod modulus`; a path needs `modulus - 1`.
    pub residue: u64,
}

impl std::fmt::Display for Refusal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "no hamiltonian path: d(u,v) = {} == {} (mod {}), but every hamiltonian path needs d(u,v) == -1 (mod {}), \
             since the end of such a path always lies in H - x1 relative to its start",
            self.distance, self.residue, self.modulus, self.modulus
        )
    }
}

#[derive(Debug, Clone)]
pub enum PathOutcome {
    Certified(PathCertificate),
    Refused(Refusal),
}

impl PathOutcome {
    pub fn certificate(&self) -> Option<&PathCertificate> {
        match self {
            PathOutcome::Certified(c) => Some(c),
            PathOutcome::Refused(_) => None,
        }
    }
}

/// A certified hamiltonian path from `u` to `v` in `(Z_m)^k`, or a refusal when
/// `d(u, v) != -1 (mod m)`.
pub fn hamiltonian_path(m: u64, k: usize, u: &Vertex, v: &Vertex) -> Result<PathOutcome> {
    if m < 2 {
        return Err(Error::ModulusTooSmall(m));
    }
    if k < 3 {
        return Err(Error::UnsupportedDimension(k));
    }
    let spec = TorusSpec::power(m, k)?;
    spec.check(u)?;
    spec.check(v)?;
    let diff = spec.sub(v, u);
    let distance = spec.directed_distance(u, v);
    if spec.residue_sum(&diff, m) != m - 1 {
        return Ok(PathOutcome::Refused(Refusal {
            modulus: m,
            distance,
            residue: distance % m,
        }));
    }
    let from_zero = if m % 2 == 1 {
        main_path_odd(m, k, &diff)?
    } else {
        main_path_even(m, k, &diff)?
    };
    let cert = if u.is_zero() {
        from_zero
    } else {
        from_zero.translated(u)
    };
    match cert.defect() {
        None => Ok(PathOutcome::Certified(cert)),
        Some(d) => Err(Error::Internal(format!(
            "translated path failed verification: {d}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{endpoint, trace, verify_ham_cycle};

    fn vx(m: u64, c: &[u64]) -> Vertex {
        TorusSpec::power(m, c.len())
            .unwrap()
            .vertex(c.to_vec())
            .unwrap()
    }

    #[test]
    fn prism_examples() {
        let w = prism_path_word(3, 9, 1).unwrap();
        assert_eq!(w.flat_length(), 26);
        let steps = prism_steps(3, 9).unwrap();
        let zero = TorusSpec::new(vec![3, 9]).unwrap().zero();
        assert_eq!(endpoint(&steps, &zero, &w).unwrap().coords(), &[2, 2]);

        let w = prism_path_word(2, 4, 0).unwrap();
        let s: String = w.expand().iter().map(|l| l.0).collect();
        assert_eq!(s, "bababab");
        let steps = prism_steps(2, 4).unwrap();
        let zero = TorusSpec::new(vec![2, 4]).unwrap().zero();
        let tr = trace(&steps, &zero, &w).unwrap();
        assert_eq!(tr.last().coords(), &[1, 0]);
        let mut seen = tr.0.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 8);

        let w = prism_path_word(3, 9, 0).unwrap();
        let steps = prism_steps(3, 9).unwrap();
        let zero = TorusSpec::new(vec![3, 9]).unwrap().zero();
        assert_eq!(endpoint(&steps, &zero, &w).unwrap().coords(), &[2, 0]);

        assert!(prism_path_word(3, 9, 5).is_err());
        assert!(prism_path_word(3, 8, 4).is_err());
    }

    #[test]
    fn iso_round_trip_and_generators() {
        let iso = ArcForcingIso::new(3, 3).unwrap();
        for w in iso.reduced().vertices() {
            let h = iso.forward(&w).unwrap();
            assert!(iso.contains(&h));
            assert_eq!(iso.backward(&h).unwrap(), w);
        }
        assert!(iso.backward(&vx(3, &[1, 0, 0])).is_err());
        assert_eq!(
            iso.generator_image(Generator(0)).unwrap().coords(),
            &[2, 1, 0]
        );
    }

    #[test]
    fn prop33_examples() {
        // k = 2: H is a 3-cycle.
        let inner = verify_ham_cycle(
            &TorusSpec::power(3, 1).unwrap(),
            Word::sym(Generator(0)).pow(3),
        )
        .unwrap();
        let cert = prop33_path(3, 2, &inner, 1).unwrap();
        assert_eq!(cert.length(), 8);
        // c_2 = psi(2) = (1, 2); minus x1 is (0, 2)
        assert_eq!(cert.target().coords(), &[0, 2]);

        let inner = standard_cycle(3, 2).unwrap();
        let cert = prop33_path(3, 3, &inner, 0).unwrap();
        assert_eq!(cert.target().coords(), &[2, 0, 0]);

        let inner = standard_cycle(2, 2).unwrap();
        let cert = prop33_path(2, 3, &inner, 1).unwrap();
        assert!(cert.is_verified());
        assert_eq!(cert.length(), 7);
    }

    #[test]
    fn main_path_examples() {
        for (m, c) in [(3, vec![2, 0, 0]), (3, vec![0, 1, 1]), (5, vec![4, 0, 0])] {
            let cert = main_path_odd(m, 3, &vx(m, &c)).unwrap();
            assert!(cert.is_verified());
            assert_eq!(cert.length(), m.pow(3) - 1);
        }
        for (m, c) in [
            (2, vec![1, 0, 0]),
            (2, vec![1, 1, 1]),
            (4, vec![3, 0, 0]),
            (4, vec![0, 2, 1]),
        ] {
            let cert = main_path_even(m, 3, &vx(m, &c)).unwrap();
            assert!(cert.is_verified());
            assert_eq!(cert.length(), m.pow(3) - 1);
            assert_eq!(cert.target().coords(), &c[..]);
        }
        assert!(main_path_odd(3, 3, &vx(3, &[1, 0, 0])).is_err());
        assert!(main_path_even(3, 3, &vx(3, &[2, 0, 0])).is_err());
    }

    #[test]
    fn dispatcher_examples() {
        let out = hamiltonian_path(3, 3, &vx(3, &[1, 1, 1]), &vx(3, &[0, 1, 1])).unwrap();
        let cert = out.certificate().unwrap();
        assert!(cert.is_verified());
        assert_eq!(cert.start().coords(), &[1, 1, 1]);

        match hamiltonian_path(3, 3, &vx(3, &[0, 0, 0]), &vx(3, &[1, 0, 0])).unwrap() {
            PathOutcome::Refused(r) => assert_eq!((r.distance, r.residue, r.modulus), (1, 1, 3)),
            PathOutcome::Certified(_) => panic!("congruence fails"),
        }

        let out = hamiltonian_path(2, 4, &vx(2, &[0, 0, 0, 0]), &vx(2, &[1, 0, 0, 0])).unwrap();
        assert_eq!(out.certificate().unwrap().length(), 15);

        assert_eq!(
            hamiltonian_path(3, 2, &vx(3, &[0, 0]), &vx(3, &[2, 0])).unwrap_err(),
            Error::UnsupportedDimension(2)
        );
    }
}
