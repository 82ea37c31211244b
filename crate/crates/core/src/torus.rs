//! Group arithmetic on `Z_{m_1} x ... x Z_{m_k}` with its standard generating set.
//!
//! The Cayley digraph of this group with respect to the unit vectors
//! `x_1, ..., x_k` is the cartesian product of directed cycles of lengths
//! `m_1, ..., m_k`, so every graph question in this crate is phrased as
//! group arithmetic on [`Vertex`] values owned by a [`TorusSpec`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The ambient digraph: one directed cycle length per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TorusSpec {
    moduli: Vec<u64>,
    #[serde(skip)]
    strides: Vec<usize>,
    #[serde(skip)]
    vertex_count: usize,
}

impl TorusSpec {
    pub fn new(moduli: impl Into<Vec<u64>>) -> Result<Self> {
        let moduli = moduli.into();
        if moduli.is_empty() {
            return Err(Error::EmptySpec);
        }
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::ModulusTooSmall(m));
        }
        // Coordinate 0 is the most significant digit of the vertex index.
        let mut strides = vec![0usize; moduli.len()];
        let mut acc: usize = 1;
        for (i, &m) in moduli.iter().enumerate().rev() {
            strides[i] = acc;
            acc = usize::try_from(m)
                .ok()
                .and_then(|m| acc.checked_mul(m))
                .ok_or_else(|| Error::VertexCountOverflow(moduli.clone()))?;
        }
        Ok(TorusSpec {
            moduli,
            strides,
            vertex_count: acc,
        })
    }

    /// `(Z_m)^k`.
    pub fn power(m: u64, k: usize) -> Result<Self> {
        TorusSpec::new(vec![m; k])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn dims(&self) -> usize {
        self.moduli.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn modulus(&self, index: usize) -> u64 {
        self.moduli[index]
    }

    /// gcd of all cycle lengths.
    pub fn gcd(&self) -> u64 {
        self.moduli.iter().fold(0, |g, &m| gcd(g, m))
    }

    pub fn is_equal_moduli(&self) -> bool {
        self.moduli.windows(2).all(|w| w[0] == w[1])
    }

    pub fn zero(&self) -> Vertex {
        Vertex(vec![0; self.dims()])
    }

    /// Builds a vertex, rejecting coordinates that are not already reduced.
    pub fn vertex(&self, coords: impl Into<Vec<u64>>) -> Result<Vertex> {
        let v = Vertex(coords.into());
        self.check(&v)?;
        Ok(v)
    }

    /// Builds a vertex, reducing each coordinate modulo its cycle length.
    pub fn vertex_reduced(&self, coords: &[i64]) -> Result<Vertex> {
        if coords.len() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                found: coords.len(),
            });
        }
        Ok(Vertex(
            coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
                .collect(),
        ))
    }

    pub fn check(&self, v: &Vertex) -> Result<()> {
        if v.0.len() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                found: v.0.len(),
            });
        }
        for (index, (&value, &modulus)) in v.0.iter().zip(&self.moduli).enumerate() {
            if value >= modulus {
                return Err(Error::UnreducedCoordinate {
                    index,
                    value,
                    modulus,
                });
            }
        }
        Ok(())
    }

    pub fn generator(&self, index: usize) -> Result<Generator> {
        if index < self.dims() {
            Ok(Generator(index))
        } else {
            Err(Error::InvalidGenerator {
                index,
                dims: self.dims(),
            })
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        (0..self.dims()).map(Generator)
    }

    /// Mixed-radix position of `v` in `0..vertex_count`.
    pub fn index_of(&self, v: &Vertex) -> usize {
        v.0.iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub(crate) fn stride(&self, index: usize) -> usize {
        self.strides[index]
    }

    pub fn vertex_at(&self, mut index: usize) -> Vertex {
        let mut coords = vec![0; self.dims()];
        for (i, &s) in self.strides.iter().enumerate() {
            coords[i] = (index / s) as u64;
            index %= s;
        }
        Vertex(coords)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count).map(|i| self.vertex_at(i))
    }

    pub fn add_step(&self, v: &Vertex, g: Generator) -> Vertex {
        let mut out = v.clone();
        self.step_in_place(&mut out, g);
        out
    }

    pub(crate) fn step_in_place(&self, v: &mut Vertex, g: Generator) {
        let c = &mut v.0[g.0];
        *c += 1;
        if *c == self.moduli[g.0] {
            *c = 0;
        }
    }

    pub fn add(&self, u: &Vertex, v: &Vertex) -> Vertex {
        Vertex(
            u.0.iter()
                .zip(&v.0)
                .zip(&self.moduli)
                .map(|((&a, &b), &m)| (a + b) % m)
                .collect(),
        )
    }

    pub fn sub(&self, u: &Vertex, v: &Vertex) -> Vertex {
        Vertex(
            u.0.iter()
                .zip(&v.0)
                .zip(&self.moduli)
                .map(|((&a, &b), &m)| (a + m - b) % m)
                .collect(),
        )
    }

    pub fn neg(&self, v: &Vertex) -> Vertex {
        self.sub(&self.zero(), v)
    }

    /// Length of the shortest directed path from `u` to `v`.
    ///
    /// Each coordinate has to be advanced around its own cycle independently,
    /// so the distance is the sum of the forward coordinate gaps.
    pub fn directed_distance(&self, u: &Vertex, v: &Vertex) -> u64 {
        self.sub(v, u).0.iter().sum()
    }

    /// `(v_1 + ... + v_k) mod modulus`.
    pub fn residue_sum(&self, v: &Vertex, modulus: u64) -> u64 {
        v.0.iter().fold(0, |acc, &c| (acc + c % modulus) % modulus)
    }

    /// The necessary condition for a hamiltonian path from `u` to `v`:
    /// `d(u, v) == -1 (mod gcd(m_1, ..., m_k))`.
    pub fn ham_path_congruence_ok(&self, u: &Vertex, v: &Vertex) -> bool {
        let g = self.gcd();
        (self.directed_distance(u, v) + 1) % g == 0
    }

    /// Relabels coordinates. Only permutations between equal cycle lengths are
    /// digraph automorphisms, so anything else is rejected.
    pub fn permute_coords(&self, v: &Vertex, perm: &Permutation) -> Result<Vertex> {
        self.check_permutation(perm)?;
        Ok(perm.apply(v))
    }

    pub fn check_permutation(&self, perm: &Permutation) -> Result<()> {
        if perm.len() != self.dims() {
            return Err(Error::InvalidPermutation(self.dims()));
        }
        for (from, &to) in perm.images().iter().enumerate() {
            if self.moduli[from] != self.moduli[to] {
                return Err(Error::PermutationMixesModuli {
                    from,
                    to,
                    from_modulus: self.moduli[from],
                    to_modulus: self.moduli[to],
                });
            }
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for TorusSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            moduli: Vec<u64>,
        }
        let raw = Raw::deserialize(d)?;
        TorusSpec::new(raw.moduli).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for TorusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, m) in self.moduli.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

/// A group element, coordinates stored reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub(crate) Vec<u64>);

impl Vertex {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Comma-separated residues, most significant coordinate first. The result is
/// not yet checked against any torus.
impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut coords = Vec::new();
        let mut offset = 0;
        for token in s.split(',') {
            let trimmed = token.trim();
            let position = offset + (token.len() - token.trim_start().len());
            let value = trimmed.parse::<u64>().map_err(|_| Error::Parse {
                position,
                message: format!("expected a non-negative residue, found {trimmed:?}"),
            })?;
            coords.push(value);
            offset += token.len() + 1;
        }
        Ok(Vertex(coords))
    }
}

/// The unit vector `x_{index+1}` of the standard generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Generator(pub usize);

impl Generator {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0 + 1)
    }
}

/// A bijection on coordinate positions: coordinate `i` moves to `images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(images.len()));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    pub fn apply(&self, v: &Vertex) -> Vertex {
        let mut out = vec![0; v.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            out[p] = v.0[i];
        }
        Vertex(out)
    }

    pub fn apply_generator(&self, g: Generator) -> Generator {
        Generator(self.0[g.0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u64]) -> Vertex {
        Vertex(c.to_vec())
    }

    #[test]
    fn add_step_examples() {
        let t = TorusSpec::new(vec![3, 3, 3]).unwrap();
        assert_eq!(t.add_step(&v(&[0, 0, 0]), Generator(0)), v(&[1, 0, 0]));
        assert_eq!(t.add_step(&v(&[2, 1, 0]), Generator(0)), v(&[0, 1, 0]));
        let t = TorusSpec::new(vec![2, 3]).unwrap();
        assert_eq!(t.add_step(&v(&[1, 2]), Generator(1)), v(&[1, 0]));
    }

    #[test]
    fn distance_examples() {
        let t = TorusSpec::new(vec![2, 3]).unwrap();
        assert_eq!(t.directed_distance(&v(&[0, 0]), &v(&[1, 2])), 3);
        let t = TorusSpec::power(3, 3).unwrap();
        assert_eq!(t.directed_distance(&t.zero(), &v(&[2, 0, 0])), 2);
        assert_eq!(t.directed_distance(&v(&[1, 1, 1]), &v(&[1, 1, 1])), 0);
    }

    #[test]
    fn residue_sum_examples() {
        let t = TorusSpec::power(3, 3).unwrap();
        assert_eq!(t.residue_sum(&v(&[2, 0, 0]), 3), 2);
        assert_eq!(t.residue_sum(&v(&[1, 1, 1]), 3), 0);
        let t = TorusSpec::power(2, 3).unwrap();
        assert_eq!(t.residue_sum(&v(&[1, 1, 1]), 2), 1);
    }

    #[test]
    fn congruence_examples() {
        let t = TorusSpec::power(3, 3).unwrap();
        assert!(t.ham_path_congruence_ok(&t.zero(), &v(&[2, 0, 0])));
        assert!(!t.ham_path_congruence_ok(&t.zero(), &v(&[1, 0, 0])));
        let t = TorusSpec::new(vec![2, 3, 4]).unwrap();
        assert_eq!(t.gcd(), 1);
        assert!(t.ham_path_congruence_ok(&t.zero(), &v(&[0, 0, 1])));
    }

    #[test]
    fn permute_examples() {
        let t = TorusSpec::power(3, 3).unwrap();
        // moves slot 3 to slot 1
        let cyc = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(
            t.permute_coords(&v(&[0, 0, 2]), &cyc).unwrap(),
            v(&[2, 0, 0])
        );
        let id = Permutation::identity(3);
        assert_eq!(
            t.permute_coords(&v(&[1, 2, 0]), &id).unwrap(),
            v(&[1, 2, 0])
        );
        let t = TorusSpec::new(vec![2, 3]).unwrap();
        let swap = Permutation::transposition(2, 0, 1);
        assert!(matches!(
            t.permute_coords(&v(&[1, 2]), &swap),
            Err(Error::PermutationMixesModuli { .. })
        ));
    }

    #[test]
    fn invalid_permutations() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        let t = TorusSpec::power(3, 3).unwrap();
        assert!(t
            .permute_coords(&t.zero(), &Permutation::identity(2))
            .is_err());
    }

    #[test]
    fn constructor_rejects_bad_specs() {
        assert_eq!(TorusSpec::new(vec![]), Err(Error::EmptySpec));
        assert_eq!(TorusSpec::new(vec![3, 1]), Err(Error::ModulusTooSmall(1)));
        assert!(matches!(
            TorusSpec::power(1 << 20, 4),
            Err(Error::VertexCountOverflow(_))
        ));
        let t = TorusSpec::new(vec![2, 3]).unwrap();
        assert!(matches!(
            t.vertex(vec![0, 3]),
            Err(Error::UnreducedCoordinate { index: 1, .. })
        ));
        assert!(matches!(
            t.vertex(vec![0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn index_round_trip() {
        let t = TorusSpec::new(vec![2, 3, 4]).unwrap();
        for i in 0..t.vertex_count() {
            assert_eq!(t.index_of(&t.vertex_at(i)), i);
        }
        assert_eq!(t.vertex_at(1), v(&[0, 0, 1]));
    }

    #[test]
    fn vertex_parse_reports_position() {
        assert_eq!("1, 2,0".parse::<Vertex>().unwrap(), v(&[1, 2, 0]));
        match "1,x,0".parse::<Vertex>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
    }
}
