//! Hamiltonian cycles with an even distance from 0 to a chosen target.
//!
//! On `Z_m x Z_n` with `m | n` the two staircase cycles `(x1^{m-1}, x2)^n` and
//! `(x2, x1^{m-1})^n` are hamiltonian for every `m >= 2`. For odd `m` one of
//! them puts a given target at an even distance from 0 whenever one of three
//! hypotheses on `(i, j)` holds. Cycles on `(Z_m)^n` are then built by rolling
//! a cycle of `(Z_m)^{n-1}` into `Z_m x Z_{m^{n-1}}` (see [`product_embed`]).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::torus::{Generator, Permutation, TorusSpec, Vertex};
use crate::walk::{cycle_distance, verify_ham_cycle, CycleWitness};
use crate::word::Word;

const X1: Generator = Generator(0);
const X2: Generator = Generator(1);

fn checked_cycle(spec: &TorusSpec, word: Word<Generator>) -> Result<CycleWitness> {
    verify_ham_cycle(spec, word)
        .map_err(|d| Error::Internal(format!("constructed cycle on {spec} rejected: {d}")))
}

fn staircase_spec(m: u64, n: u64) -> Result<TorusSpec> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "staircase needs m, n >= 2, got m={m}, n={n}"
        )));
    }
    if n % m != 0 {
        return Err(Error::NotAMultiple { m, n });
    }
    TorusSpec::new(vec![m, n])
}

/// `(x1^{m-1}, x2)^n` on `Z_m x Z_n`.
pub fn staircase_a(m: u64, n: u64) -> Result<CycleWitness> {
    let spec = staircase_spec(m, n)?;
    let word = Word::concat([Word::sym(X1).pow(m - 1), Word::sym(X2)]).pow(n);
    checked_cycle(&spec, word)
}

/// `(x2, x1^{m-1})^n` on `Z_m x Z_n`.
pub fn staircase_b(m: u64, n: u64) -> Result<CycleWitness> {
    let spec = staircase_spec(m, n)?;
    let word = Word::concat([Word::sym(X2), Word::sym(X1).pow(m - 1)]).pow(n);
    checked_cycle(&spec, word)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// `j + r` even: staircase A, distance `jm + r`.
    JPlusREven,
    /// `j` and `r` nonzero: staircase B, distance `(j-1)m + 1 + (r-1)`.
    JAndRNonzero,
    /// `j` even and nonzero. Always reduces to one of the two above.
    JEvenNonzero,
    None,
}

/// The staircase case a target falls under; `r = (i + j) mod m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaCase {
    pub tag: CaseTag,
    pub r: u64,
}

fn check_lemma_target(m: u64, n: u64, i: u64, j: u64) -> Result<()> {
    if m % 2 == 0 || m < 3 {
        return Err(Error::OddModulusRequired(m));
    }
    if n % m != 0 || n == 0 {
        return Err(Error::NotAMultiple { m, n });
    }
    if i >= m || j >= n {
        return Err(Error::InvalidArgument(format!(
            "({i}, {j}) is not reduced in Z_{m} x Z_{n}"
        )));
    }
    Ok(())
}

/// Every hypothesis that holds for `(i, j)`, in order.
pub fn hypotheses(m: u64, n: u64, (i, j): (u64, u64)) -> Result<Vec<CaseTag>> {
    check_lemma_target(m, n, i, j)?;
    let r = (i + j) % m;
    let mut out = Vec::new();
    if (j + r) % 2 == 0 {
        out.push(CaseTag::JPlusREven);
    }
    if j != 0 && r != 0 {
        out.push(CaseTag::JAndRNonzero);
    }
    if j != 0 && j % 2 == 0 {
        out.push(CaseTag::JEvenNonzero);
    }
    Ok(out)
}

/// The construction that applies to `(i, j)`. An even nonzero `j` is resolved
/// to the first or second case, so `JEvenNonzero` is never returned here.
pub fn classify_case(m: u64, n: u64, (i, j): (u64, u64)) -> Result<LemmaCase> {
    check_lemma_target(m, n, i, j)?;
    let r = (i + j) % m;
    let tag = if (j + r) % 2 == 0 {
        CaseTag::JPlusREven
    } else if j != 0 && r != 0 {
        CaseTag::JAndRNonzero
    } else {
        CaseTag::None
    };
    Ok(LemmaCase { tag, r })
}

/// A cycle together with the (even) position of its target on it.
#[derive(Debug, Clone)]
pub struct EvenCycle {
    pub witness: CycleWitness,
    pub distance: u64,
    pub case: LemmaCase,
}

pub fn even_distance_cycle_2d(m: u64, n: u64, (i, j): (u64, u64)) -> Result<EvenCycle> {
    let case = classify_case(m, n, (i, j))?;
    let r = case.r;
    let (witness, distance) = match case.tag {
        CaseTag::JPlusREven => (staircase_a(m, n)?, j * m + r),
        CaseTag::JAndRNonzero => (staircase_b(m, n)?, (j - 1) * m + 1 + (r - 1)),
        CaseTag::JEvenNonzero | CaseTag::None => {
            return Err(Error::LemmaInapplicable { m, n, i, j })
        }
    };
    let target = witness.spec().vertex(vec![i, j])?;
    let traced = cycle_distance(&witness, &target)?;
    if traced != distance || distance % 2 != 0 {
        return Err(Error::Internal(format!(
            "staircase distance to ({i}, {j}) in Z_{m} x Z_{n}: closed form {distance}, traced {traced}"
        )));
    }
    Ok(EvenCycle {
        witness,
        distance,
        case,
    })
}

/// Rolls `inner`, a cycle on some torus `T`, into `Z_m x T`.
///
/// `outer_word` is a word over `{x1, x2}` of `Z_m x Z_N` with `N = |T|`. Each
/// `x1` stays `x1`; each `x2` becomes the next arc of `inner`, lifted to
/// coordinates `2..`. The image of `(i, j)` is `i x1 + c_j`, so a hamiltonian
/// cycle or path of `Z_m x Z_N` maps to one of `Z_m x T`.
pub fn product_embed(
    m: u64,
    inner: &CycleWitness,
    outer_word: &Word<Generator>,
) -> Result<Word<Generator>> {
    if m < 2 {
        return Err(Error::ModulusTooSmall(m));
    }
    if let Some(g) = outer_word.labels().into_iter().find(|g| g.0 > 1) {
        return Err(Error::InvalidGenerator {
            index: g.0,
            dims: 2,
        });
    }
    let arcs = inner.arc_labels();
    let mut cursor = 0;
    Ok(Word::from_symbols(outer_word.symbols().map(|g| {
        if g == X1 {
            X1
        } else {
            let lifted = Generator(arcs[cursor].0 + 1);
            cursor = (cursor + 1) % arcs.len();
            lifted
        }
    })))
}

fn product_spec(m: u64, inner: &TorusSpec) -> Result<TorusSpec> {
    let mut moduli = vec![m];
    moduli.extend_from_slice(inner.moduli());
    TorusSpec::new(moduli)
}

/// Some hamiltonian cycle of `(Z_m)^n`, for any `m >= 2`: `x1^m` for `n = 1`,
/// otherwise the staircase on `Z_m x Z_{m^{n-1}}` rolled over the cycle of
/// `(Z_m)^{n-1}`.
pub fn standard_cycle(m: u64, n: usize) -> Result<CycleWitness> {
    if n == 0 {
        return Err(Error::EmptySpec);
    }
    let spec = TorusSpec::power(m, n)?;
    if n == 1 {
        return checked_cycle(&spec, Word::sym(X1).pow(m));
    }
    let inner = standard_cycle(m, n - 1)?;
    let outer = staircase_a(m, inner.len() as u64)?;
    checked_cycle(&spec, product_embed(m, &inner, outer.word())?)
}

/// A cycle on `(Z_m)^n` with `target` at an even distance.
#[derive(Debug, Clone)]
pub struct PowerCycle {
    pub witness: CycleWitness,
    pub distance: u64,
    /// The coordinate relabelling used during construction. `witness` is
    /// already conjugated back, so it passes through the original target.
    pub perm: Permutation,
}

pub fn even_distance_cycle_power(m: u64, n: usize, v: &Vertex) -> Result<PowerCycle> {
    if m % 2 == 0 || m < 3 {
        return Err(Error::OddModulusRequired(m));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension {n} below 2")));
    }
    let spec = TorusSpec::power(m, n)?;
    spec.check(v)?;
    let (built, perm) = if n == 2 {
        base_case(m, v)?
    } else {
        induction_step(m, n, v)?
    };
    let witness = if perm.is_identity() {
        built.witness
    } else {
        built.witness.permuted(&perm.inverse())?
    };
    let traced = cycle_distance(&witness, v)?;
    if traced != built.distance || traced % 2 != 0 {
        return Err(Error::Internal(format!(
            "cycle on (Z_{m})^{n}: reported distance {} to ({v}), traced {traced}",
            built.distance
        )));
    }
    Ok(PowerCycle {
        witness,
        distance: traced,
        perm,
    })
}

fn base_case(m: u64, v: &Vertex) -> Result<(EvenCycle, Permutation)> {
    let (i, j) = (v.coords()[0], v.coords()[1]);
    let swap = Permutation::transposition(2, 0, 1);
    let id = Permutation::identity(2);
    if classify_case(m, m, (i, j))?.tag == CaseTag::JPlusREven {
        return Ok((even_distance_cycle_2d(m, m, (i, j))?, id));
    }
    if classify_case(m, m, (j, i))?.tag == CaseTag::JPlusREven {
        return Ok((even_distance_cycle_2d(m, m, (j, i))?, swap));
    }
    if i == 0 && j == 0 {
        let witness = staircase_a(m, m)?;
        return Ok((
            EvenCycle {
                witness,
                distance: 0,
                case: classify_case(m, m, (0, 0))?,
            },
            id,
        ));
    }
    // Here i + j is even and nonzero, hence r != 0; make j the nonzero one.
    if j != 0 {
        Ok((even_distance_cycle_2d(m, m, (i, j))?, id))
    } else {
        Ok((even_distance_cycle_2d(m, m, (j, i))?, swap))
    }
}

fn induction_step(m: u64, n: usize, v: &Vertex) -> Result<(EvenCycle, Permutation)> {
    let spec = TorusSpec::power(m, n)?;
    if v.is_zero() {
        let witness = standard_cycle(m, n)?;
        let case = LemmaCase {
            tag: CaseTag::JPlusREven,
            r: 0,
        };
        return Ok((
            EvenCycle {
                witness,
                distance: 0,
                case,
            },
            Permutation::identity(n),
        ));
    }
    let last = v
        .coords()
        .iter()
        .rposition(|&c| c != 0)
        .expect("v is nonzero");
    let perm = Permutation::transposition(n, last, n - 1);
    let moved = spec.permute_coords(v, &perm)?;

    let rest = TorusSpec::power(m, n - 1)?.vertex(moved.coords()[1..].to_vec())?;
    let inner = even_distance_cycle_power(m, n - 1, &rest)?;
    let outer = even_distance_cycle_2d(
        m,
        inner.witness.len() as u64,
        (moved.coords()[0], inner.distance),
    )?;
    let word = product_embed(m, &inner.witness, outer.witness.word())?;
    let witness = checked_cycle(&product_spec(m, inner.witness.spec())?, word)?;
    Ok((
        EvenCycle {
            witness,
            distance: outer.distance,
            case: outer.case,
        },
        perm,
    ))
}
