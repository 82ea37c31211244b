use std::collections::HashSet;

use proptest::prelude::*;
use torus_ham::cycles::{
    classify_case, even_distance_cycle_2d, even_distance_cycle_power, hypotheses, staircase_a,
    staircase_b, standard_cycle, CaseTag,
};
use torus_ham::oracle::{endpoint_set_dp, ham_path_exists, OracleConfig};
use torus_ham::paths::{hamiltonian_path, ArcForcingIso, PathOutcome};
use torus_ham::walk::{endpoint, trace};
use torus_ham::{cycle_distance, verify_ham_path, Generator, Permutation, TorusSpec, Vertex, Word};

fn word_strategy(dims: usize) -> impl Strategy<Value = Word<Generator>> {
    let leaf = (0..dims).prop_map(|g| Word::sym(Generator(g)));
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(Word::concat),
            (inner, 0u64..4).prop_map(|(w, e)| w.pow(e)),
        ]
    })
}

fn spec_strategy(max_dims: usize, max_modulus: u64) -> impl Strategy<Value = TorusSpec> {
    prop::collection::vec(2..=max_modulus, 1..=max_dims)
        .prop_map(|moduli| TorusSpec::new(moduli).unwrap())
}

fn spec_and_vertex(
    max_dims: usize,
    max_modulus: u64,
) -> impl Strategy<Value = (TorusSpec, Vertex)> {
    spec_strategy(max_dims, max_modulus).prop_flat_map(|spec| {
        let n = spec.vertex_count();
        (Just(spec), 0..n).prop_map(|(spec, i)| {
            let v = spec.vertex_at(i);
            (spec, v)
        })
    })
}

/// Set-based reference for hamiltonian path verification.
fn naive_is_ham_path(spec: &TorusSpec, start: &Vertex, target: &Vertex, flat: &[usize]) -> bool {
    if flat.len() + 1 != spec.vertex_count() || flat.iter().any(|&g| g >= spec.dims()) {
        return false;
    }
    let mut seen = HashSet::new();
    let mut v = start.clone();
    seen.insert(v.clone());
    for &g in flat {
        v = spec.add_step(&v, Generator(g));
        if !seen.insert(v.clone()) {
            return false;
        }
    }
    &v == target
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn power_expands_to_repetition(w in word_strategy(3), e in 0u64..5) {
        let once = w.expand();
        let repeated: Vec<Generator> = std::iter::repeat(once.clone()).take(e as usize).flatten().collect();
        prop_assert_eq!(w.clone().pow(e).expand(), repeated);
        prop_assert_eq!(w.flat_length(), once.len() as u64);
        prop_assert_eq!(w.symbols().collect::<Vec<_>>(), once.clone());
        prop_assert_eq!(Word::from_symbols(once.clone()).expand(), once.clone());
        prop_assert_eq!(Word::from_flat(&w.to_flat()).expand(), once.clone());
    }

    #[test]
    fn display_round_trips(w in word_strategy(4)) {
        let text = w.to_string();
        let back: Word<Generator> = text.parse().unwrap();
        prop_assert_eq!(back.expand(), w.expand());
    }

    #[test]
    fn endpoint_matches_trace((spec, start) in spec_and_vertex(3, 6), w in word_strategy(3)) {
        let w = w.map_labels(&mut |g: Generator| Generator(g.0 % spec.dims()));
        let traced = trace(&spec, &start, &w).unwrap();
        prop_assert_eq!(traced.vertices().len() as u64, w.flat_length() + 1);
        prop_assert_eq!(&endpoint(&spec, &start, &w).unwrap(), traced.last());
    }

    #[test]
    fn walk_length_matches_distance_mod_gcd((spec, start) in spec_and_vertex(3, 6), w in word_strategy(3)) {
        let w = w.map_labels(&mut |g: Generator| Generator(g.0 % spec.dims()));
        let end = endpoint(&spec, &start, &w).unwrap();
        let g = spec.gcd();
        prop_assert_eq!(w.flat_length() % g, spec.directed_distance(&start, &end) % g);
    }

    #[test]
    fn verification_agrees_with_naive_check(
        (spec, start) in spec_and_vertex(3, 4),
        seed in prop::collection::vec(0usize..3, 0..70),
        target_index in 0usize..64,
    ) {
        let flat: Vec<usize> = seed.iter().take(spec.vertex_count().saturating_sub(1)).map(|g| g % spec.dims()).collect();
        let target = spec.vertex_at(target_index % spec.vertex_count());
        let cert = verify_ham_path(&spec, &start, &target, Word::from_flat(&flat));
        prop_assert_eq!(cert.is_verified(), naive_is_ham_path(&spec, &start, &target, &flat));
    }

    #[test]
    fn mutated_paths_are_judged_like_the_naive_check(
        m in 2u64..=4,
        u_index in 0usize..64,
        v_index in 0usize..64,
        position in 0usize..64,
        replacement in 0usize..3,
    ) {
        let spec = TorusSpec::power(m, 3).unwrap();
        let n = spec.vertex_count();
        let u = spec.vertex_at(u_index % n);
        let v = spec.vertex_at(v_index % n);
        let PathOutcome::Certified(cert) = hamiltonian_path(m, 3, &u, &v).unwrap() else {
            return Ok(());
        };
        let mut flat = cert.word().to_flat();
        prop_assert!(naive_is_ham_path(&spec, &u, &v, &flat));
        let p = position % flat.len();
        flat[p] = replacement;
        let again = verify_ham_path(&spec, &u, &v, Word::from_flat(&flat));
        prop_assert_eq!(again.is_verified(), naive_is_ham_path(&spec, &u, &v, &flat));
    }

    #[test]
    fn permutation_commutes_with_steps(m in 2u64..6, images in Just(vec![0usize, 1, 2, 3]).prop_shuffle(), index in 0usize..1296, g in 0usize..4) {
        let spec = TorusSpec::power(m, 4).unwrap();
        let perm = Permutation::new(images).unwrap();
        let v = spec.vertex_at(index % spec.vertex_count());
        let lhs = spec.permute_coords(&spec.add_step(&v, Generator(g)), &perm).unwrap();
        let rhs = spec.add_step(&spec.permute_coords(&v, &perm).unwrap(), perm.apply_generator(Generator(g)));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(perm.inverse().apply(&perm.apply(&v)), v);
    }

    #[test]
    fn arc_forcing_iso_is_a_group_isomorphism(m in 2u64..7, k in 2usize..5, a in 0usize..4096, b in 0usize..4096) {
        let iso = ArcForcingIso::new(m, k).unwrap();
        let (full, reduced) = (iso.full(), iso.reduced());
        let x = reduced.vertex_at(a % reduced.vertex_count());
        let y = reduced.vertex_at(b % reduced.vertex_count());
        let fx = iso.forward(&x).unwrap();
        prop_assert!(iso.contains(&fx));
        prop_assert_eq!(&iso.backward(&fx).unwrap(), &x);
        prop_assert_eq!(iso.forward(&reduced.add(&x, &y)).unwrap(), full.add(&fx, &iso.forward(&y).unwrap()));
        for e in reduced.generators() {
            let stepped = iso.forward(&reduced.add_step(&x, e)).unwrap();
            prop_assert_eq!(stepped, full.add(&fx, &iso.generator_image(e).unwrap()));
        }
    }

    #[test]
    fn paths_exist_exactly_under_the_congruence(m in 2u64..=5, k in 3usize..=4, u_index in 0usize..1024, v_index in 0usize..1024) {
        prop_assume!(m.pow(k as u32) <= 256);
        let spec = TorusSpec::power(m, k).unwrap();
        let n = spec.vertex_count();
        let u = spec.vertex_at(u_index % n);
        let v = spec.vertex_at(v_index % n);
        match hamiltonian_path(m, k, &u, &v).unwrap() {
            PathOutcome::Certified(cert) => {
                prop_assert!(spec.ham_path_congruence_ok(&u, &v));
                prop_assert!(cert.is_verified());
                prop_assert_eq!(cert.length(), n as u64 - 1);
                let flat = cert.word().to_flat();
                prop_assert!(naive_is_ham_path(&spec, &u, &v, &flat));
                // translating the start translates the whole path
                let shift = spec.sub(&spec.zero(), &u);
                let back = cert.translated(&shift);
                prop_assert!(back.is_verified());
                prop_assert!(back.start().is_zero());
            }
            PathOutcome::Refused(r) => {
                prop_assert!(!spec.ham_path_congruence_ok(&u, &v));
                prop_assert_ne!(r.residue, m - 1);
            }
        }
    }

    #[test]
    fn oracle_witnesses_verify_and_match_dp((spec, target) in spec_and_vertex(3, 4)) {
        prop_assume!(spec.vertex_count() <= 20);
        let cfg = OracleConfig::default();
        let zero = spec.zero();
        let found = ham_path_exists(&spec, &zero, &target, &cfg).unwrap();
        if let Some(w) = &found {
            prop_assert!(verify_ham_path(&spec, &zero, &target, w.clone()).is_verified());
            prop_assert!(spec.ham_path_congruence_ok(&zero, &target));
        }
        let dp = endpoint_set_dp(&spec, &zero).unwrap();
        prop_assert_eq!(found.is_some(), dp.contains(&target));
    }

    #[test]
    fn even_cycles_on_powers_put_the_target_at_even_distance(m in prop::sample::select(vec![3u64, 5, 7]), n in 2usize..=3, index in 0usize..400) {
        prop_assume!(m.pow(n as u32) <= 400);
        let spec = TorusSpec::power(m, n).unwrap();
        let v = spec.vertex_at(index % spec.vertex_count());
        let built = even_distance_cycle_power(m, n, &v).unwrap();
        prop_assert_eq!(built.distance % 2, 0);
        prop_assert_eq!(cycle_distance(&built.witness, &v).unwrap(), built.distance);
    }
}

fn staircase_b_distance(m: u64, n: u64, i: u64, j: u64) -> u64 {
    let r = (i + j) % m;
    if j == 0 {
        if i == 0 {
            0
        } else {
            (n - 1) * m + 1 + (i - 1)
        }
    } else {
        (j - 1) * m + 1 + (r + m - 1) % m
    }
}

#[test]
fn staircase_distances_follow_closed_forms() {
    for m in 2u64..=6 {
        for n in (m..=4 * m).step_by(m as usize) {
            let a = staircase_a(m, n).unwrap();
            let b = staircase_b(m, n).unwrap();
            let spec = a.spec().clone();
            for i in 0..m {
                for j in 0..n {
                    let v = spec.vertex(vec![i, j]).unwrap();
                    let r = (i + j) % m;
                    assert_eq!(
                        cycle_distance(&a, &v).unwrap(),
                        j * m + r,
                        "A, m={m} n={n} ({i},{j})"
                    );
                    assert_eq!(
                        cycle_distance(&b, &v).unwrap(),
                        staircase_b_distance(m, n, i, j),
                        "B, m={m} n={n} ({i},{j})"
                    );
                    if r >= 1 && j >= 1 {
                        assert_eq!(cycle_distance(&b, &v).unwrap(), j * m + r - m);
                    }
                }
            }
            for c in [&a, &b] {
                let mut table = c.distance_table();
                table.sort_unstable();
                assert_eq!(table, (0..m * n).collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn every_hypothesis_yields_an_even_cycle() {
    for m in [3u64, 5, 7] {
        for n in [m, 2 * m, 3 * m] {
            for i in 0..m {
                for j in 0..n {
                    let tags = hypotheses(m, n, (i, j)).unwrap();
                    let case = classify_case(m, n, (i, j)).unwrap();
                    assert_ne!(case.tag, CaseTag::JEvenNonzero);
                    if tags.contains(&CaseTag::JEvenNonzero) {
                        assert!(
                            tags.contains(&CaseTag::JPlusREven)
                                || tags.contains(&CaseTag::JAndRNonzero)
                        );
                    }
                    if tags.is_empty() {
                        assert_eq!(case.tag, CaseTag::None);
                        assert!(even_distance_cycle_2d(m, n, (i, j)).is_err());
                    } else {
                        let c = even_distance_cycle_2d(m, n, (i, j)).unwrap();
                        assert_eq!(c.distance % 2, 0);
                    }
                }
            }
        }
    }
}

#[test]
fn standard_cycles_are_hamiltonian() {
    for (m, n) in [(2u64, 1usize), (2, 5), (3, 4), (4, 3), (5, 3), (6, 2)] {
        let c = standard_cycle(m, n).unwrap();
        assert_eq!(c.len() as u64, m.pow(n as u32));
        let mut table = c.distance_table();
        table.sort_unstable();
        assert_eq!(table, (0..c.len() as u64).collect::<Vec<_>>());
    }
}
