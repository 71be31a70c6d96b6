//! Integration tests for the three induced distances: frozen reference
//! values, witness validity, agreement with brute-force enumeration, and
//! error behavior.

mod common;

use common::*;
use editmet::digraph::has_negative_cycle;
use editmet::distance::{
    cost_extended, cost_normalized, cost_weighted, dist_extended, dist_normalized, dist_weighted,
    DistanceError, DistanceKind,
};
use editmet::oracle::{brute_distance, SequenceUniverse};
use editmet::{parse_matrix, Alignment, ExtendedAlignment, Rational, Symbol};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn walk(text: &str) -> Vec<Symbol> {
    text.chars().map(Symbol::from_char).collect()
}

#[test]
fn frozen_distance_values() {
    let unit = matrix(UNIT_AB);
    assert_eq!(dist_weighted(&unit, &chars("aaba"), &chars("aabba")).unwrap().value, rat(1, 1));
    assert_eq!(dist_normalized(&unit, &chars("a"), &chars("a")).unwrap().value, rat(0, 1));

    let counter = matrix(COUNTER);
    assert_eq!(dist_weighted(&counter, &chars("a"), &chars("b")).unwrap().value, rat(5, 1));
    assert_eq!(dist_normalized(&counter, &chars("a"), &chars("b")).unwrap().value, rat(3, 1));
    assert_eq!(dist_normalized(&counter, &chars("a"), &chars("ab")).unwrap().value, rat(1, 2));
    assert_eq!(dist_normalized(&counter, &chars("ab"), &chars("b")).unwrap().value, rat(7, 3));

    let intro = matrix(INTRO);
    assert_eq!(dist_extended(&intro, &chars("a"), &chars("c")).unwrap().value, rat(2, 1));

    let unit4 = matrix(UNIT_ABCD);
    assert_eq!(dist_extended(&unit4, &chars("abc"), &chars("abc")).unwrap().value, rat(0, 1));

    for m in [&unit, &counter, &intro] {
        assert_eq!(dist_weighted(m, &[], &[]).unwrap().value, rat(0, 1));
        assert_eq!(dist_normalized(m, &[], &[]).unwrap().value, rat(0, 1));
        assert_eq!(dist_extended(m, &[], &[]).unwrap().value, rat(0, 1));
    }
}

#[test]
fn frozen_normalized_alignment_costs() {
    let counter = matrix(COUNTER);
    let half = Alignment::from_strs("a-", "ab").unwrap();
    assert_eq!(cost_normalized(&counter, &half).unwrap(), rat(1, 2));
    let seven_thirds = Alignment::from_strs("ab-", "--b").unwrap();
    assert_eq!(cost_normalized(&counter, &seven_thirds).unwrap(), rat(7, 3));
}

#[test]
fn the_eight_column_extended_alignment_costs_fifteen() {
    let unit4 = matrix(UNIT_ABCD);
    let e = ExtendedAlignment::from_columns(vec![
        walk("a"),
        walk("abcd"),
        walk("b-"),
        walk("-d"),
        walk("ca"),
        walk("-dabc"),
        walk("-abc"),
        walk("dab"),
    ])
    .unwrap();
    assert_eq!(e.sequences(), (chars("aabcd"), chars("addaccb")));
    assert_eq!(cost_extended(&unit4, &e).unwrap(), rat(15, 1));
}

#[test]
fn witnesses_are_valid_and_achieve_the_reported_value() {
    for (name, text) in [("unit_ab", UNIT_AB), ("intro", INTRO), ("counter", COUNTER), ("g1", G1)] {
        let m = matrix(text);
        let letters: Vec<char> = m.alphabet().iter().copied().take(2).collect();
        let universe = SequenceUniverse::new(&letters, 2);
        for s in universe.sequences() {
            for t in universe.sequences() {
                let w = dist_weighted(&m, s, t).unwrap();
                assert_eq!(w.witness.sequences(), (s.clone(), t.clone()), "{name}: rows");
                assert_eq!(cost_weighted(&m, &w.witness).unwrap(), w.value, "{name}: cost");

                let nrm = dist_normalized(&m, s, t).unwrap();
                assert_eq!(nrm.witness.sequences(), (s.clone(), t.clone()), "{name}: rows");
                assert_eq!(cost_normalized(&m, &nrm.witness).unwrap(), nrm.value, "{name}: cost");

                let e = dist_extended(&m, s, t).unwrap();
                assert_eq!(e.witness.sequences(), (s.clone(), t.clone()), "{name}: rows");
                assert_eq!(cost_extended(&m, &e.witness).unwrap(), e.value, "{name}: cost");
            }
        }
    }
}

#[test]
fn normalized_witness_for_the_counterexample_pair_has_two_columns() {
    let counter = matrix(COUNTER);
    let r = dist_normalized(&counter, &chars("a"), &chars("b")).unwrap();
    assert_eq!(r.value, rat(3, 1));
    assert_eq!(r.witness.len(), 2, "the optimum needs a padded alignment, not the direct column");
    assert_eq!(cost_normalized(&counter, &r.witness).unwrap(), rat(3, 1));
}

#[test]
fn dynamic_programs_match_brute_enumeration_on_random_matrices() {
    let mut rng = seeded(0xd157);
    for size in 1..=2 {
        let alphabet = alphabet_of_size(size);
        let universe = SequenceUniverse::new(&alphabet, 2);
        for case in 0..25 {
            let m = random_matrix(&mut rng, &alphabet, MatrixMode::UniformSigned);
            for s in universe.sequences() {
                for t in universe.sequences() {
                    let fast = dist_weighted(&m, s, t).unwrap().value;
                    let brute =
                        brute_distance(&m, DistanceKind::Weighted, s, t, 0, None).unwrap();
                    assert_eq!(fast, brute, "weighted case {case}, pair ({s:?}, {t:?})");

                    let fast = dist_normalized(&m, s, t).unwrap().value;
                    let brute =
                        brute_distance(&m, DistanceKind::Normalized, s, t, 0, None).unwrap();
                    assert_eq!(fast, brute, "normalized case {case}, pair ({s:?}, {t:?})");
                }
            }
        }
    }
}

#[test]
fn extended_distance_matches_brute_enumeration_on_nonnegative_matrices() {
    let mut rng = seeded(0xe57);
    for size in 1..=2 {
        let alphabet = alphabet_of_size(size);
        let universe = SequenceUniverse::new(&alphabet, 2);
        for case in 0..20 {
            let m = random_matrix(&mut rng, &alphabet, MatrixMode::NonNegative);
            for s in universe.sequences() {
                for t in universe.sequences() {
                    let fast = dist_extended(&m, s, t).unwrap().value;
                    let brute =
                        brute_distance(&m, DistanceKind::Extended, s, t, size + 2, None).unwrap();
                    assert_eq!(fast, brute, "extended case {case}, pair ({s:?}, {t:?})");
                }
            }
        }
    }
}

#[test]
fn the_extended_distance_never_exceeds_the_weighted_one() {
    let mut rng = seeded(0x1e55);
    for size in 1..=3 {
        let alphabet = alphabet_of_size(size);
        let universe = SequenceUniverse::new(&alphabet, 2);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, &alphabet, MatrixMode::UniformSigned);
            if has_negative_cycle(&m) {
                continue;
            }
            for s in universe.sequences() {
                for t in universe.sequences() {
                    let extended = dist_extended(&m, s, t).unwrap().value;
                    let weighted = dist_weighted(&m, s, t).unwrap().value;
                    assert!(
                        extended <= weighted,
                        "relaxing columns to walks can only help: ({s:?}, {t:?})"
                    );
                }
            }
        }
    }
}

#[test]
fn error_paths_are_precise() {
    let unit = matrix(UNIT_AB);
    assert_eq!(
        dist_weighted(&unit, &chars("ax"), &chars("b")).err(),
        Some(DistanceError::UnknownSymbol('x'))
    );
    assert_eq!(
        dist_normalized(&unit, &chars("a"), &chars("-")).err(),
        Some(DistanceError::UnknownSymbol('-')),
        "the gap character is not a sequence letter"
    );

    // γ(a,b) + γ(b,a) = -1 closes a negative cycle.
    let cyclic = parse_matrix("\ta\tb\t-\na\t0\t-3\t1\nb\t2\t0\t1\n-\t1\t1\t*\n").unwrap();
    assert_eq!(
        dist_extended(&cyclic, &chars("a"), &chars("b")).err(),
        Some(DistanceError::NegativeCycle)
    );
    // The weighted distance is still well defined there.
    assert_eq!(dist_weighted(&cyclic, &chars("a"), &chars("b")).unwrap().value, rat(-3, 1));
}

#[test]
fn non_ascii_alphabets_work_end_to_end() {
    let text = "\tα\tβ\t-\n\
                α\t0\t1\t1\n\
                β\t1\t0\t1\n\
                -\t1\t1\t*\n";
    let m = parse_matrix(text).unwrap();
    let r = dist_weighted(&m, &chars("αβα"), &chars("αα")).unwrap();
    assert_eq!(r.value, rat(1, 1));
    assert_eq!(r.witness.sequences(), (chars("αβα"), chars("αα")));
}
