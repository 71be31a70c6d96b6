//! Shared fixtures and generators for the integration suites.
//!
//! Every integration test binary compiles its own copy of this module and
//! uses a different subset of it.
#![allow(dead_code)]

use editmet::{parse_matrix, Rational, ScoringMatrix};
use num_rational::Ratio;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Exact scalar with machine-word components: plenty of headroom for test
/// entries and much faster than arbitrary precision in the property suites.
pub type Rat64 = Ratio<i64>;

/// Unit costs over {a, b}: the classic Levenshtein setup.
pub const UNIT_AB: &str = "\ta\tb\t-\n\
                           a\t0\t1\t1\n\
                           b\t1\t0\t1\n\
                           -\t1\t1\t*\n";

/// Unit costs over {a, b, c, d}.
pub const UNIT_ABCD: &str = "\ta\tb\tc\td\t-\n\
                             a\t0\t1\t1\t1\t1\n\
                             b\t1\t0\t1\t1\t1\n\
                             c\t1\t1\t0\t1\t1\n\
                             d\t1\t1\t1\t0\t1\n\
                             -\t1\t1\t1\t1\t*\n";

/// Asymmetric substitution costs over {a, b, c} whose weighted distance is
/// nevertheless a metric: a/c substitutions are dear one way but every
/// violation of plain symmetry is rescued by a cheaper two-step detour.
pub const INTRO: &str = "\ta\tb\tc\t-\n\
                         a\t0\t1\t3\t1\n\
                         b\t1\t0\t1\t1\n\
                         c\t4\t1\t0\t1\n\
                         -\t1\t1\t1\t*\n";

/// Symmetric matrix with one cheap letter: the weighted distance is a
/// metric, yet normalization breaks the triangle inequality.
pub const COUNTER: &str = "\ta\tb\t-\n\
                           a\t0\t5\t5\n\
                           b\t5\t0\t1\n\
                           -\t5\t1\t*\n";

/// Asymmetric substitutions with unit gap costs; conditionally symmetric,
/// so still a weighted metric despite 4 ≠ 3.
pub const G1: &str = "\ta\tb\t-\n\
                      a\t0\t4\t1\n\
                      b\t3\t0\t1\n\
                      -\t1\t1\t*\n";

/// Plain unit costs; every class and every space holds.
pub const G2: &str = UNIT_AB;

/// Asymmetric substitutions with gap costs too high to rescue symmetry:
/// the extended distance stays asymmetric.
pub const ASYM: &str = "\ta\tb\t-\n\
                        a\t0\t1\t5\n\
                        b\t3\t0\t5\n\
                        -\t5\t5\t*\n";

/// Parses a fixture, panicking with a clear message if it is broken.
pub fn matrix(text: &str) -> ScoringMatrix<Rational> {
    parse_matrix(text).expect("fixture matrices parse")
}

/// Convenience: a string as a sequence of letters.
pub fn chars(s: &str) -> Vec<char> {
    s.chars().collect()
}

/// The first `n` letters of a fixed test alphabet.
pub fn alphabet_of_size(n: usize) -> Vec<char> {
    assert!(n <= 8, "test alphabets stay small");
    "abcdefgh".chars().take(n).collect()
}

/// Deterministic RNG for reproducible property tests.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Converts a word-sized rational into the arbitrary-precision type.
pub fn to_big(r: &Rat64) -> Rational {
    Rational::new((*r.numer()).into(), (*r.denom()).into())
}

/// How random matrix entries are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixMode {
    /// Every defined entry uniform over rationals in [-2, 5].
    UniformSigned,
    /// Every defined entry uniform over rationals in [0, 5].
    NonNegative,
    /// Zero diagonal, symmetric substitutions in [1, 2], per-letter
    /// symmetric gap costs in (0, 2]: frequently (not always) lands in the
    /// well-behaved classes.
    MetricLike,
}

/// A random scoring matrix over `alphabet` in the given mode, with
/// denominators at most 4.
pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    alphabet: &[char],
    mode: MatrixMode,
) -> ScoringMatrix<Rat64> {
    match mode {
        MatrixMode::UniformSigned => {
            ScoringMatrix::from_fn(alphabet, |_, _| rat_in(rng, -2, 5)).expect("valid alphabet")
        }
        MatrixMode::NonNegative => {
            ScoringMatrix::from_fn(alphabet, |_, _| rat_in(rng, 0, 5)).expect("valid alphabet")
        }
        MatrixMode::MetricLike => {
            let mut subs: BTreeMap<(char, char), Rat64> = BTreeMap::new();
            for (i, &x) in alphabet.iter().enumerate() {
                for &y in &alphabet[i + 1..] {
                    let v = rat_in(rng, 1, 2);
                    subs.insert((x, y), v);
                    subs.insert((y, x), v);
                }
            }
            let gaps: BTreeMap<char, Rat64> = alphabet
                .iter()
                .map(|&c| (c, positive_rat_up_to_2(rng)))
                .collect();
            ScoringMatrix::from_fn(alphabet, |x, y| match (x.as_letter(), y.as_letter()) {
                (Some(a), Some(b)) if a == b => Rat64::from_integer(0),
                (Some(a), Some(b)) => subs[&(a, b)],
                (Some(a), None) => gaps[&a],
                (None, Some(b)) => gaps[&b],
                (None, None) => unreachable!("from_fn never asks for the gap-gap entry"),
            })
            .expect("valid alphabet")
        }
    }
}

/// Uniform rational in [lo, hi] with denominator in 1..=4.
fn rat_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat64 {
    let d = rng.random_range(1..=4i64);
    let n = rng.random_range(lo * d..=hi * d);
    Rat64::new(n, d)
}

/// Uniform rational in (0, 2] with denominator in 1..=4.
fn positive_rat_up_to_2(rng: &mut ChaCha8Rng) -> Rat64 {
    let d = rng.random_range(1..=4i64);
    let n = rng.random_range(1..=2 * d);
    Rat64::new(n, d)
}

/// True when every defined entry is non-negative.
pub fn entries_nonnegative(m: &ScoringMatrix<Rat64>) -> bool {
    m.symbols().all(|x| {
        m.symbols().all(|y| m.get(x, y).is_none_or(|w| *w >= Rat64::from_integer(0)))
    })
}
