//! Edit distances induced by scoring matrices, and exact classification of
//! the metric axioms they satisfy.
//!
//! A scoring matrix assigns a rational weight to every substitution pair
//! `(a, b)`, every deletion `(a, -)` and every insertion `(-, b)` over an
//! alphabet Σ plus the gap symbol `-`; the pair `(-, -)` is undefined.  Such a
//! matrix induces three distances on strings over Σ:
//!
//! * the **weighted** edit distance — the minimum total weight of an
//!   alignment ([`distance::dist_weighted`]),
//! * the **normalized** edit distance — the minimum of weight divided by
//!   alignment length ([`distance::dist_normalized`]),
//! * the **extended** edit distance — the minimum weight of an extended
//!   alignment, whose columns are walks of edit operations
//!   ([`distance::dist_extended`]).
//!
//! None of these is automatically a metric.  Depending on the matrix, each
//! distance lands somewhere in the lattice of generalized metric spaces
//! (premetric, semimetric, hemimetric, pseudometric, quasimetric, metric),
//! and membership is decidable from finitely many inequalities on the matrix
//! entries.  The [`classify`] module implements those decision procedures
//! exactly, and the [`oracle`] module provides brute-force ground truth to
//! test them against.
//!
//! # Exactness
//!
//! Every number in this crate is an exact rational.  The classifier is a
//! decision procedure built from equalities and inequalities between matrix
//! entries; floating-point rounding could flip a verdict, so floats are
//! deliberately not supported.  Algorithms are generic over any [`Scalar`] —
//! a totally ordered exact scalar such as [`Rational`] (arbitrary precision)
//! or `num_rational::Ratio<i64>` (faster, fixed precision) — and the crate
//! root fixes [`Rational`] as the concrete type used by parsing and the CLI.

pub mod classify;
pub mod cli;
pub mod digraph;
pub mod distance;
pub mod matrix;
pub mod oracle;

use std::fmt;

/// Arbitrary-precision signed rational; the default scalar everywhere.
///
/// Canonical form (positive denominator, reduced) is maintained by
/// `num_rational`, so equality and ordering are exact.
pub type Rational = num_rational::BigRational;

/// An exact, totally ordered scalar.
///
/// The distance algorithms and the classifier only add, subtract, multiply,
/// divide and compare, so they are generic over any scalar with exact
/// versions of those operations.  `num_rational::Ratio<i64>` and
/// `num_rational::BigRational` both qualify; `f32`/`f64` do not (they are not
/// totally ordered and their arithmetic rounds, which would corrupt the
/// classifier's verdicts).
pub trait Scalar:
    Clone + Ord + fmt::Debug + fmt::Display + num_traits::Signed + num_traits::FromPrimitive
{
    /// The exact scalar for the integer `n`, used when dividing an alignment
    /// score by its length.
    fn from_len(n: usize) -> Self {
        Self::from_usize(n).expect("alignment length representable in the scalar type")
    }
}

impl<T> Scalar for T where
    T: Clone + Ord + fmt::Debug + fmt::Display + num_traits::Signed + num_traits::FromPrimitive
{
}

pub use classify::{classify, MetricClassReport};
pub use distance::{dist_extended, dist_normalized, dist_weighted, Alignment, ExtendedAlignment};
pub use matrix::{parse_matrix, serialize_matrix, ScoringMatrix, Symbol};

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn rational_arithmetic_is_exact() {
        // p/q + r/s must agree with the integer cross-multiplication result.
        for p in -6i64..=6 {
            for q in 1i64..=6 {
                for r in -6i64..=6 {
                    for s in 1i64..=6 {
                        let lhs = Ratio::new(p, q) + Ratio::new(r, s);
                        let rhs = Ratio::new(p * s + r * q, q * s);
                        assert_eq!(lhs, rhs);
                        let big = Rational::new(p.into(), q.into())
                            + Rational::new(r.into(), s.into());
                        assert_eq!(big, Rational::new((p * s + r * q).into(), (q * s).into()));
                    }
                }
            }
        }
    }

    #[test]
    fn rational_display_is_reduced() {
        let x = Rational::new(18.into(), 6.into());
        assert_eq!(x.to_string(), "3");
        let y = Rational::new(7.into(), 3.into());
        assert_eq!(y.to_string(), "7/3");
        let z = Rational::new((-1).into(), 2.into());
        assert_eq!(z.to_string(), "-1/2");
    }
}
