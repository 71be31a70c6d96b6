//! Exact classification of scoring matrices by the metric axioms their
//! induced distances satisfy.
//!
//! Whether a distance is, say, symmetric for *every* pair of sequences is
//! decidable from finitely many conditions on the matrix entries (plus a
//! negative-cycle check and, for the extended distance, symmetry of the
//! cheapest-walk closure).  This module evaluates those conditions — one
//! boolean per primitive row, grouped per distance — and folds them into
//! membership flags for six spaces:
//!
//! * `Pr` — premetric: `f(x, x) = 0` and `f ≥ 0`;
//! * `S`  — semimetric: premetric + positivity + symmetry;
//! * `H`  — hemimetric: premetric + triangle inequality;
//! * `P`  — pseudometric: premetric + symmetry + triangle;
//! * `Q`  — quasimetric: premetric + positivity + triangle;
//! * `M`  — metric: all of the above.
//!
//! It also decides membership in four matrix classes: `MC` (the classic
//! symmetric-metric conditions on the entries themselves), `MA` (exactly the
//! matrices whose weighted distance is a metric), `MN` (`MA` plus a gap-cost
//! balance; exactly those whose normalized distance is a metric), and `ME`
//! (exactly those whose extended distance is a metric).  The three
//! equivalences and the containments `MN ⊆ MA ⊆ ME` are re-checked on every
//! call rather than assumed.

use crate::digraph;
use crate::matrix::{ScoringMatrix, Symbol};
use crate::Scalar;
use serde::Serialize;
use thiserror::Error;

/// Errors from the classification routines.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    /// The verdict table for the normalized distance is meaningful only when
    /// the weighted distance is a premetric; beyond that nothing is defined.
    #[error(
        "the weighted distance is not a premetric, so normalized verdicts beyond ¬Pr are undefined"
    )]
    NotPremetric,
}

/// Primitive conditions (a)–(k) for the weighted distance, each decided
/// exactly by quantifying over the alphabet.  Letters `a`, `b`, `c` range
/// over the alphabet independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedProfile {
    /// (a) the edit digraph has no negative cycle.
    pub a: bool,
    /// (b) `γ(a,a) = 0` or `γ(a,-) + γ(-,a) = 0`.
    pub b: bool,
    /// (c) `γ(a,-), γ(-,b), γ(a,b) ≥ 0`.
    pub c: bool,
    /// (d) `γ(a,a) ≥ 0`.
    pub d: bool,
    /// (e) `γ(a,-), γ(-,a) > 0`, and `γ(a,b) > 0` if `a ≠ b`.
    pub e: bool,
    /// (f) `γ(a,-) = γ(-,a)`.
    pub f: bool,
    /// (g) if `γ(a,b) < γ(a,-) + γ(-,b)` then `γ(a,b) = γ(b,a)`.
    pub g: bool,
    /// (h) `γ(a,-) ≤ γ(a,b) + γ(b,-)`.
    pub h: bool,
    /// (i) `γ(-,a) ≤ γ(-,b) + γ(b,a)`.
    pub i: bool,
    /// (j) `min { γ(a,c), γ(a,-) + γ(-,c) } ≤ γ(a,b) + γ(b,c)`.
    pub j: bool,
    /// (k) `γ(b,-) + γ(-,b) ≥ 0`.
    pub k: bool,
}

/// Primitive conditions (a)–(h) for the normalized distance.  All verdicts
/// are conditional on row (a).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedProfile {
    /// (a) the weighted distance is a premetric (equivalently, so is the
    /// normalized one).
    pub a: bool,
    /// (b) `γ(a,-), γ(-,a) > 0`, and `γ(a,b) > 0` if `a ≠ b`.
    pub b: bool,
    /// (c) `γ(a,-) = γ(-,a)`.
    pub c: bool,
    /// (d) if `γ(a,b) < γ(a,-) + γ(-,b)` then `γ(a,b) = γ(b,a)`.
    pub d: bool,
    /// (e) `γ(a,-) ≤ γ(a,b) + γ(b,-)`.
    pub e: bool,
    /// (f) `γ(-,a) ≤ γ(-,b) + γ(b,a)`.
    pub f: bool,
    /// (g) `min { γ(a,c), γ(a,-) + γ(-,c) } ≤ γ(a,b) + γ(b,c)`.
    pub g: bool,
    /// (h) `max { γ(a,-), γ(-,a) } ≤ γ(b,-) + γ(-,b)`.
    pub h: bool,
}

/// Primitive conditions (a)–(e) for the extended distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedProfile {
    /// (a) the edit digraph has no negative cycle.
    pub a: bool,
    /// (b) `γ(a,-), γ(-,b), γ(a,b) ≥ 0`.
    pub b: bool,
    /// (c) `γ(a,a) ≥ 0`.
    pub c: bool,
    /// (d) `γ(a,-), γ(-,a) > 0`, and `γ(a,b) > 0` if `a ≠ b`.
    pub d: bool,
    /// (e) the cheapest-walk table is symmetric: `d(x,y) = d(y,x)` for all
    /// symbols (recorded false, not an error, when a negative cycle exists).
    pub e: bool,
}

/// Membership flags for the six (generalized) metric spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceSet {
    #[serde(rename = "Pr")]
    pub premetric: bool,
    #[serde(rename = "S")]
    pub semimetric: bool,
    #[serde(rename = "H")]
    pub hemimetric: bool,
    #[serde(rename = "P")]
    pub pseudometric: bool,
    #[serde(rename = "Q")]
    pub quasimetric: bool,
    #[serde(rename = "M")]
    pub metric: bool,
}

impl SpaceSet {
    /// All six flags false.
    pub fn none() -> Self {
        SpaceSet {
            premetric: false,
            semimetric: false,
            hemimetric: false,
            pseudometric: false,
            quasimetric: false,
            metric: false,
        }
    }

    /// Containment sanity: `M ⇒ S ∧ P ∧ Q`, `P ⇒ H`, `Q ⇒ H`, and every
    /// flagged space implies `Pr`.
    pub fn lattice_consistent(&self) -> bool {
        let implies = |x: bool, y: bool| !x || y;
        implies(self.metric, self.semimetric && self.pseudometric && self.quasimetric)
            && implies(self.pseudometric, self.hemimetric)
            && implies(self.quasimetric, self.hemimetric)
            && [self.semimetric, self.hemimetric, self.pseudometric, self.quasimetric, self.metric]
                .into_iter()
                .all(|x| implies(x, self.premetric))
    }
}

/// Membership flags for the four matrix classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSet {
    /// Zero diagonal, positive elsewhere, fully symmetric, triangle on the
    /// entries — over all symbols, skipping anything that needs `(-,-)`.
    #[serde(rename = "MC")]
    pub mc: bool,
    /// Exactly the matrices whose weighted distance is a metric.
    #[serde(rename = "MA")]
    pub ma: bool,
    /// `MA` plus `γ(a,-) ≤ 2 γ(b,-)`; exactly those whose normalized
    /// distance is a metric.
    #[serde(rename = "MN")]
    pub mn: bool,
    /// Exactly the matrices whose extended distance is a metric.
    #[serde(rename = "ME")]
    pub me: bool,
}

/// The three condition profiles bundled for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Profiles {
    pub weighted: WeightedProfile,
    pub normalized: NormalizedProfile,
    pub extended: ExtendedProfile,
}

/// Everything [`classify`] decides about one scoring matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MetricClassReport {
    /// Spaces the weighted distance belongs to.
    pub weighted: SpaceSet,
    /// Spaces the normalized distance belongs to; all-false and meaningless
    /// beyond ¬Pr when `normalized_defined` is false.
    pub normalized: SpaceSet,
    /// False when the weighted distance is not a premetric, in which case
    /// the normalized verdict table does not apply.
    pub normalized_defined: bool,
    /// Spaces the extended distance belongs to.
    pub extended: SpaceSet,
    /// Matrix-class memberships.
    pub classes: ClassSet,
    /// The raw per-row condition booleans behind the space sets.
    pub profiles: Profiles,
}

// ---------------------------------------------------------------------------
// Shared primitive conditions.  Quantified letters always range over the
// whole alphabet independently, so diagonal instances are included.

fn letters<T>(m: &ScoringMatrix<T>) -> Vec<Symbol> {
    m.letters().collect()
}

/// `γ(a,-), γ(-,b), γ(a,b) ≥ 0` — equivalently, every defined entry is
/// non-negative.
fn entries_nonnegative<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    m.symbols().all(|x| {
        m.symbols().all(|y| m.get(x, y).is_none_or(|w| *w >= T::zero()))
    })
}

/// `γ(a,a) ≥ 0` for every letter.
fn diagonal_nonnegative<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    m.letters().all(|x| *m.entry(x, x) >= T::zero())
}

/// `γ(a,a) = 0` or `γ(a,-) + γ(-,a) = 0` for every letter.
fn zero_round_trips<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    m.letters().all(|x| {
        *m.entry(x, x) == T::zero()
            || m.entry(x, gap).clone() + m.entry(gap, x).clone() == T::zero()
    })
}

/// `γ(a,-), γ(-,a) > 0`, and `γ(a,b) > 0` if `a ≠ b`.
fn strictly_positive_off_diagonal<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    let ls = letters(m);
    ls.iter()
        .all(|&x| *m.entry(x, gap) > T::zero() && *m.entry(gap, x) > T::zero())
        && ls.iter().all(|&x| {
            ls.iter().all(|&y| x == y || *m.entry(x, y) > T::zero())
        })
}

/// `γ(a,-) = γ(-,a)` for every letter.
fn gaps_symmetric<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    m.letters().all(|x| m.entry(x, gap) == m.entry(gap, x))
}

/// If `γ(a,b) < γ(a,-) + γ(-,b)` then `γ(a,b) = γ(b,a)`.
fn conditional_symmetry<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    let ls = letters(m);
    ls.iter().all(|&x| {
        ls.iter().all(|&y| {
            *m.entry(x, y) >= m.entry(x, gap).clone() + m.entry(gap, y).clone()
                || m.entry(x, y) == m.entry(y, x)
        })
    })
}

/// `γ(a,-) ≤ γ(a,b) + γ(b,-)`.
fn deletion_triangle<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    let ls = letters(m);
    ls.iter().all(|&x| {
        ls.iter().all(|&y| {
            *m.entry(x, gap) <= m.entry(x, y).clone() + m.entry(y, gap).clone()
        })
    })
}

/// `γ(-,a) ≤ γ(-,b) + γ(b,a)`.
fn insertion_triangle<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    let ls = letters(m);
    ls.iter().all(|&x| {
        ls.iter().all(|&y| {
            *m.entry(gap, x) <= m.entry(gap, y).clone() + m.entry(y, x).clone()
        })
    })
}

/// `min { γ(a,c), γ(a,-) + γ(-,c) } ≤ γ(a,b) + γ(b,c)`.
fn min_triangle<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    let ls = letters(m);
    ls.iter().all(|&x| {
        ls.iter().all(|&z| {
            let direct = m.entry(x, z).clone();
            let detour = m.entry(x, gap).clone() + m.entry(gap, z).clone();
            let lhs = direct.min(detour);
            ls.iter()
                .all(|&y| lhs <= m.entry(x, y).clone() + m.entry(y, z).clone())
        })
    })
}

/// `γ(b,-) + γ(-,b) ≥ 0`.
fn gap_round_trips_nonnegative<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    m.letters()
        .all(|x| m.entry(x, gap).clone() + m.entry(gap, x).clone() >= T::zero())
}

/// `max { γ(a,-), γ(-,a) } ≤ γ(b,-) + γ(-,b)`.
fn gap_costs_balanced<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    let ls = letters(m);
    ls.iter().all(|&x| {
        let worst = m.entry(x, gap).max(m.entry(gap, x)).clone();
        ls.iter()
            .all(|&y| worst <= m.entry(y, gap).clone() + m.entry(gap, y).clone())
    })
}

/// Zero diagonal and strictly positive off-diagonal over the given symbols,
/// skipping undefined entries.
fn zero_diagonal_positive_elsewhere<T: Scalar>(m: &ScoringMatrix<T>, syms: &[Symbol]) -> bool {
    syms.iter().all(|&x| {
        syms.iter().all(|&y| match m.get(x, y) {
            None => true,
            Some(w) if x == y => *w == T::zero(),
            Some(w) => *w > T::zero(),
        })
    })
}

// ---------------------------------------------------------------------------
// Profiles and space sets.

/// Decides rows (a)–(k) for the weighted distance.
pub fn profile_weighted<T: Scalar>(m: &ScoringMatrix<T>) -> WeightedProfile {
    WeightedProfile {
        a: !digraph::has_negative_cycle(m),
        b: zero_round_trips(m),
        c: entries_nonnegative(m),
        d: diagonal_nonnegative(m),
        e: strictly_positive_off_diagonal(m),
        f: gaps_symmetric(m),
        g: conditional_symmetry(m),
        h: deletion_triangle(m),
        i: insertion_triangle(m),
        j: min_triangle(m),
        k: gap_round_trips_nonnegative(m),
    }
}

/// Folds a weighted profile into space memberships.
pub fn spaces_weighted(p: &WeightedProfile) -> SpaceSet {
    let pr = p.a && p.b && p.c;
    SpaceSet {
        premetric: pr,
        semimetric: pr && p.d && p.e && p.f && p.g,
        hemimetric: pr && p.h && p.i && p.j && p.k,
        pseudometric: pr && p.f && p.g && p.h && p.i && p.j && p.k,
        quasimetric: pr && p.d && p.e && p.h && p.i && p.j && p.k,
        metric: pr && p.d && p.e && p.f && p.g && p.h && p.i && p.j && p.k,
    }
}

/// Decides rows (a)–(h) for the normalized distance.  Row (a) holds exactly
/// when the weighted distance is a premetric; the two premetric properties
/// are equivalent.
pub fn profile_normalized<T: Scalar>(m: &ScoringMatrix<T>) -> NormalizedProfile {
    NormalizedProfile {
        a: spaces_weighted(&profile_weighted(m)).premetric,
        b: strictly_positive_off_diagonal(m),
        c: gaps_symmetric(m),
        d: conditional_symmetry(m),
        e: deletion_triangle(m),
        f: insertion_triangle(m),
        g: min_triangle(m),
        h: gap_costs_balanced(m),
    }
}

/// Folds a normalized profile into space memberships.
///
/// # Errors
///
/// [`ClassifyError::NotPremetric`] when row (a) fails: the verdict table
/// only characterizes matrices whose normalized distance is a premetric, so
/// nothing beyond ¬Pr can be asserted.
pub fn spaces_normalized(p: &NormalizedProfile) -> Result<SpaceSet, ClassifyError> {
    if !p.a {
        return Err(ClassifyError::NotPremetric);
    }
    Ok(SpaceSet {
        premetric: true,
        semimetric: p.b && p.c && p.d,
        hemimetric: p.e && p.f && p.g && p.h,
        pseudometric: p.c && p.d && p.e && p.f && p.g && p.h,
        quasimetric: p.b && p.e && p.f && p.g && p.h,
        metric: p.b && p.c && p.d && p.e && p.f && p.g && p.h,
    })
}

/// Decides rows (a)–(e) for the extended distance.
pub fn profile_extended<T: Scalar>(m: &ScoringMatrix<T>) -> ExtendedProfile {
    let cl = digraph::closure(m);
    ExtendedProfile {
        a: !cl.has_negative_cycle,
        b: entries_nonnegative(m),
        c: diagonal_nonnegative(m),
        d: strictly_positive_off_diagonal(m),
        e: digraph::d_symmetric(&cl),
    }
}

/// Folds an extended profile into space memberships.  The triangle
/// inequality holds unconditionally for the extended distance, so `H` needs
/// nothing beyond `Pr`.
pub fn spaces_extended(p: &ExtendedProfile) -> SpaceSet {
    let pr = p.a && p.b;
    SpaceSet {
        premetric: pr,
        semimetric: pr && p.c && p.d && p.e,
        hemimetric: pr,
        pseudometric: pr && p.e,
        quasimetric: pr && p.c && p.d,
        metric: pr && p.c && p.d && p.e,
    }
}

// ---------------------------------------------------------------------------
// Matrix classes.

fn class_mc<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let syms: Vec<Symbol> = m.symbols().collect();
    if !zero_diagonal_positive_elsewhere(m, &syms) {
        return false;
    }
    let symmetric = syms.iter().all(|&x| {
        syms.iter().all(|&y| match (m.get(x, y), m.get(y, x)) {
            (Some(xy), Some(yx)) => xy == yx,
            _ => true,
        })
    });
    if !symmetric {
        return false;
    }
    syms.iter().all(|&x| {
        syms.iter().all(|&y| {
            syms.iter().all(|&z| {
                match (m.get(x, z), m.get(x, y), m.get(y, z)) {
                    (Some(xz), Some(xy), Some(yz)) => *xz <= xy.clone() + yz.clone(),
                    // Any term that would need (-,-) is skipped.
                    _ => true,
                }
            })
        })
    })
}

fn class_ma<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    let gaps_equal_positive = m
        .letters()
        .all(|x| m.entry(x, gap) == m.entry(gap, x) && *m.entry(x, gap) > T::zero());
    let ls = letters(m);
    gaps_equal_positive
        && zero_diagonal_positive_elsewhere(m, &ls)
        && conditional_symmetry(m)
        && deletion_triangle(m)
        && min_triangle(m)
}

fn class_mn<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let gap = Symbol::Gap;
    let ls = letters(m);
    let balanced = ls.iter().all(|&x| {
        ls.iter().all(|&y| {
            *m.entry(x, gap) <= m.entry(y, gap).clone() + m.entry(y, gap).clone()
        })
    });
    class_ma(m) && balanced
}

fn class_me<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    diagonal_nonnegative(m)
        && strictly_positive_off_diagonal(m)
        && digraph::d_symmetric(&digraph::closure(m))
}

/// Decides membership in the four matrix classes.
pub fn class_membership<T: Scalar>(m: &ScoringMatrix<T>) -> ClassSet {
    ClassSet {
        mc: class_mc(m),
        ma: class_ma(m),
        mn: class_mn(m),
        me: class_me(m),
    }
}

/// Runs the full classification: per-row profiles, space sets for all three
/// distances, and class memberships.
///
/// The structural facts relating these answers — the weighted distance is a
/// metric iff the matrix is in `MA`, the normalized iff in `MN`, the
/// extended iff in `ME`, `MN ⊆ MA ⊆ ME`, and the space-containment lattice —
/// are asserted on every call, so an inconsistency panics instead of
/// producing a quietly wrong report.
pub fn classify<T: Scalar>(m: &ScoringMatrix<T>) -> MetricClassReport {
    let pw = profile_weighted(m);
    let pn = profile_normalized(m);
    let pe = profile_extended(m);
    let weighted = spaces_weighted(&pw);
    let (normalized, normalized_defined) = match spaces_normalized(&pn) {
        Ok(set) => (set, true),
        Err(ClassifyError::NotPremetric) => (SpaceSet::none(), false),
    };
    let extended = spaces_extended(&pe);
    let classes = class_membership(m);

    assert_eq!(
        weighted.metric, classes.ma,
        "the weighted distance must be a metric exactly for MA matrices"
    );
    assert_eq!(
        normalized.metric, classes.mn,
        "the normalized distance must be a metric exactly for MN matrices"
    );
    assert_eq!(
        extended.metric, classes.me,
        "the extended distance must be a metric exactly for ME matrices"
    );
    assert!(!classes.ma || classes.me, "MA must be contained in ME");
    assert!(!classes.mn || classes.ma, "MN must be contained in MA");
    for set in [&weighted, &normalized, &extended] {
        assert!(set.lattice_consistent(), "space containments must hold");
    }

    MetricClassReport {
        weighted,
        normalized,
        normalized_defined,
        extended,
        classes,
        profiles: Profiles {
            weighted: pw,
            normalized: pn,
            extended: pe,
        },
    }
}
