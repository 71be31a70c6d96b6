//! Brute-force ground truth: exhaustive enumeration of (extended)
//! alignments, reference distance minimization, and axiom violation search
//! over bounded sequence universes.
//!
//! Everything here trades speed for obviousness so it can serve as an
//! independent check of the dynamic programs in [`crate::distance`]: the
//! enumerators walk the recursive definition of an alignment directly, and
//! the reference distances fold a minimum over the enumerated sets.
//! Enumeration is streaming, so memory stays bounded even though the counts
//! grow exponentially.

use crate::digraph::{walk_weight, Walk};
use crate::distance::{self, Alignment, DistanceError, DistanceKind, ExtendedAlignment};
use crate::matrix::{ScoringMatrix, Symbol};
use crate::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Default bound on `|s| + |t|` for exhaustive enumeration.  The alignment
/// count grows like 3^(|s|+|t|), so the default keeps worst cases around a
/// few thousand alignments.
pub const DEFAULT_PAIR_LIMIT: usize = 8;

/// Errors from the brute-force routines.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    /// The sequence pair is too large to enumerate exhaustively.
    #[error("|s| + |t| = {total} exceeds the enumeration limit {limit}")]
    LimitExceeded { total: usize, limit: usize },
    /// With a negative entry, longer walk columns can keep lowering the
    /// cost, so no finite column bound makes the extended oracle exact.
    #[error("the extended oracle requires non-negative entries")]
    NegativeEntriesUnsupported,
    /// A distance evaluation failed (unknown symbol, negative cycle, …).
    #[error(transparent)]
    Distance(#[from] DistanceError),
}

/// All sequences over an alphabet up to a length bound, in deterministic
/// length-then-lexicographic order (lexicographic in alphabet order), ε
/// first.
#[derive(Clone, Debug)]
pub struct SequenceUniverse {
    alphabet: Vec<char>,
    max_length: usize,
    sequences: Vec<Vec<char>>,
}

impl SequenceUniverse {
    /// Builds the universe; its size is [`SequenceUniverse::predicted_size`],
    /// so check that first if the bound might be large.
    pub fn new(alphabet: &[char], max_length: usize) -> Self {
        let mut sequences: Vec<Vec<char>> = vec![Vec::new()];
        let mut layer: Vec<Vec<char>> = vec![Vec::new()];
        for _ in 0..max_length {
            let mut next = Vec::with_capacity(layer.len() * alphabet.len());
            for s in &layer {
                for &c in alphabet {
                    let mut extended = s.clone();
                    extended.push(c);
                    next.push(extended);
                }
            }
            sequences.extend(next.iter().cloned());
            layer = next;
        }
        SequenceUniverse {
            alphabet: alphabet.to_vec(),
            max_length,
            sequences,
        }
    }

    /// `Σ_{k=0..max_length} alphabet_len^k`, saturating on overflow.
    pub fn predicted_size(alphabet_len: usize, max_length: usize) -> usize {
        let mut total = 1usize;
        let mut power = 1usize;
        for _ in 0..max_length {
            power = power.saturating_mul(alphabet_len);
            total = total.saturating_add(power);
        }
        total
    }

    /// The alphabet the sequences are drawn from.
    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// The length bound.
    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// The sequences in order.
    pub fn sequences(&self) -> &[Vec<char>] {
        &self.sequences
    }

    /// Number of sequences (at least 1: ε is always present).
    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    /// Never true; the empty sequence is always included.
    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The metric axiom a [`ViolationReport`] witnesses against.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axiom {
    Reflexivity,
    NonNegativity,
    Positivity,
    Symmetry,
    Triangle,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::NonNegativity => "non-negativity",
            Axiom::Positivity => "positivity",
            Axiom::Symmetry => "symmetry",
            Axiom::Triangle => "triangle",
        })
    }
}

/// One concrete axiom violation: recomputing the named distances reproduces
/// `lhs` and `rhs` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationReport<T> {
    pub axiom: Axiom,
    /// The 1–3 sequences involved, in the order used by the axiom.
    pub witnesses: Vec<String>,
    pub lhs: T,
    pub rhs: T,
}

impl<T: fmt::Display> fmt::Display for ViolationReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |i: usize| self.witnesses.get(i).map(String::as_str).unwrap_or("");
        match self.axiom {
            Axiom::Reflexivity => {
                write!(f, "reflexivity: d(\"{0}\", \"{0}\") = {1} ≠ 0", w(0), self.lhs)
            }
            Axiom::NonNegativity => {
                write!(f, "non-negativity: d(\"{}\", \"{}\") = {} < 0", w(0), w(1), self.lhs)
            }
            Axiom::Positivity => write!(
                f,
                "positivity: d(\"{}\", \"{}\") = {} ≤ 0 for distinct sequences",
                w(0),
                w(1),
                self.lhs
            ),
            Axiom::Symmetry => write!(
                f,
                "symmetry: d(\"{0}\", \"{1}\") = {2} ≠ {3} = d(\"{1}\", \"{0}\")",
                w(0),
                w(1),
                self.lhs,
                self.rhs
            ),
            Axiom::Triangle => write!(
                f,
                "triangle: d(\"{0}\", \"{2}\") = {3} > {4} = d(\"{0}\", \"{1}\") + d(\"{1}\", \"{2}\")",
                w(0),
                w(1),
                w(2),
                self.lhs,
                self.rhs
            ),
        }
    }
}

struct Frame {
    i: usize,
    j: usize,
    branch: u8,
}

/// Streaming enumerator over all alignments of a fixed pair; see
/// [`enumerate_alignments`].
pub struct Alignments {
    s: Vec<char>,
    t: Vec<char>,
    stack: Vec<Frame>,
    columns: Vec<(Symbol, Symbol)>,
}

impl Iterator for Alignments {
    type Item = Alignment;

    fn next(&mut self) -> Option<Alignment> {
        while let Some(top) = self.stack.last_mut() {
            let (i, j) = (top.i, top.j);
            let branch = top.branch;
            top.branch += 1;
            match branch {
                0 => {
                    if i == self.s.len() && j == self.t.len() {
                        let done = Alignment::from_columns(self.columns.clone())
                            .expect("the recursion emits no (-,-) column");
                        return Some(done);
                    }
                    if i < self.s.len() && j < self.t.len() {
                        self.columns
                            .push((Symbol::Letter(self.s[i]), Symbol::Letter(self.t[j])));
                        self.stack.push(Frame { i: i + 1, j: j + 1, branch: 0 });
                    }
                }
                1 => {
                    if i < self.s.len() {
                        self.columns.push((Symbol::Letter(self.s[i]), Symbol::Gap));
                        self.stack.push(Frame { i: i + 1, j, branch: 0 });
                    }
                }
                2 => {
                    if j < self.t.len() {
                        self.columns.push((Symbol::Gap, Symbol::Letter(self.t[j])));
                        self.stack.push(Frame { i, j: j + 1, branch: 0 });
                    }
                }
                _ => {
                    self.stack.pop();
                    if !self.stack.is_empty() {
                        self.columns.pop();
                    }
                }
            }
        }
        None
    }
}

/// Streams every alignment of `s` and `t` exactly once, in deterministic
/// recursive-descent order: substitute, then delete, then insert.
///
/// # Errors
///
/// [`OracleError::LimitExceeded`] when `|s| + |t|` exceeds
/// [`DEFAULT_PAIR_LIMIT`].
pub fn enumerate_alignments(s: &[char], t: &[char]) -> Result<Alignments, OracleError> {
    enumerate_alignments_with_limit(s, t, DEFAULT_PAIR_LIMIT)
}

/// [`enumerate_alignments`] with an explicit bound on `|s| + |t|`.
///
/// # Errors
///
/// [`OracleError::LimitExceeded`] when `|s| + |t| > limit`.
pub fn enumerate_alignments_with_limit(
    s: &[char],
    t: &[char],
    limit: usize,
) -> Result<Alignments, OracleError> {
    let total = s.len() + t.len();
    if total > limit {
        return Err(OracleError::LimitExceeded { total, limit });
    }
    Ok(Alignments {
        s: s.to_vec(),
        t: t.to_vec(),
        stack: vec![Frame { i: 0, j: 0, branch: 0 }],
        columns: Vec::new(),
    })
}

/// All legal walks from `x` to `y` over the alphabet's symbols with at most
/// `max_col` vertices, in deterministic preorder (extensions tried letters
/// first, gap last).  The one-vertex walk appears exactly when `x == y`.
fn walks_between(alphabet: &[char], x: Symbol, y: Symbol, max_col: usize) -> Vec<Walk> {
    debug_assert!(!(x.is_gap() && y.is_gap()), "no column runs gap to gap");
    let symbols: Vec<Symbol> = alphabet
        .iter()
        .map(|&c| Symbol::Letter(c))
        .chain(std::iter::once(Symbol::Gap))
        .collect();
    let mut out = Vec::new();
    let mut path = vec![x];
    dfs_walks(&symbols, y, max_col, x == y, &mut path, &mut out);
    out
}

fn dfs_walks(
    symbols: &[Symbol],
    target: Symbol,
    max_col: usize,
    allow_trivial: bool,
    path: &mut Walk,
    out: &mut Vec<Walk>,
) {
    let last = *path.last().expect("paths start non-empty");
    if last == target && (path.len() > 1 || allow_trivial) {
        out.push(path.clone());
    }
    if path.len() == max_col {
        return;
    }
    for &v in symbols {
        if last.is_gap() && v.is_gap() {
            continue;
        }
        path.push(v);
        dfs_walks(symbols, target, max_col, allow_trivial, path, out);
        path.pop();
    }
}

/// Streaming enumerator over extended alignments; see [`enumerate_extended`].
pub struct ExtendedAlignments {
    skeletons: Alignments,
    alphabet: Vec<char>,
    max_col: usize,
    state: Option<OdoState>,
}

struct OdoState {
    walks: Vec<Vec<Walk>>,
    idx: Vec<usize>,
    exhausted: bool,
}

impl OdoState {
    fn advance(&mut self) {
        for pos in (0..self.walks.len()).rev() {
            self.idx[pos] += 1;
            if self.idx[pos] < self.walks[pos].len() {
                return;
            }
            self.idx[pos] = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for ExtendedAlignments {
    type Item = ExtendedAlignment;

    fn next(&mut self) -> Option<ExtendedAlignment> {
        loop {
            if let Some(state) = &mut self.state {
                if !state.exhausted {
                    let columns: Vec<Walk> = state
                        .walks
                        .iter()
                        .zip(&state.idx)
                        .map(|(ws, &i)| ws[i].clone())
                        .collect();
                    state.advance();
                    let done = ExtendedAlignment::from_columns(columns)
                        .expect("walk columns over a legal skeleton are legal");
                    return Some(done);
                }
                self.state = None;
            }
            let skeleton = self.skeletons.next()?;
            let walks: Vec<Vec<Walk>> = skeleton
                .columns()
                .iter()
                .map(|&(x, y)| walks_between(&self.alphabet, x, y, self.max_col))
                .collect();
            let idx = vec![0; walks.len()];
            self.state = Some(OdoState { walks, idx, exhausted: false });
        }
    }
}

/// Streams every extended alignment of `s` and `t` whose columns have at
/// most `max_col` symbols, exactly once: outer loop over skeleton alignments
/// in [`enumerate_alignments`] order, inner odometer over the per-column
/// walk choices.
///
/// # Errors
///
/// [`OracleError::LimitExceeded`] as for [`enumerate_alignments`].
///
/// # Panics
///
/// If `max_col < 2` (no cross-symbol column would fit).
pub fn enumerate_extended(
    alphabet: &[char],
    s: &[char],
    t: &[char],
    max_col: usize,
) -> Result<ExtendedAlignments, OracleError> {
    enumerate_extended_with_limit(alphabet, s, t, max_col, DEFAULT_PAIR_LIMIT)
}

/// [`enumerate_extended`] with an explicit bound on `|s| + |t|`.
///
/// # Errors
///
/// [`OracleError::LimitExceeded`] when `|s| + |t| > limit`.
///
/// # Panics
///
/// If `max_col < 2`.
pub fn enumerate_extended_with_limit(
    alphabet: &[char],
    s: &[char],
    t: &[char],
    max_col: usize,
    limit: usize,
) -> Result<ExtendedAlignments, OracleError> {
    assert!(max_col >= 2, "columns of fewer than 2 symbols cannot span distinct endpoints");
    Ok(ExtendedAlignments {
        skeletons: enumerate_alignments_with_limit(s, t, limit)?,
        alphabet: alphabet.to_vec(),
        max_col,
        state: None,
    })
}

fn entries_nonnegative<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    m.symbols()
        .all(|x| m.symbols().all(|y| m.get(x, y).is_none_or(|w| *w >= T::zero())))
}

fn check_sequences<T>(m: &ScoringMatrix<T>, s: &[char], t: &[char]) -> Result<(), OracleError> {
    match s.iter().chain(t.iter()).find(|&&c| !m.has_letter(c)) {
        Some(&c) => Err(DistanceError::UnknownSymbol(c).into()),
        None => Ok(()),
    }
}

/// Reference distance by exhaustive minimization, for cross-checking the
/// dynamic programs.
///
/// Weighted and normalized kinds fold the minimum cost over every alignment
/// (`max_col` is ignored).  The extended kind requires non-negative entries;
/// it minimizes, over every skeleton alignment, the sum of each column's
/// cheapest walk with at most `max_col` vertices.  That per-column
/// decomposition equals the minimum over the full extended-alignment set
/// because columns are chosen independently once the skeleton is fixed, and
/// with non-negative entries `max_col = |Σ| + 2` is enough: an optimal walk
/// never needs to revisit a vertex.
///
/// # Errors
///
/// [`OracleError::LimitExceeded`] when `|s| + |t|` exceeds `pair_limit`
/// (default [`DEFAULT_PAIR_LIMIT`]); [`OracleError::NegativeEntriesUnsupported`]
/// for the extended kind on a matrix with a negative entry;
/// [`DistanceError::UnknownSymbol`] (wrapped) for letters outside the
/// alphabet.
pub fn brute_distance<T: Scalar>(
    m: &ScoringMatrix<T>,
    kind: DistanceKind,
    s: &[char],
    t: &[char],
    max_col: usize,
    pair_limit: Option<usize>,
) -> Result<T, OracleError> {
    check_sequences(m, s, t)?;
    let limit = pair_limit.unwrap_or(DEFAULT_PAIR_LIMIT);
    // The cheapest bounded walk per column endpoints does not depend on the
    // alignment, so compute it once up front.
    let column_minima: Option<BTreeMap<(Symbol, Symbol), T>> = match kind {
        DistanceKind::Weighted | DistanceKind::Normalized => None,
        DistanceKind::Extended => {
            if !entries_nonnegative(m) {
                return Err(OracleError::NegativeEntriesUnsupported);
            }
            let mut minima = BTreeMap::new();
            for x in m.symbols() {
                for y in m.symbols() {
                    if x.is_gap() && y.is_gap() {
                        continue;
                    }
                    let cheapest = walks_between(m.alphabet(), x, y, max_col)
                        .iter()
                        .map(|w| walk_weight(m, w).expect("walks stay inside the alphabet"))
                        .min()
                        .expect("the direct arc always exists");
                    minima.insert((x, y), cheapest);
                }
            }
            Some(minima)
        }
    };
    let mut best: Option<T> = None;
    for alignment in enumerate_alignments_with_limit(s, t, limit)? {
        let cost = match kind {
            DistanceKind::Weighted => distance::cost_weighted(m, &alignment)?,
            DistanceKind::Normalized => distance::cost_normalized(m, &alignment)?,
            DistanceKind::Extended => {
                let minima = column_minima.as_ref().expect("built for the extended kind");
                let mut total = T::zero();
                for key in alignment.columns() {
                    total = total + minima[key].clone();
                }
                total
            }
        };
        if best.as_ref().is_none_or(|b| cost < *b) {
            best = Some(cost);
        }
    }
    Ok(best.expect("every pair has at least one alignment"))
}

/// Checks all five metric axioms for one distance over a whole universe,
/// returning every violation in deterministic order: reflexivity over
/// single sequences, then non-negativity/positivity/symmetry per ordered
/// pair, then the triangle inequality over ordered triples.
///
/// Distances are computed once per ordered pair with the fast
/// implementations from [`crate::distance`]; the scans then only compare
/// table entries.
///
/// # Errors
///
/// [`DistanceError::NegativeCycle`] (wrapped) for the extended kind on a
/// matrix whose digraph has a negative cycle, and
/// [`DistanceError::UnknownSymbol`] (wrapped) if the universe's alphabet is
/// not contained in the matrix alphabet.
pub fn verify_axioms<T: Scalar>(
    m: &ScoringMatrix<T>,
    kind: DistanceKind,
    universe: &SequenceUniverse,
) -> Result<Vec<ViolationReport<T>>, OracleError> {
    let seqs = universe.sequences();
    let n = seqs.len();
    let mut table: Vec<T> = Vec::with_capacity(n * n);
    for x in seqs {
        for y in seqs {
            let value = match kind {
                DistanceKind::Weighted => distance::dist_weighted(m, x, y)?.value,
                DistanceKind::Normalized => distance::dist_normalized(m, x, y)?.value,
                DistanceKind::Extended => distance::dist_extended(m, x, y)?.value,
            };
            table.push(value);
        }
    }
    let d = |i: usize, j: usize| &table[i * n + j];
    let word = |i: usize| seqs[i].iter().collect::<String>();
    let zero = T::zero();
    let mut out = Vec::new();

    for i in 0..n {
        if *d(i, i) != zero {
            out.push(ViolationReport {
                axiom: Axiom::Reflexivity,
                witnesses: vec![word(i)],
                lhs: d(i, i).clone(),
                rhs: zero.clone(),
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if *d(i, j) < zero {
                out.push(ViolationReport {
                    axiom: Axiom::NonNegativity,
                    witnesses: vec![word(i), word(j)],
                    lhs: d(i, j).clone(),
                    rhs: zero.clone(),
                });
            }
            if i != j && *d(i, j) <= zero {
                out.push(ViolationReport {
                    axiom: Axiom::Positivity,
                    witnesses: vec![word(i), word(j)],
                    lhs: d(i, j).clone(),
                    rhs: zero.clone(),
                });
            }
            if d(i, j) != d(j, i) {
                out.push(ViolationReport {
                    axiom: Axiom::Symmetry,
                    witnesses: vec![word(i), word(j)],
                    lhs: d(i, j).clone(),
                    rhs: d(j, i).clone(),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let bound = d(i, j).clone() + d(j, k).clone();
                if *d(i, k) > bound {
                    out.push(ViolationReport {
                        axiom: Axiom::Triangle,
                        witnesses: vec![word(i), word(j), word(k)],
                        lhs: d(i, k).clone(),
                        rhs: bound,
                    });
                }
            }
        }
    }
    Ok(out)
}
