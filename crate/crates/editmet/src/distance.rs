//! The three distances a scoring matrix induces on sequences.
//!
//! * **Weighted** — cheapest alignment: `d_A(s, t)` is the minimum over all
//!   alignments of the sum of the column weights.
//! * **Normalized** — cheapest alignment *per column*: `d_N(s, t)` is the
//!   minimum over all alignments of `cost / length`.  Longer alignments can
//!   win here, so the optimum is found per alignment length.
//! * **Extended** — cheapest extended alignment: columns widen from symbol
//!   pairs to walks in the edit digraph, so one column may, say, rewrite a
//!   letter through a chain of intermediate letters and charge each step.
//!
//! All three take sequences over the matrix alphabet (no gaps), return an
//! exact rational value, and produce a witness alignment achieving it.
//! Witnesses are deterministic: ties prefer substitution over deletion over
//! insertion, and the normalized distance prefers the shortest optimal
//! alignment.

use crate::digraph::{self, Walk};
use crate::matrix::{ScoringMatrix, Symbol};
use crate::Scalar;
use std::fmt;
use thiserror::Error;

/// Errors from alignment construction and distance evaluation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DistanceError {
    /// A sequence or alignment mentions a letter outside the alphabet (the
    /// gap counts as outside for plain sequences).
    #[error("symbol '{0}' does not appear in the alphabet")]
    UnknownSymbol(char),
    /// A column violates the shape rules for its alignment flavour.
    #[error("illegal column {index}: {reason}")]
    IllegalColumn { index: usize, reason: String },
    /// The two rows of an alignment differ in length.
    #[error("alignment rows differ in length ({top} vs {bottom})")]
    LengthMismatch { top: usize, bottom: usize },
    /// The extended distance is undefined because walk weights are unbounded
    /// below.
    #[error("the edit digraph has a negative cycle, so the extended distance is undefined")]
    NegativeCycle,
}

/// An alignment: two equal-length gapped rows with no all-gap column.
///
/// Stored columnwise; the top row spells the first sequence when gaps are
/// dropped, the bottom row the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alignment {
    columns: Vec<(Symbol, Symbol)>,
}

impl Alignment {
    /// The empty alignment of the empty sequence with itself.
    pub fn empty() -> Self {
        Alignment { columns: Vec::new() }
    }

    /// Builds an alignment from columns.
    ///
    /// # Errors
    ///
    /// [`DistanceError::IllegalColumn`] if some column is `(-, -)`.
    pub fn from_columns(columns: Vec<(Symbol, Symbol)>) -> Result<Self, DistanceError> {
        for (index, &(x, y)) in columns.iter().enumerate() {
            if x.is_gap() && y.is_gap() {
                return Err(DistanceError::IllegalColumn {
                    index,
                    reason: "both symbols are gaps".into(),
                });
            }
        }
        Ok(Alignment { columns })
    }

    /// Builds an alignment from its two gapped rows.
    ///
    /// # Errors
    ///
    /// [`DistanceError::LengthMismatch`] if the rows differ in length, plus
    /// the [`Alignment::from_columns`] errors.
    pub fn from_rows(top: &[Symbol], bottom: &[Symbol]) -> Result<Self, DistanceError> {
        if top.len() != bottom.len() {
            return Err(DistanceError::LengthMismatch {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        Self::from_columns(top.iter().copied().zip(bottom.iter().copied()).collect())
    }

    /// Builds an alignment from two same-length strings, reading `-` as the
    /// gap, e.g. `from_strs("aab-a", "a-bba")`.
    ///
    /// # Errors
    ///
    /// As for [`Alignment::from_rows`].
    pub fn from_strs(top: &str, bottom: &str) -> Result<Self, DistanceError> {
        let t: Vec<Symbol> = top.chars().map(Symbol::from_char).collect();
        let b: Vec<Symbol> = bottom.chars().map(Symbol::from_char).collect();
        Self::from_rows(&t, &b)
    }

    /// The columns, left to right.
    pub fn columns(&self) -> &[(Symbol, Symbol)] {
        &self.columns
    }

    /// Number of columns.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    /// True for the empty alignment.
    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// The two gapped rows as strings.
    pub fn row_strings(&self) -> (String, String) {
        let top = self.columns.iter().map(|&(x, _)| x.to_string()).collect();
        let bottom = self.columns.iter().map(|&(_, y)| y.to_string()).collect();
        (top, bottom)
    }

    /// The two aligned sequences, gaps removed.
    pub fn sequences(&self) -> (Vec<char>, Vec<char>) {
        let top = self.columns.iter().filter_map(|&(x, _)| x.as_letter()).collect();
        let bottom = self.columns.iter().filter_map(|&(_, y)| y.as_letter()).collect();
        (top, bottom)
    }
}

impl fmt::Display for Alignment {
    /// Two lines: the gapped top row, then the gapped bottom row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (top, bottom) = self.row_strings();
        write!(f, "{top}\n{bottom}")
    }
}

/// An extended alignment: one walk per column instead of one symbol pair.
///
/// Each column is a non-empty walk (no two consecutive gaps); the column
/// heads and tails must themselves form a legal [`Alignment`], which rules
/// out columns that both start and end with a gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedAlignment {
    columns: Vec<Walk>,
}

impl ExtendedAlignment {
    /// The empty extended alignment of the empty sequence with itself.
    pub fn empty() -> Self {
        ExtendedAlignment { columns: Vec::new() }
    }

    /// Builds an extended alignment from walk columns.
    ///
    /// # Errors
    ///
    /// [`DistanceError::IllegalColumn`] if a column is empty, repeats the
    /// gap consecutively, or both starts and ends with a gap.
    pub fn from_columns(columns: Vec<Walk>) -> Result<Self, DistanceError> {
        for (index, col) in columns.iter().enumerate() {
            let illegal = |reason: &str| DistanceError::IllegalColumn {
                index,
                reason: reason.into(),
            };
            let (Some(head), Some(tail)) = (col.first(), col.last()) else {
                return Err(illegal("column is empty"));
            };
            if col.windows(2).any(|w| w[0].is_gap() && w[1].is_gap()) {
                return Err(illegal("two consecutive gaps"));
            }
            if head.is_gap() && tail.is_gap() {
                return Err(illegal("column both starts and ends with a gap"));
            }
        }
        Ok(ExtendedAlignment { columns })
    }

    /// The walk columns, left to right.
    pub fn columns(&self) -> &[Walk] {
        &self.columns
    }

    /// Number of columns.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    /// True for the empty extended alignment.
    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// The plain alignment formed by the column heads and tails.
    pub fn skeleton(&self) -> Alignment {
        let columns = self
            .columns
            .iter()
            .map(|c| (*c.first().unwrap(), *c.last().unwrap()))
            .collect();
        Alignment::from_columns(columns).expect("validated columns have a legal skeleton")
    }

    /// The two aligned sequences: heads spell the first, tails the second.
    pub fn sequences(&self) -> (Vec<char>, Vec<char>) {
        self.skeleton().sequences()
    }
}

impl fmt::Display for ExtendedAlignment {
    /// Columns separated by spaces, each written as its symbols in order,
    /// e.g. `a a-b c` for the columns `[a]`, `[a, -, b]`, `[c]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| c.iter().map(Symbol::to_string).collect())
            .collect();
        write!(f, "{}", cols.join(" "))
    }
}

/// Which of the three distances to evaluate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DistanceKind {
    Weighted,
    Normalized,
    Extended,
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceKind::Weighted => "weighted",
            DistanceKind::Normalized => "normalized",
            DistanceKind::Extended => "extended",
        })
    }
}

/// A distance value together with a witness achieving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoredResult<T, W> {
    /// The exact distance.
    pub value: T,
    /// An optimal alignment (deterministic under the documented tie-breaks).
    pub witness: W,
}

fn lookup<T>(m: &ScoringMatrix<T>, x: Symbol, y: Symbol) -> Result<&T, DistanceError> {
    m.get(x, y).ok_or_else(|| {
        for sym in [x, y] {
            if let Some(c) = sym.as_letter() {
                if !m.has_letter(c) {
                    return DistanceError::UnknownSymbol(c);
                }
            }
        }
        unreachable!("validated alignments never look up (-,-)")
    })
}

fn check_sequence<T>(m: &ScoringMatrix<T>, s: &[char]) -> Result<(), DistanceError> {
    match s.iter().find(|&&c| !m.has_letter(c)) {
        Some(&c) => Err(DistanceError::UnknownSymbol(c)),
        None => Ok(()),
    }
}

/// Sum of the column weights of `a` under `m`; zero for the empty alignment.
///
/// # Errors
///
/// [`DistanceError::UnknownSymbol`] if a column letter is not in `m`'s
/// alphabet.
pub fn cost_weighted<T: Scalar>(m: &ScoringMatrix<T>, a: &Alignment) -> Result<T, DistanceError> {
    let mut total = T::zero();
    for &(x, y) in a.columns() {
        total = total + lookup(m, x, y)?.clone();
    }
    Ok(total)
}

/// Cost of `a` per column: [`cost_weighted`] divided by the length.  The
/// empty alignment costs zero.
///
/// # Errors
///
/// As for [`cost_weighted`].
pub fn cost_normalized<T: Scalar>(m: &ScoringMatrix<T>, a: &Alignment) -> Result<T, DistanceError> {
    if a.is_empty() {
        return Ok(T::zero());
    }
    Ok(cost_weighted(m, a)? / T::from_len(a.len()))
}

/// Sum over columns of the walk weight (consecutive-symbol steps); columns
/// with a single symbol are free.
///
/// # Errors
///
/// [`DistanceError::UnknownSymbol`] if a column letter is not in `m`'s
/// alphabet.
pub fn cost_extended<T: Scalar>(
    m: &ScoringMatrix<T>,
    ea: &ExtendedAlignment,
) -> Result<T, DistanceError> {
    let mut total = T::zero();
    for col in ea.columns() {
        for step in col.windows(2) {
            total = total + lookup(m, step[0], step[1])?.clone();
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Op {
    Sub,
    Del,
    Ins,
}

/// The weighted distance `d_A(s, t)` with an optimal alignment.
///
/// Classic quadratic dynamic program over prefixes.  `d_A(ε, ε) = 0` with
/// the empty witness.  Tie-break: substitution, then deletion, then
/// insertion.
///
/// # Errors
///
/// [`DistanceError::UnknownSymbol`] if a sequence letter is not in `m`'s
/// alphabet.
pub fn dist_weighted<T: Scalar>(
    m: &ScoringMatrix<T>,
    s: &[char],
    t: &[char],
) -> Result<ScoredResult<T, Alignment>, DistanceError> {
    check_sequence(m, s)?;
    check_sequence(m, t)?;
    let (n, k) = (s.len(), t.len());
    let mut dp: Vec<Vec<T>> = vec![vec![T::zero(); k + 1]; n + 1];
    let mut ops: Vec<Vec<Op>> = vec![vec![Op::Sub; k + 1]; n + 1];
    for i in 1..=n {
        dp[i][0] = dp[i - 1][0].clone() + m.entry(Symbol::Letter(s[i - 1]), Symbol::Gap).clone();
        ops[i][0] = Op::Del;
    }
    for j in 1..=k {
        dp[0][j] = dp[0][j - 1].clone() + m.entry(Symbol::Gap, Symbol::Letter(t[j - 1])).clone();
        ops[0][j] = Op::Ins;
    }
    for i in 1..=n {
        let si = Symbol::Letter(s[i - 1]);
        for j in 1..=k {
            let tj = Symbol::Letter(t[j - 1]);
            let mut best = dp[i - 1][j - 1].clone() + m.entry(si, tj).clone();
            let mut op = Op::Sub;
            let del = dp[i - 1][j].clone() + m.entry(si, Symbol::Gap).clone();
            if del < best {
                best = del;
                op = Op::Del;
            }
            let ins = dp[i][j - 1].clone() + m.entry(Symbol::Gap, tj).clone();
            if ins < best {
                best = ins;
                op = Op::Ins;
            }
            dp[i][j] = best;
            ops[i][j] = op;
        }
    }

    let mut columns = Vec::with_capacity(n.max(k));
    let (mut i, mut j) = (n, k);
    while i > 0 || j > 0 {
        match ops[i][j] {
            Op::Sub => {
                columns.push((Symbol::Letter(s[i - 1]), Symbol::Letter(t[j - 1])));
                i -= 1;
                j -= 1;
            }
            Op::Del => {
                columns.push((Symbol::Letter(s[i - 1]), Symbol::Gap));
                i -= 1;
            }
            Op::Ins => {
                columns.push((Symbol::Gap, Symbol::Letter(t[j - 1])));
                j -= 1;
            }
        }
    }
    columns.reverse();
    Ok(ScoredResult {
        value: dp[n][k].clone(),
        witness: Alignment::from_columns(columns).expect("the dynamic program emits no (-,-) column"),
    })
}

/// The normalized distance `d_N(s, t)` with an optimal alignment.
///
/// Stratifies the weighted dynamic program by alignment length: layer `L`
/// holds the cheapest cost over alignments with exactly `L` columns, and the
/// answer is the best `cost / L` over feasible lengths (`max(|s|, |t|)` up
/// to `|s| + |t|`).  `d_N(ε, ε) = 0` with the empty witness.  Ties prefer
/// the shortest optimal alignment, then substitution over deletion over
/// insertion.
///
/// # Errors
///
/// [`DistanceError::UnknownSymbol`] if a sequence letter is not in `m`'s
/// alphabet.
pub fn dist_normalized<T: Scalar>(
    m: &ScoringMatrix<T>,
    s: &[char],
    t: &[char],
) -> Result<ScoredResult<T, Alignment>, DistanceError> {
    check_sequence(m, s)?;
    check_sequence(m, t)?;
    let (n, k) = (s.len(), t.len());
    if n == 0 && k == 0 {
        return Ok(ScoredResult {
            value: T::zero(),
            witness: Alignment::empty(),
        });
    }

    let lmax = n + k;
    // layers[l][i * (k+1) + j] = cheapest alignment of s[..i], t[..j] with
    // exactly l columns, if any.
    let cell = |i: usize, j: usize| i * (k + 1) + j;
    let mut layers: Vec<Vec<Option<T>>> = vec![vec![None; (n + 1) * (k + 1)]; lmax + 1];
    let mut ops: Vec<Vec<Op>> = vec![vec![Op::Sub; (n + 1) * (k + 1)]; lmax + 1];
    layers[0][cell(0, 0)] = Some(T::zero());
    for l in 1..=lmax {
        for i in 0..=n.min(l) {
            for j in 0..=k.min(l) {
                // l columns consume at least l symbols across both rows.
                if i + j < l {
                    continue;
                }
                let mut best: Option<(T, Op)> = None;
                let mut consider = |cand: Option<T>, op: Op| {
                    if let Some(c) = cand {
                        if best.as_ref().is_none_or(|(b, _)| c < *b) {
                            best = Some((c, op));
                        }
                    }
                };
                if i > 0 && j > 0 {
                    let sub = layers[l - 1][cell(i - 1, j - 1)].as_ref().map(|v| {
                        v.clone() + m.entry(Symbol::Letter(s[i - 1]), Symbol::Letter(t[j - 1])).clone()
                    });
                    consider(sub, Op::Sub);
                }
                if i > 0 {
                    let del = layers[l - 1][cell(i - 1, j)]
                        .as_ref()
                        .map(|v| v.clone() + m.entry(Symbol::Letter(s[i - 1]), Symbol::Gap).clone());
                    consider(del, Op::Del);
                }
                if j > 0 {
                    let ins = layers[l - 1][cell(i, j - 1)]
                        .as_ref()
                        .map(|v| v.clone() + m.entry(Symbol::Gap, Symbol::Letter(t[j - 1])).clone());
                    consider(ins, Op::Ins);
                }
                if let Some((value, op)) = best {
                    layers[l][cell(i, j)] = Some(value);
                    ops[l][cell(i, j)] = op;
                }
            }
        }
    }

    let mut best: Option<(T, usize)> = None;
    for (l, layer) in layers.iter().enumerate().skip(n.max(k).max(1)) {
        if let Some(cost) = layer[cell(n, k)].as_ref() {
            let ratio = cost.clone() / T::from_len(l);
            if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
                best = Some((ratio, l));
            }
        }
    }
    let (value, mut l) = best.expect("some alignment of s and t exists");

    let mut columns = Vec::with_capacity(l);
    let (mut i, mut j) = (n, k);
    while l > 0 {
        match ops[l][cell(i, j)] {
            Op::Sub => {
                columns.push((Symbol::Letter(s[i - 1]), Symbol::Letter(t[j - 1])));
                i -= 1;
                j -= 1;
            }
            Op::Del => {
                columns.push((Symbol::Letter(s[i - 1]), Symbol::Gap));
                i -= 1;
            }
            Op::Ins => {
                columns.push((Symbol::Gap, Symbol::Letter(t[j - 1])));
                j -= 1;
            }
        }
        l -= 1;
    }
    columns.reverse();
    Ok(ScoredResult {
        value,
        witness: Alignment::from_columns(columns).expect("the dynamic program emits no (-,-) column"),
    })
}

/// The extended distance `d_E(s, t)` with an optimal extended alignment.
///
/// Reduces to the weighted distance under the cheapest-walk closure of the
/// edit digraph: a column from `x` to `y` can never beat `d(x, y)`, and a
/// walk achieving `d(x, y)` turns the bound into equality.  The witness
/// expands each column of the flat optimal alignment into such a walk.
///
/// # Errors
///
/// [`DistanceError::UnknownSymbol`] for letters outside the alphabet
/// (checked first), and [`DistanceError::NegativeCycle`] when the edit
/// digraph has a negative cycle and the distance is undefined.
pub fn dist_extended<T: Scalar>(
    m: &ScoringMatrix<T>,
    s: &[char],
    t: &[char],
) -> Result<ScoredResult<T, ExtendedAlignment>, DistanceError> {
    check_sequence(m, s)?;
    check_sequence(m, t)?;
    let cl = digraph::closure(m);
    if cl.has_negative_cycle {
        return Err(DistanceError::NegativeCycle);
    }
    let star = ScoringMatrix::from_fn(m.alphabet(), |x, y| {
        cl.dist(x, y).expect("the closure covers every defined pair").clone()
    })
    .expect("the source matrix already validated this alphabet");
    let flat = dist_weighted(&star, s, t)?;
    let columns: Vec<Walk> = flat
        .witness
        .columns()
        .iter()
        .map(|&(x, y)| {
            digraph::reconstruct_walk(&cl, x, y).expect("negative cycles were ruled out above")
        })
        .collect();
    Ok(ScoredResult {
        value: flat.value,
        witness: ExtendedAlignment::from_columns(columns)
            .expect("expanding closure walks preserves column legality"),
    })
}
