//! Scoring matrices: symbols, the weight table, TSV input/output, and the
//! gap supremum.
//!
//! A [`ScoringMatrix`] over an alphabet Σ stores one rational weight for
//! every pair in (Σ ∪ {`-`})² except `(-, -)`, which is undefined: an edit
//! operation always touches at least one real letter.  Entries may be
//! negative; sign analysis belongs to the classifier, not the parser.
//!
//! # File format
//!
//! Matrices are read and written as TSV.  The first non-comment line is a
//! header listing the alphabet letters followed by `-`; each subsequent line
//! is a row symbol followed by one value per header column.  The `(-, -)`
//! cell must be the literal `*` or empty.  Values are integers (`3`),
//! fractions (`7/3`), or finite decimals (`0.25`, converted exactly).  Lines
//! starting with `#` are comments.
//!
//! ```text
//! # unit weights over {a, b}
//! \ta\tb\t-
//! a\t0\t1\t1
//! b\t1\t0\t1
//! -\t1\t1\t*
//! ```
//! (shown with visible tabs; the header's leading field is empty)

use crate::{Rational, Scalar};
use num_bigint::BigInt;
use std::fmt;
use thiserror::Error;

/// The character spelling the gap symbol in files and display.
pub const GAP_CHAR: char = '-';

/// A letter of the alphabet or the distinguished gap marker `-`.
///
/// The gap is a separate variant rather than a reserved character so that it
/// can never collide with an alphabet letter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Symbol {
    /// A letter drawn from the alphabet.
    Letter(char),
    /// The gap marker, spelled `-`.
    Gap,
}

impl Symbol {
    /// Maps `-` to [`Symbol::Gap`] and anything else to [`Symbol::Letter`].
    pub fn from_char(c: char) -> Symbol {
        if c == GAP_CHAR {
            Symbol::Gap
        } else {
            Symbol::Letter(c)
        }
    }

    /// The letter inside, or `None` for the gap.
    pub fn as_letter(self) -> Option<char> {
        match self {
            Symbol::Letter(c) => Some(c),
            Symbol::Gap => None,
        }
    }

    /// True for [`Symbol::Gap`].
    pub fn is_gap(self) -> bool {
        matches!(self, Symbol::Gap)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Letter(c) => write!(f, "{c}"),
            Symbol::Gap => write!(f, "{GAP_CHAR}"),
        }
    }
}

/// Errors produced while constructing or parsing a scoring matrix.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    /// The header line is absent or not of the form `letters… -`.
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    /// A row line cannot be interpreted against the header.
    #[error("malformed row '{label}': {reason}")]
    MalformedRow { label: String, reason: String },
    /// A letter or row symbol occurs twice.
    #[error("duplicate symbol '{0}'")]
    DuplicateSymbol(char),
    /// The `(-, -)` cell holds a value; it must stay undefined (`*` or empty).
    #[error("the (-,-) cell must be '*' or empty: no weight is defined for aligning gap with gap")]
    GapGapEntryPresent,
    /// A required entry is absent.
    #[error("missing entry at ({row}, {col})")]
    MissingEntry { row: String, col: String },
    /// A cell is not an integer, fraction, or finite decimal.
    #[error("cannot parse '{0}' as an exact rational")]
    UnparsableNumber(String),
}

/// A scoring matrix: an ordered alphabet and a total weight table over
/// (Σ ∪ {`-`})² minus `(-, -)`.
///
/// The alphabet order is the file's header order and drives every
/// tie-breaking rule in the crate, so results are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoringMatrix<T> {
    alphabet: Vec<char>,
    /// Row-major `(n+1) × (n+1)` table, letters first, gap last; the
    /// `(gap, gap)` slot is the only `None`.
    weights: Vec<Option<T>>,
}

impl<T> ScoringMatrix<T> {
    /// Builds a matrix by evaluating `f` on every defined symbol pair,
    /// row-major with the gap last.
    ///
    /// # Errors
    ///
    /// Fails with [`MatrixError::MalformedHeader`] if the alphabet is empty
    /// or contains `-`, `#`, or whitespace, and with
    /// [`MatrixError::DuplicateSymbol`] on a repeated letter.
    pub fn from_fn(
        alphabet: &[char],
        mut f: impl FnMut(Symbol, Symbol) -> T,
    ) -> Result<Self, MatrixError> {
        validate_alphabet(alphabet)?;
        let n = alphabet.len();
        let mut weights = Vec::with_capacity((n + 1) * (n + 1));
        for x in symbols_of(alphabet) {
            for y in symbols_of(alphabet) {
                if x.is_gap() && y.is_gap() {
                    weights.push(None);
                } else {
                    weights.push(Some(f(x, y)));
                }
            }
        }
        Ok(ScoringMatrix {
            alphabet: alphabet.to_vec(),
            weights,
        })
    }

    /// The alphabet letters in header order.
    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// Number of alphabet letters (the gap excluded).
    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    /// The alphabet letters as symbols, in alphabet order.
    pub fn letters(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.alphabet.iter().map(|&c| Symbol::Letter(c))
    }

    /// All vertices of the edit graph: the letters in alphabet order, then
    /// the gap.
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.letters().chain(std::iter::once(Symbol::Gap))
    }

    /// True if `c` is an alphabet letter.
    pub fn has_letter(&self, c: char) -> bool {
        self.alphabet.contains(&c)
    }

    fn index(&self, sym: Symbol) -> Option<usize> {
        match sym {
            Symbol::Letter(c) => self.alphabet.iter().position(|&a| a == c),
            Symbol::Gap => Some(self.alphabet.len()),
        }
    }

    /// The weight of `(x, y)`, or `None` when `(x, y)` is `(-, -)` or
    /// involves a letter outside the alphabet.
    pub fn get(&self, x: Symbol, y: Symbol) -> Option<&T> {
        let n = self.alphabet.len() + 1;
        let (ix, iy) = (self.index(x)?, self.index(y)?);
        self.weights[ix * n + iy].as_ref()
    }

    /// The weight of `(x, y)`.
    ///
    /// # Panics
    ///
    /// Looking up `(-, -)` is a hard error, as is a letter outside the
    /// alphabet; call sites validate symbols first.
    pub fn entry(&self, x: Symbol, y: Symbol) -> &T {
        self.get(x, y)
            .unwrap_or_else(|| panic!("scoring matrix has no entry for ({x}, {y})"))
    }
}

fn symbols_of(alphabet: &[char]) -> impl Iterator<Item = Symbol> + '_ {
    alphabet
        .iter()
        .map(|&c| Symbol::Letter(c))
        .chain(std::iter::once(Symbol::Gap))
}

fn validate_alphabet(alphabet: &[char]) -> Result<(), MatrixError> {
    if alphabet.is_empty() {
        return Err(MatrixError::MalformedHeader(
            "alphabet must contain at least one letter".into(),
        ));
    }
    for (i, &c) in alphabet.iter().enumerate() {
        if c == GAP_CHAR || c == '#' || c.is_whitespace() {
            return Err(MatrixError::MalformedHeader(format!(
                "'{c}' cannot be an alphabet letter"
            )));
        }
        if alphabet[..i].contains(&c) {
            return Err(MatrixError::DuplicateSymbol(c));
        }
    }
    Ok(())
}

/// The largest gap weight of a matrix, with the first letter attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSupremum<T> {
    /// `max` over letters `a` of `max { γ(a,-), γ(-,a) }`.
    pub value: T,
    /// The first alphabet letter (in header order) attaining `value`.
    pub witness: char,
}

/// Computes the gap supremum: the largest deletion or insertion weight.
///
/// Ties are broken by alphabet order, so the witness is deterministic.  The
/// supremum bounds the normalized distance from above whenever that distance
/// is a premetric (pad both strings with gaps against each other).
pub fn gap_supremum<T: Scalar>(m: &ScoringMatrix<T>) -> GapSupremum<T> {
    let mut best: Option<GapSupremum<T>> = None;
    for &c in m.alphabet() {
        let a = Symbol::Letter(c);
        let worst = m.entry(a, Symbol::Gap).max(m.entry(Symbol::Gap, a));
        if best.as_ref().is_none_or(|b| *worst > b.value) {
            best = Some(GapSupremum {
                value: worst.clone(),
                witness: c,
            });
        }
    }
    best.expect("alphabet is non-empty")
}

/// Parses a TSV document into a scoring matrix (see the module docs for the
/// format).  Row order is irrelevant; every row must appear exactly once.
///
/// # Errors
///
/// [`MatrixError::MalformedHeader`] / [`MatrixError::MalformedRow`] for
/// structural problems, [`MatrixError::DuplicateSymbol`] for repeated
/// letters or rows, [`MatrixError::GapGapEntryPresent`] if the `(-, -)` cell
/// holds a value, [`MatrixError::MissingEntry`] for absent cells or rows, and
/// [`MatrixError::UnparsableNumber`] for cells that are not exact rationals.
pub fn parse_matrix(text: &str) -> Result<ScoringMatrix<Rational>, MatrixError> {
    let mut lines = text
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'));

    let header = lines
        .next()
        .ok_or_else(|| MatrixError::MalformedHeader("document has no header line".into()))?;
    let mut fields: Vec<&str> = header.split('\t').map(str::trim).collect();
    // A leading empty field (the corner above the row labels) is optional.
    if fields.first() == Some(&"") {
        fields.remove(0);
    }
    if fields.len() < 2 {
        return Err(MatrixError::MalformedHeader(
            "header must list at least one letter followed by '-'".into(),
        ));
    }
    if fields.pop() != Some("-") {
        return Err(MatrixError::MalformedHeader(
            "last header column must be '-'".into(),
        ));
    }
    let mut alphabet = Vec::with_capacity(fields.len());
    for field in fields {
        let mut chars = field.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(MatrixError::MalformedHeader(format!(
                "'{field}' is not a single-character letter"
            )));
        };
        alphabet.push(c);
    }
    validate_alphabet(&alphabet)?;

    let n = alphabet.len();
    let columns: Vec<Symbol> = symbols_of(&alphabet).collect();
    let mut weights: Vec<Option<Rational>> = vec![None; (n + 1) * (n + 1)];
    let mut seen = vec![false; n + 1];

    for line in lines {
        let cells: Vec<&str> = line.split('\t').map(str::trim).collect();
        let label = cells[0];
        let row = match (label.chars().next(), label.chars().count()) {
            (Some(GAP_CHAR), 1) => Symbol::Gap,
            (Some(c), 1) if alphabet.contains(&c) => Symbol::Letter(c),
            _ => {
                return Err(MatrixError::MalformedRow {
                    label: label.into(),
                    reason: "row symbol does not appear in the header".into(),
                })
            }
        };
        let ri = symbols_of(&alphabet).position(|s| s == row).unwrap();
        if seen[ri] {
            return Err(MatrixError::DuplicateSymbol(label.chars().next().unwrap()));
        }
        seen[ri] = true;

        // The trailing (-,-) cell of the gap row may be dropped entirely.
        let expected = n + 2;
        if cells.len() > expected || (cells.len() < expected && !(row.is_gap() && cells.len() == expected - 1)) {
            return Err(MatrixError::MalformedRow {
                label: label.into(),
                reason: format!("expected {} values, found {}", expected - 1, cells.len() - 1),
            });
        }

        for (j, &col) in columns.iter().enumerate() {
            let cell = cells.get(j + 1).copied().unwrap_or("");
            if row.is_gap() && col.is_gap() {
                if !(cell.is_empty() || cell == "*") {
                    return Err(MatrixError::GapGapEntryPresent);
                }
                continue;
            }
            if cell.is_empty() || cell == "*" {
                return Err(MatrixError::MissingEntry {
                    row: row.to_string(),
                    col: col.to_string(),
                });
            }
            let value = parse_rational(cell)
                .ok_or_else(|| MatrixError::UnparsableNumber(cell.into()))?;
            weights[ri * (n + 1) + j] = Some(value);
        }
    }

    if let Some(ri) = seen.iter().position(|&s| !s) {
        return Err(MatrixError::MissingEntry {
            row: columns[ri].to_string(),
            col: columns[0].to_string(),
        });
    }

    Ok(ScoringMatrix { alphabet, weights })
}

/// Renders a matrix back to the TSV format accepted by [`parse_matrix`].
///
/// Values are emitted in reduced form (`p/q` or a plain integer) and the
/// `(-, -)` cell as `*`, so `parse_matrix(serialize_matrix(m)) == m`.
pub fn serialize_matrix<T: fmt::Display>(m: &ScoringMatrix<T>) -> String {
    let mut out = String::new();
    for &c in m.alphabet() {
        out.push('\t');
        out.push(c);
    }
    out.push_str("\t-\n");
    for x in m.symbols() {
        out.push_str(&x.to_string());
        for y in m.symbols() {
            out.push('\t');
            match m.get(x, y) {
                Some(v) => out.push_str(&v.to_string()),
                None => out.push('*'),
            }
        }
        out.push('\n');
    }
    out
}

/// Parses `3`, `-7/3`, or `0.25` into an exact rational; `None` on anything
/// else (including non-finite or exponent forms).
fn parse_rational(text: &str) -> Option<Rational> {
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = parse_int(num.trim())?;
        let d: BigInt = parse_int(den.trim())?;
        if d <= BigInt::from(0) {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if text.contains('.') {
        let (negative, digits) = split_sign(text);
        let (int_part, frac_part) = digits.split_once('.')?;
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !is_digits(int_part) || !is_digits(frac_part) {
            return None;
        }
        let numer: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
        let denom = BigInt::from(10).pow(frac_part.len() as u32);
        let numer = if negative { -numer } else { numer };
        return Some(Rational::new(numer, denom));
    }
    parse_int(text).map(Rational::from_integer)
}

fn parse_int(text: &str) -> Option<BigInt> {
    let (negative, digits) = split_sign(text);
    if !is_digits(digits) || digits.is_empty() {
        return None;
    }
    let value: BigInt = digits.parse().ok()?;
    Some(if negative { -value } else { value })
}

fn split_sign(text: &str) -> (bool, &str) {
    if let Some(rest) = text.strip_prefix('-') {
        (true, rest)
    } else {
        (false, text.strip_prefix('+').unwrap_or(text))
    }
}

fn is_digits(s: &str) -> bool {
    s.chars().all(|c| c.is_ascii_digit())
}
