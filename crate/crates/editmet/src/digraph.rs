//! The edit digraph induced by a scoring matrix, and shortest walks in it.
//!
//! The digraph has one vertex per symbol (letters and the gap) and an arc
//! `x → y` weighted `γ(x, y)` for every defined pair — so every arc except
//! `(-,-)`, self-loops included.  Because that one arc is missing, no walk
//! ever visits the gap twice in a row.
//!
//! The weight `d(x, y)` of a cheapest walk from `x` to `y` is what the
//! extended distance charges for a column that starts with `x` and ends with
//! `y`.  A single-vertex walk is legal and free, so `d(a, a) = 0` for every
//! letter unless some cycle is negative; the gap-to-gap entry is the
//! cheapest detour through a letter, since the trivial gap column is never
//! usable.  When any cycle has negative total weight, cheapest walks do not
//! exist at all, and that is exactly the case where the extended distance is
//! undefined.

use crate::matrix::{ScoringMatrix, Symbol};
use crate::Scalar;
use thiserror::Error;

/// A walk in the edit digraph: the visited vertices in order, length ≥ 1.
pub type Walk = Vec<Symbol>;

/// Errors from shortest-walk queries.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigraphError {
    /// Some cycle has negative total weight, so walk weights are unbounded
    /// below and no optimal walk exists.
    #[error("the edit digraph has a negative cycle; walk weights are unbounded below")]
    NegativeCycleState,
}

/// All-pairs cheapest-walk table for the edit digraph, with enough
/// bookkeeping to reconstruct one optimal walk per pair.
#[derive(Clone, Debug)]
pub struct WalkClosure<T> {
    /// Letters in alphabet order, then the gap.
    symbols: Vec<Symbol>,
    /// True when some cycle has negative weight; the tables are then only
    /// lower estimates and reconstruction is refused.
    pub has_negative_cycle: bool,
    /// `d[i][j]` = weight of a cheapest walk from symbol `i` to symbol `j`.
    /// Letter diagonals count the trivial one-vertex walk; the gap diagonal
    /// counts only walks that pass through a letter.
    d: Vec<Vec<Option<T>>>,
    /// `successor[i][j]` = second vertex on the recorded optimal walk.
    successor: Vec<Vec<Option<usize>>>,
}

impl<T> WalkClosure<T> {
    fn index(&self, sym: Symbol) -> Option<usize> {
        self.symbols.iter().position(|&s| s == sym)
    }

    /// The symbols indexing the table: letters in alphabet order, then gap.
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Cheapest walk weight from `x` to `y`, or `None` for symbols outside
    /// the alphabet.  Every in-alphabet pair is reachable.
    pub fn dist(&self, x: Symbol, y: Symbol) -> Option<&T> {
        self.d[self.index(x)?][self.index(y)?].as_ref()
    }
}

/// Sum of arc weights along `walk`, or `None` if the walk is empty, steps
/// through a symbol outside the alphabet, or uses the missing `(-,-)` arc.
pub fn walk_weight<T: Scalar>(m: &ScoringMatrix<T>, walk: &[Symbol]) -> Option<T> {
    if walk.is_empty() {
        return None;
    }
    let mut total = T::zero();
    for pair in walk.windows(2) {
        total = total + m.get(pair[0], pair[1])?.clone();
    }
    Some(total)
}

/// True when the edit digraph contains a cycle of negative total weight.
///
/// Runs Bellman–Ford from a virtual source connected to every vertex, so
/// cycles anywhere in the digraph are found.
pub fn has_negative_cycle<T: Scalar>(m: &ScoringMatrix<T>) -> bool {
    let verts: Vec<Symbol> = m.symbols().collect();
    let mut dist: Vec<T> = vec![T::zero(); verts.len()];
    for round in 0..verts.len() {
        let mut changed = false;
        for (i, &x) in verts.iter().enumerate() {
            for (j, &y) in verts.iter().enumerate() {
                let Some(w) = m.get(x, y) else { continue };
                let cand = dist[i].clone() + w.clone();
                if cand < dist[j] {
                    if round == verts.len() - 1 {
                        return true;
                    }
                    dist[j] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            return false;
        }
    }
    false
}

/// Computes the all-pairs cheapest-walk closure by Floyd–Warshall, after a
/// Bellman–Ford pass to flag negative cycles.
pub fn closure<T: Scalar>(m: &ScoringMatrix<T>) -> WalkClosure<T> {
    let symbols: Vec<Symbol> = m.symbols().collect();
    let n = symbols.len();
    let negative = has_negative_cycle(m);

    let mut d: Vec<Vec<Option<T>>> = vec![vec![None; n]; n];
    let mut successor: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for (i, &x) in symbols.iter().enumerate() {
        for (j, &y) in symbols.iter().enumerate() {
            if let Some(w) = m.get(x, y) {
                d[i][j] = Some(w.clone());
                successor[i][j] = Some(j);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k].clone() else { continue };
            for j in 0..n {
                let Some(kj) = d[k][j].as_ref() else { continue };
                let cand = ik.clone() + kj.clone();
                if d[i][j].as_ref().is_none_or(|cur| cand < *cur) {
                    d[i][j] = Some(cand);
                    successor[i][j] = successor[i][k];
                }
            }
        }
    }
    // The one-vertex walk caps every letter diagonal at zero.  (Below zero
    // means a negative cycle; keep the evidence in that case.)
    for i in 0..n - 1 {
        if d[i][i].as_ref().is_none_or(|w| *w > T::zero()) {
            d[i][i] = Some(T::zero());
            successor[i][i] = None;
        }
    }

    WalkClosure {
        symbols,
        has_negative_cycle: negative,
        d,
        successor,
    }
}

/// Reconstructs one cheapest walk from `x` to `y` out of a closure.
///
/// Deterministic: ties were broken during the closure computation by symbol
/// order, first hop wins.  A letter-to-itself query yields the one-vertex
/// walk.
///
/// # Errors
///
/// [`DigraphError::NegativeCycleState`] when the closure was built over a
/// digraph with a negative cycle.
///
/// # Panics
///
/// If `x` or `y` is a letter outside the alphabet.
pub fn reconstruct_walk<T: Scalar>(
    cl: &WalkClosure<T>,
    x: Symbol,
    y: Symbol,
) -> Result<Walk, DigraphError> {
    if cl.has_negative_cycle {
        return Err(DigraphError::NegativeCycleState);
    }
    let i = cl.index(x).unwrap_or_else(|| panic!("unknown symbol {x}"));
    let j = cl.index(y).unwrap_or_else(|| panic!("unknown symbol {y}"));
    if i == j && !x.is_gap() {
        return Ok(vec![x]);
    }
    let mut walk = vec![x];
    let mut cur = i;
    loop {
        let next = cl.successor[cur][j].expect("every in-alphabet pair is reachable");
        walk.push(cl.symbols[next]);
        cur = next;
        if cur == j && walk.len() > 1 {
            return Ok(walk);
        }
        assert!(
            walk.len() <= cl.symbols.len() + 2,
            "optimal walk reconstruction exceeded the vertex bound"
        );
    }
}

/// True when the cheapest-walk table is symmetric over all symbol pairs.
///
/// Returns false outright on a negative cycle, where walk weights are not
/// defined in the first place.
pub fn d_symmetric<T: Scalar>(cl: &WalkClosure<T>) -> bool {
    if cl.has_negative_cycle {
        return false;
    }
    let n = cl.symbols.len();
    (0..n).all(|i| (i + 1..n).all(|j| cl.d[i][j] == cl.d[j][i]))
}
