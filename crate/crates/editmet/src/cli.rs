//! Command-line interface: `editmet classify | dist | align | verify`.
//!
//! Exit codes: 0 on success (including a clean `verify`), 1 when `verify`
//! finds axiom violations, 2 for input errors (unreadable or malformed
//! matrix, unknown symbols, bad flags), 3 when a distance is undefined
//! because the scoring digraph has a negative cycle.  Results go to stdout,
//! diagnostics to stderr.

use crate::classify::classify;
use crate::distance::{self, DistanceError, DistanceKind};
use crate::matrix::{parse_matrix, ScoringMatrix};
use crate::oracle::{verify_axioms, OracleError, SequenceUniverse};
use crate::Rational;
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use std::path::{Path, PathBuf};

/// Success, or `verify` found nothing.
pub const EXIT_OK: i32 = 0;
/// `verify` found at least one axiom violation.
pub const EXIT_VIOLATIONS: i32 = 1;
/// Unreadable or malformed input (matrix, sequences, flags).
pub const EXIT_INPUT: i32 = 2;
/// The requested distance is undefined: negative cycle in the digraph.
pub const EXIT_NEGATIVE_CYCLE: i32 = 3;

/// Environment variable that raises or lowers the `verify` universe cap.
pub const UNIVERSE_CAP_ENV: &str = "EDITMET_MAX_UNIVERSE";

const MAX_LEN_CAP: usize = 4;
const DEFAULT_UNIVERSE_CAP: usize = 500;

#[derive(Parser)]
#[command(
    name = "editmet",
    version,
    about = "Edit distances induced by a scoring matrix, and metric classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a matrix: axiom profiles, distance spaces, and matrix classes as JSON
    Classify {
        /// Scoring matrix in TSV form
        matrix: PathBuf,
    },
    /// Compute the distance between two sequences
    Dist {
        /// Which induced distance to compute
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Scoring matrix in TSV form
        matrix: PathBuf,
        /// First sequence (one character per letter; may be empty)
        s: String,
        /// Second sequence
        t: String,
        /// Also print an optimal witness alignment
        #[arg(long)]
        witness: bool,
        /// Also print a 6-significant-digit decimal approximation
        #[arg(long)]
        decimal: bool,
    },
    /// Compute a distance and always print the witness (alias for dist --witness)
    Align {
        /// Which induced distance to compute
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Scoring matrix in TSV form
        matrix: PathBuf,
        /// First sequence
        s: String,
        /// Second sequence
        t: String,
        /// Also print a 6-significant-digit decimal approximation
        #[arg(long)]
        decimal: bool,
    },
    /// Exhaustively search a bounded sequence universe for axiom violations
    Verify {
        /// Which induced distance to check
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Maximum sequence length in the universe (hard cap 4)
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Restrict the universe to these letters (default: the whole alphabet)
        #[arg(long)]
        alphabet_subset: Option<String>,
        /// Scoring matrix in TSV form
        matrix: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Weighted,
    Normalized,
    Extended,
}

impl From<KindArg> for DistanceKind {
    fn from(kind: KindArg) -> DistanceKind {
        match kind {
            KindArg::Weighted => DistanceKind::Weighted,
            KindArg::Normalized => DistanceKind::Normalized,
            KindArg::Extended => DistanceKind::Extended,
        }
    }
}

/// Parses `std::env::args`, runs the chosen subcommand, and returns the
/// process exit code.  Usage errors print to stderr and exit with code 2
/// (clap's convention, matching [`EXIT_INPUT`]).
pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { matrix } => cmd_classify(&matrix),
        Command::Dist { kind, matrix, s, t, witness, decimal } => {
            cmd_dist(&matrix, kind.into(), &s, &t, witness, decimal)
        }
        Command::Align { kind, matrix, s, t, decimal } => {
            cmd_dist(&matrix, kind.into(), &s, &t, true, decimal)
        }
        Command::Verify { kind, max_len, alphabet_subset, matrix } => {
            cmd_verify(&matrix, kind.into(), max_len, alphabet_subset.as_deref())
        }
    }
}

fn load_matrix(path: &Path) -> Result<ScoringMatrix<Rational>, i32> {
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", path.display());
            return Err(EXIT_INPUT);
        }
    };
    parse_matrix(&text).map_err(|err| {
        eprintln!("error: {}: {err}", path.display());
        EXIT_INPUT
    })
}

fn report_distance_error(err: &DistanceError) -> i32 {
    eprintln!("error: {err}");
    match err {
        DistanceError::NegativeCycle => EXIT_NEGATIVE_CYCLE,
        _ => EXIT_INPUT,
    }
}

fn cmd_classify(path: &Path) -> i32 {
    let m = match load_matrix(path) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let report = classify(&m);
    let json = serde_json::to_string_pretty(&report).expect("the report always serializes");
    println!("{json}");
    EXIT_OK
}

fn cmd_dist(path: &Path, kind: DistanceKind, s: &str, t: &str, witness: bool, decimal: bool) -> i32 {
    let m = match load_matrix(path) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let s: Vec<char> = s.chars().collect();
    let t: Vec<char> = t.chars().collect();
    let (value, witness_text): (Rational, Option<String>) = match kind {
        DistanceKind::Weighted => match distance::dist_weighted(&m, &s, &t) {
            Ok(r) => (r.value, (!r.witness.is_empty()).then(|| r.witness.to_string())),
            Err(err) => return report_distance_error(&err),
        },
        DistanceKind::Normalized => match distance::dist_normalized(&m, &s, &t) {
            Ok(r) => (r.value, (!r.witness.is_empty()).then(|| r.witness.to_string())),
            Err(err) => return report_distance_error(&err),
        },
        DistanceKind::Extended => match distance::dist_extended(&m, &s, &t) {
            Ok(r) => (r.value, (!r.witness.is_empty()).then(|| r.witness.to_string())),
            Err(err) => return report_distance_error(&err),
        },
    };
    println!("{value}");
    if decimal {
        println!("≈ {}", approx6(&value));
    }
    if witness {
        if let Some(text) = witness_text {
            println!("{text}");
        }
    }
    EXIT_OK
}

/// Decimal approximation with 6 significant digits (more integer digits are
/// kept in full rather than rounded away).
fn approx6(value: &Rational) -> String {
    let Some(x) = value.to_f64() else {
        return "?".to_string();
    };
    if x == 0.0 {
        return "0.00000".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (5 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

fn universe_cap() -> Result<usize, String> {
    match std::env::var(UNIVERSE_CAP_ENV) {
        Ok(text) => text
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("{UNIVERSE_CAP_ENV} must be a non-negative integer, got {text:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_UNIVERSE_CAP),
        Err(err) => Err(format!("{UNIVERSE_CAP_ENV}: {err}")),
    }
}

fn cmd_verify(path: &Path, kind: DistanceKind, max_len: usize, subset: Option<&str>) -> i32 {
    let m = match load_matrix(path) {
        Ok(m) => m,
        Err(code) => return code,
    };
    if max_len > MAX_LEN_CAP {
        eprintln!("error: --max-len {max_len} exceeds the hard cap {MAX_LEN_CAP}");
        return EXIT_INPUT;
    }
    let letters: Vec<char> = match subset {
        None => m.alphabet().to_vec(),
        Some(text) => {
            let mut wanted: Vec<char> = Vec::new();
            for c in text.chars() {
                if !m.has_letter(c) {
                    eprintln!("error: --alphabet-subset letter {c:?} is not in the matrix alphabet");
                    return EXIT_INPUT;
                }
                if !wanted.contains(&c) {
                    wanted.push(c);
                }
            }
            // Keep the matrix header order so reports are deterministic.
            m.alphabet().iter().copied().filter(|c| wanted.contains(c)).collect()
        }
    };
    let cap = match universe_cap() {
        Ok(cap) => cap,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_INPUT;
        }
    };
    let size = SequenceUniverse::predicted_size(letters.len(), max_len);
    if size > cap {
        eprintln!(
            "error: the universe would hold {size} sequences, above the cap {cap} \
             (set {UNIVERSE_CAP_ENV} to raise it)"
        );
        return EXIT_INPUT;
    }
    let universe = SequenceUniverse::new(&letters, max_len);
    match verify_axioms(&m, kind, &universe) {
        Ok(violations) if violations.is_empty() => {
            println!("no violations");
            EXIT_OK
        }
        Ok(violations) => {
            for violation in &violations {
                println!("{violation}");
            }
            EXIT_VIOLATIONS
        }
        Err(OracleError::Distance(err)) => report_distance_error(&err),
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_INPUT
        }
    }
}
