use thiserror::Error;

/// Errors surfaced by the exact kernels and module engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("substitution hits a pole: denominator {denominator} vanishes at the binding")]
    Pole { denominator: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("index ({row}, {col}) out of bounds for {rows}x{cols} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("mode action leaves the truncation window: level {level} exceeds cutoff {cutoff}")]
    Truncation { level: i64, cutoff: u32 },

    #[error("operation unsupported for this module flavor: {0}")]
    UnsupportedFlavor(String),

    #[error("radical quotient requires numeric parameters, got symbolic {0}")]
    SymbolicRadical(String),

    #[error("map is not a Lie-algebra derivation: bracket [{x}, {y}] violated")]
    NotADerivation { x: String, y: String },

    #[error("inconsistent linear system in {0} (internal error)")]
    InconsistentSystem(String),

    #[error("invalid specification: {0}")]
    BadSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
