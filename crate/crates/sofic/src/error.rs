//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands are over different alphabets.
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    /// Two operands live on different index sides (ℕ versus ℤ).
    #[error("side mismatch")]
    SideMismatch,
    /// Trimming removed every vertex of a presentation.
    #[error("the presented subshift is empty")]
    EmptySubshift,
    /// A relation fails to be an equivalence relation on its ambient shift.
    #[error("relation is not an equivalence relation on the ambient shift: {0}")]
    NotEquivalence(String),
    /// A point does not lie in the subshift it was checked against.
    #[error("point is not in the subshift")]
    PointNotInSubshift,
    /// A vertex name is not a vertex of the requested level.
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    /// A token is not a symbol of the alphabet.
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    /// The hypotheses of a construction are not met.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    /// A 2×2 integer matrix is not hyperbolic with determinant ±1.
    #[error("matrix is not a hyperbolic toral automorphism: {0}")]
    NotHyperbolic(String),
    /// A set of relations does not close under composition.
    #[error("relations do not close under composition: {0}")]
    NotClosedUnderComposition(String),
    /// A digit sequence is not self-dominating.
    #[error("not a valid d*: shift {shift} exceeds the sequence")]
    NotAValidDStar {
        /// Offending shift amount.
        shift: usize,
    },
    /// A constructed object contradicts a classification theorem.
    #[error("verification mismatch: {0}")]
    VerificationMismatch(String),
    /// A simplicial complex without vertices or facets.
    #[error("empty simplicial complex")]
    EmptyComplex,
    /// A malformed input file or string.
    #[error("parse error at line {line}: {msg}")]
    Parse {
        /// 1-based line number, 0 when not line oriented.
        line: usize,
        /// Description of the problem.
        msg: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
