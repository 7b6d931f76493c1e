use thiserror::Error;

/// Errors produced by validation, gates and arithmetic preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("complex has a ghost vertex: {0} is not in any face")]
    GhostVertex(usize),

    #[error("subset is not sorted and duplicate-free: {0:?}")]
    BadSubset(Vec<usize>),

    #[error("series caps are incompatible: {0} vs {1}")]
    IncompatibleCaps(usize, usize),

    #[error("james inverse needs zero constant term, got {0}")]
    NonzeroConstantTerm(String),

    #[error("atom for index {0} has no assigned space")]
    MissingSpace(usize),

    #[error("no loop space series available for index {0}")]
    MissingLoopSeries(usize),

    #[error("atom {0} has connectivity 0; smash words need connectivity >= 1")]
    DisconnectedAtom(String),

    #[error("word with suspension degree 0 where a suspension is required")]
    NotASuspension,

    #[error("wedge carries no ambient suspension to remove")]
    NoAmbientSuspension,

    #[error("desuspension gate not satisfied: {0}")]
    GateFailed(String),

    #[error("operation requires pair kind {0}")]
    WrongPairKind(&'static str),

    #[error("homology ranks over the rationals and mod {0} disagree: possible torsion")]
    PossibleTorsion(u64),

    #[error("dual polyhedral product is undefined for the full simplex")]
    DualOfSimplex,

    #[error("bracket word has a map-labeled leaf; only generator leaves expand")]
    UnexpandableLeaf,

    #[error("fold lift needs word length >= m ({length} < {m})")]
    WordTooShort { length: usize, m: usize },

    #[error("invalid group factor: {0}")]
    BadGroupFactor(String),

    #[error("prime must be odd, got {0}")]
    EvenPrime(u64),

    #[error("malformed input: {0}")]
    MalformedInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
