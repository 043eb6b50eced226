use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at token {token:?}: {reason}")]
    Syntax { token: String, reason: String },

    #[error("invalid group parameter: {0}")]
    InvalidParam(String),

    #[error("group parameters differ: {left} vs {right}")]
    ParamMismatch { left: String, right: String },

    #[error("word uses alphabet {found}, expected {expected}")]
    WrongAlphabet { expected: String, found: String },

    #[error("vertex cap of {cap} exceeded")]
    ResourceLimit { cap: usize },

    #[error("{0} is not a vertex of the ball")]
    NotInBall(String),

    #[error("no relator polygon exists for k = inf")]
    NoPolygon,

    #[error("radius {radius} is too small for a conclusive report (need at least {needed})")]
    Inconclusive { radius: u32, needed: u32 },

    #[error("index {ell} outside 1..={k}")]
    BadIndex { ell: u32, k: u32 },

    #[error("subset is not a right translate of a canonical subset: {0}")]
    NotCanonicalizable(String),

    #[error("removable points coincide ({0}); not a weak Sierpinski subset")]
    NotWs(String),

    #[error("word {0} is not cyclically reduced and nonempty")]
    NotCyclicallyReduced(String),

    #[error("invalid cut data: {0}")]
    InvalidCuts(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
