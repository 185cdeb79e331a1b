use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unsupported angle denominator {0}; exact evaluation supports 1, 2, 3, 4, 6, 8 and 12")]
    UnsupportedDenominator(String),

    #[error("{0} is not in the Spin(7) torus (need t1 + t3 = t2 + t4 mod 1)")]
    NotInSpin7Torus(String),

    #[error("{point} violates the torus relation of {group}")]
    RelationViolated { group: String, point: String },

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("Spin(7) lift is not integral for weight column {0}")]
    NonIntegralLift(String),

    #[error("parameter count mismatch: left map has {left}, right map has {right}")]
    ParamMismatch { left: usize, right: usize },

    #[error("maps target different groups: {0} and {1}")]
    GroupMismatch(String, String),

    #[error("rep-spec parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown group `{0}` (expected su4, so7 or spin7)")]
    UnknownGroup(String),

    #[error("classification mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
