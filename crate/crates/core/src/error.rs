use thiserror::Error;

/// Errors raised by the toric computations. Each variant has a stable code used by
/// the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("cone contains a line")]
    NotSharp,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("cone {face} is not a face of cone {cone}")]
    NotAFace { face: usize, cone: usize },
    #[error("subgroup does not have finite index")]
    NotBig,
    #[error("fan is not full: the rays do not span the ambient space")]
    NotFull,
    #[error("fan is empty")]
    EmptyFan,
    #[error("cohomology did not stabilize between box radius {radius} and {next}")]
    BoxUnstable { radius: i64, next: i64 },
    #[error("degree {0} does not lie in the subgroup B")]
    DegreeNotInSubgroup(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl ToricError {
    pub fn code(&self) -> &'static str {
        match self {
            ToricError::NotSharp => "NOT_SHARP",
            ToricError::InvalidFan(_) => "INVALID_FAN",
            ToricError::NotAFace { .. } => "NOT_A_FACE",
            ToricError::NotBig => "NOT_BIG",
            ToricError::NotFull => "NOT_FULL",
            ToricError::EmptyFan => "EMPTY_FAN",
            ToricError::BoxUnstable { .. } => "BOX_UNSTABLE",
            ToricError::DegreeNotInSubgroup(_) => "DEGREE_NOT_IN_B",
            ToricError::InvalidInput(_) => "INVALID_INPUT",
        }
    }

    /// Whether the error is a violated mathematical precondition rather than bad input.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            ToricError::InvalidInput(_) | ToricError::DegreeNotInSubgroup(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, ToricError>;
