use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("intersection matrix is not negative definite (leading minor fails at {components:?})")]
    NotNegativeDefinite { components: Vec<String> },
    #[error("exceptional dual graph is not a tree: {reason}")]
    NotATree { reason: String },
    #[error("{context} references unknown component `{id}`")]
    DanglingReference { context: String, id: String },
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("components `{0}` and `{1}` meet more than once")]
    MultipleIntersection(String, String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("ideal `{ideal}` is not antinef: excess {excess} at `{component}`")]
    NotAntinef {
        ideal: String,
        component: String,
        excess: String,
    },
    #[error("ideal `{0}` has zero divisor")]
    ZeroIdeal(String),
    #[error("ideal `{0}` has a negative multiplicity")]
    NegativeMultiplicity(String),
    #[error("at least one ideal is required")]
    NoIdeals,
    #[error("unknown ideal `{0}`")]
    UnknownIdeal(String),
    #[error("divisor is not integral")]
    NonIntegralDivisor,
    #[error("unloading did not reach a fixed point after {0} sweeps")]
    NonTermination(usize),
    #[error("divisors live on different graphs ({0} vs {1} components)")]
    GraphMismatch(usize, usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("operation is undefined at the origin")]
    ZeroPoint,
    #[error("coordinate {0} is negative")]
    NegativeCoordinate(usize),
    #[error("divisor has no positive coefficient")]
    ZeroDivisor,
    #[error("degenerate geometry: {0}")]
    GeometryDegeneracy(String),
    #[error("geometry is only implemented for one or two ideals (got {0})")]
    GeometryUnsupported(usize),
    #[error("box corner must be componentwise positive")]
    InvalidBox,
    #[error("point is not a jumping point")]
    NotAJumpingPoint,
    #[error("value at `{component}` is {value}, not an integer")]
    IntegralityViolated { component: String, value: String },
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True when the error signals a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Invariant(_) | Error::GeometryDegeneracy(_) | Error::NonTermination(_)
        )
    }
}
