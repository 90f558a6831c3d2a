use thiserror::Error;

/// Broad failure classes; the CLI maps these onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Parse,
    Precondition,
    Budget,
    Inconclusive,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation mixes non-parallel paths: {0}")]
    NonParallel(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("relation has {terms} terms, above the cap of {cap}")]
    TermCap { terms: usize, cap: usize },
    #[error("quiver is disconnected")]
    Disconnected,
    #[error("walk is not closed at the base vertex")]
    OpenWalk,
    #[error("walk steps do not chain: {0}")]
    BrokenWalk(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("invalid morphism: {0}")]
    InvalidMap(String),
    #[error("field too small to split the endomorphism algebra")]
    FieldTooSmall,
    #[error("randomized check inconclusive: {0}")]
    Inconclusive(String),
    #[error("group profile mismatch")]
    ProfileMismatch,
    #[error("group error: {0}")]
    Group(String),
    #[error("insufficient stage: residual {0} is not trivial")]
    InsufficientStage(String),
    #[error("window radius {radius} is below the nilpotency bound {bound}")]
    RadiusTooSmall { radius: usize, bound: usize },
    #[error("insufficient margin: {0}")]
    InsufficientMargin(String),
    #[error("grading is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("illegal string: {0}")]
    IllegalString(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("fundamental domain too small; stage {required_stage} or higher needed")]
    DomainTooSmall { required_stage: usize },
    #[error("not a support tau-tilting pair: {0}")]
    NotSupportTilting(String),
    #[error("position {0} admits no left mutation (summand lies in Fac of the rest)")]
    NotLeftMutation(usize),
    #[error("position {0} is out of range")]
    BadPosition(usize),
    #[error("pairs are not related by a mutation")]
    NotMutationPair,
    #[error("budget of {0} exhausted")]
    BudgetExhausted(usize),
    #[error("lockstep divergence: {0}")]
    LockstepDivergence(String),
}

impl Error {
    pub fn category(&self) -> Category {
        match self {
            Error::Parse { .. } | Error::UnknownVertex(_) | Error::UnknownArrow(_) | Error::NonParallel(_) => {
                Category::Parse
            }
            Error::BudgetExhausted(_) => Category::Budget,
            Error::Inconclusive(_) | Error::FieldTooSmall => Category::Inconclusive,
            _ => Category::Precondition,
        }
    }

    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
