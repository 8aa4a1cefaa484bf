use crate::linquot::BadPair;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A vertex index outside the ambient vertex range.
    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    /// Edge families must be antichains; containments are rejected rather
    /// than repaired.
    #[error("edge family is not an antichain: {contained} is contained in {container}")]
    AntichainViolation {
        contained: String,
        container: String,
    },

    /// Height queries on a clutter with no edges.
    #[error("height is undefined: the clutter has no edges")]
    UndefinedHeight,

    /// A configured resource budget ran out. Distinct from a definitive
    /// negative answer.
    #[error("resource budget exceeded: {budget} = {limit}")]
    BudgetExceeded { budget: &'static str, limit: usize },

    /// A cover-transformation hypothesis does not hold for the given input.
    #[error("lemma hypothesis not satisfied: {0}")]
    LemmaHypothesis(String),

    /// A guaranteed postcondition failed; signals that the input was not
    /// genuinely of the promised shape.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    /// Color classes / matching do not form a valid grid structure.
    #[error("invalid grid structure: {0}")]
    InvalidGrid(String),

    /// The height-4 ordering is only defined in the absence of condition (*);
    /// carries the offending bad vertex cover pair.
    #[error("condition (*) holds: bad vertex cover pair {0}")]
    ConditionStar(BadPair),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
