use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid membership function: {0}")]
    InvalidMembership(String),

    #[error("invalid linguistic variable `{variable}`: {reason}")]
    InvalidVariable { variable: String, reason: String },

    #[error("value {value} lies outside the universe [{lo}, {hi}] of `{variable}`")]
    OutOfUniverse {
        variable: String,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("word `{word}` is not a term of `{variable}`")]
    UnknownWord { variable: String, word: String },

    #[error("grade {grade} for word `{word}` is outside [0, 1]")]
    InvalidGrade { word: String, grade: f64 },

    #[error("voting record has no ballots")]
    NoBallots,

    #[error("description is subnormal (largest grade {max_grade}); word probabilities are undefined")]
    SubnormalDescription { max_grade: f64 },

    #[error("focal set {{{focal}}} has zero normalizer under the prior")]
    ZeroNormalizer { focal: String },

    #[error("invalid quantifier variable: {0}")]
    InvalidQuantifier(String),

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("conditional head at column {column} must be an atomic formula")]
    CompoundHead { column: usize },

    #[error("no value supplied for variable `{0}`")]
    MissingValue(String),

    #[error("no definition for variable `{0}`")]
    UnknownVariable(String),

    #[error("conditioning formula has probability zero")]
    ZeroConditioning,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degree {value} at {location} is outside [0, 1]")]
    InvalidDegree { location: String, value: f64 },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("input word length {len} exceeds the enumeration limit {limit}")]
    LengthLimit { len: usize, limit: usize },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("enumeration budget of {budget} words exceeded")]
    BudgetExceeded { budget: usize },

    #[error("{path}: {message}")]
    Unreadable { path: String, message: String },

    #[error("{path}:{line}: {message}")]
    File {
        path: String,
        line: usize,
        message: String,
    },
}
