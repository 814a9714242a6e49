use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {point} is outside 1..={n}")]
    OutOfRange { point: usize, n: usize },
    #[error("point {0} appears in more than one pair")]
    DuplicateEndpoint(usize),
    #[error("pair ({0},{0}) joins a point to itself")]
    DegeneratePair(usize),
    #[error("interval [{a},{b}] is not a valid interval of 1..={n}")]
    BadInterval { a: usize, b: usize, n: usize },
    #[error("size mismatch: (n={n1}, k={k1}) vs (n={n2}, k={k2})")]
    SizeMismatch {
        n1: usize,
        k1: usize,
        n2: usize,
        k2: usize,
    },
    #[error("({0},{1}) is not an arc")]
    NotAnArc(usize, usize),
    #[error("point {0} is not an end point")]
    NotEndPoint(usize),
    #[error("point {0} is not a fixed point")]
    NotFixedPoint(usize),
    #[error("points {0} and {1} lie on the same arc")]
    SameArc(usize, usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("second column {0:?} is not standard")]
    NotStandard(Vec<usize>),
    #[error("shape (n={n}, k={k}) needs 0 <= 2k <= n")]
    BadShape { n: usize, k: usize },
    #[error("involution has crossings or bridges, so it is not sigma_T of any tableau")]
    NotMaximal,
    #[error("cannot restrict an empty tableau")]
    Empty,
    #[error("n={n} exceeds the configured limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error(
        "criteria disagree for n={n}, second column {second_column:?}: \
         pattern={pattern}, poincare={poincare}, eta={eta}, flagcount={flagcount}"
    )]
    CriteriaDisagreement {
        n: usize,
        second_column: Vec<usize>,
        pattern: bool,
        poincare: bool,
        eta: bool,
        flagcount: bool,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
