use thiserror::Error;

/// Everything that can go wrong across the toolkit.
///
/// Size guards exist because several operations (symbolic determinants,
/// substitution into adjugate entries, binomial completion) are exponential in
/// the vertex count; they refuse inputs past the scale they are meant for
/// instead of hanging.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not connected: {0}")]
    NotConnected(String),

    #[error("shortest path between {i} and {j} is not unique")]
    NotUnique { i: usize, j: usize },

    #[error("vertex {0} is not a central vertex")]
    NotCentral(usize),

    #[error("expected exactly one central vertex, found {0}")]
    MultipleCenters(usize),

    #[error("{what} exceeds the size guard (limit {limit})")]
    SizeLimit { what: &'static str, limit: usize },

    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("no value assigned to variable {0}")]
    MissingVariable(String),

    #[error("could not sample a nonsingular point after repeated draws")]
    DegenerateSampling,

    #[error("matrices are indexed by different column variables")]
    ColumnMismatch,

    #[error("expected a vector of length {want}, got {got}")]
    DimensionMismatch { want: usize, got: usize },

    #[error("the given monomial pair is not in the kernel of the monomial map")]
    NotInKernel,

    #[error("fiber is infinite: the exponent matrix has a zero column")]
    InfiniteFiber,

    #[error("generator of degree {gen_degree} cannot sit in the degree-{degree} graded piece")]
    DegreeTooLow { gen_degree: usize, degree: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
