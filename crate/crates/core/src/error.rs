use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Domain errors. Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("malformed scalar `{0}`")]
    MalformedScalar(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("relation is not uniform: {0}")]
    NonUniformRelation(String),
    #[error("nilpotency bound must be at least 2, got {0}")]
    NilboundTooSmall(usize),
    #[error("the relations rewrite the idempotent of vertex `{0}` to zero; the ideal is not admissible")]
    NotAdmissible(String),
    #[error("rewriting system is not confluent: {0}")]
    NotConfluent(String),

    #[error("path `{0}` is not a route on the mast")]
    NotARoute(String),
    #[error("path `{path}` does not start at vertex `{vertex}`")]
    SourceMismatch { path: String, vertex: String },
    #[error("path `{0}` is not a mast of the sequence")]
    NotAMast(String),
    #[error("the right subpaths of `{0}` are linearly dependent in the algebra")]
    DependentSubpaths(String),
    #[error("unknown detour coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("point does not satisfy the defining equations of the chart")]
    NotOnVariety,
    #[error("the chart of `{0}` is empty")]
    EmptyChart(String),
    #[error("cannot supplement the right subpaths to a basis")]
    ImpossibleSupplementation,

    #[error("subspace is not a submodule")]
    NotSubmodule,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("matrix representation is malformed: {0}")]
    MalformedRepresentation(String),
    #[error("matrix tuple is not in the normalized slice: {0}")]
    ShapeViolation(String),
    #[error("the modules are isomorphic")]
    Isomorphic,
    #[error("module is not uniserial")]
    NotUniserial,

    #[error("search space of {size} tuples exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("enumeration requires a finite field")]
    InfiniteField,

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
}
