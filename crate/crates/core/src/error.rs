use thiserror::Error;

/// Every failure the engine can report.
///
/// Verdicts that are part of a report (a failed law, a refuted descent
/// condition) are not errors; these variants cover inputs an operation
/// refuses to work on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate point label `{0}`")]
    DuplicatePoint(String),

    #[error("unknown point label `{0}`")]
    UnknownLabel(String),

    #[error("not a topology: {0}")]
    NotATopology(String),

    #[error("map is not total: no image for `{0}`")]
    NotTotal(String),

    #[error("map is not surjective: `{0}` has no preimage")]
    NotSurjective(String),

    #[error("map is not continuous: `{lo}` <= `{hi}` but their images are not ordered")]
    NotContinuous { lo: String, hi: String },

    #[error("space `{0}` is not T0")]
    NotT0(String),

    #[error("order is not a partial order: `{0}` and `{1}` are equivalent")]
    NotAPartialOrder(String, String),

    #[error("objects live over different base spaces")]
    BaseMismatch,

    #[error("not a lax morphism: the triangle fails at `{0}`")]
    NotLax(String),

    #[error("morphisms are not parallel")]
    NotParallel,

    #[error("morphisms are not composable")]
    NotComposable,

    #[error("no infimum for the family {0:?}")]
    MeetsMissing(Vec<String>),

    #[error("no binary meets: `{0}` and `{1}` have no infimum")]
    NoMeets(String, String),

    #[error("base is not a complete lattice: {0}")]
    NotACompleteLattice(String),

    #[error("base is not a lattice: {0}")]
    NotALattice(String),

    #[error("base is not a frame: {0}")]
    NotAFrame(String),

    #[error("base is not completely distributive: {0}")]
    NotCompletelyDistributive(String),

    #[error("no Heyting implication `{0}` => `{1}`")]
    NotHeyting(String, String),

    #[error("base is not a chain: `{0}` and `{1}` are incomparable")]
    NotAChain(String, String),

    #[error("filtration level at `{0}` is not a closed subset")]
    NotClosedLevel(String),

    #[error("filtration is malformed: {0}")]
    BadFiltration(String),

    #[error("enumeration budget exceeded ({0})")]
    CapExceeded(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error at `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
