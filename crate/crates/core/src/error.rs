use thiserror::Error;

/// Located syntax error from the presentation or query parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order cycle between {0} and {1}")]
    Cycle(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("empty set where a nonempty set is required")]
    EmptySet,
    #[error("family is not directed: no member refines {0} and {1}")]
    NotDirectedFamily(usize, usize),
    #[error("rule `{0}` relates the wrong kinds of points")]
    IllTypedRule(String),
    #[error("closed relation from `{from}` to `{to}` is not a threshold, shift or tail rule")]
    InexpressibleClosure { from: String, to: String },
    #[error("shape is not directed: {0}")]
    MalformedShape(String),
    #[error("oracle depth {depth} is below the uniformity threshold {threshold}")]
    DepthTooSmall { depth: u64, threshold: u64 },
    #[error("`{0}` requires a dcpo")]
    NotADcpo(String),
    #[error("the wf topology is undefined (poset is not quasiexact)")]
    WfTopologyUndefined,
    #[error("the wwb topology is undefined")]
    WwbTopologyUndefined,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("implication violated on `{poset}`: {implication}")]
    ImplicationViolation { poset: String, implication: String },
    #[error("factor `{0}` has no bottom element")]
    MissingBottom(String),
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("audit bounds too small: {0}")]
    BoundsTooSmall(String),
    #[error("suite failed: {0:?}")]
    SuiteFailure(Vec<String>),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("query parse error: {0}")]
    QueryParse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
