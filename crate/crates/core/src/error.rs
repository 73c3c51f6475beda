use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a decimal number: {0:?}")]
pub struct ParseNumberError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator {name:?} at byte {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("duplicate generator {name:?}")]
    DuplicateGenerator { name: String },
    #[error("generator name {name:?} uses the reserved prefix `_t`")]
    ReservedName { name: String },
    #[error("relators given but the presentation has no generators")]
    RelatorsWithoutGenerators,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("the zero vector has no primitivity")]
    ZeroVector,
    #[error("({0}, {1}) are not coprime")]
    NotCoprime(String, String),
    #[error("vector ({0}, {1}) is not primitive")]
    NotPrimitive(String, String),
    #[error("denominator must be positive, got {0}")]
    BadDenominator(String),
    #[error("extended element and zeta disagree on omega or m")]
    Mismatch,
    #[error("certificate violated: {0}")]
    Certificate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("certificate violated: {0}")]
    Certificate(String),
}

/// One violated structural rule, attached to the offending item.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Diagnostic {
    pub item: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(item: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic { item: item.into(), message: message.into() }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.item, self.message)
    }
}

fn join(diags: &[Diagnostic]) -> String {
    diags.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HandleError {
    #[error("invalid handle complex: {}", join(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("unknown cell {0:?}")]
    UnknownCell(String),
    #[error("relation row {row}: {msg}")]
    BadRow { row: usize, msg: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsjError {
    #[error("invalid tree: {}", join(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("node {0:?} has no open child slot")]
    NoOpenSlot(String),
    #[error("slot {slot} of node {node:?} is not available")]
    SlotUnavailable { node: String, slot: usize },
    #[error("a key-chain node cannot have a key-chain child (at {0:?})")]
    KeyChainUnderKeyChain(String),
    #[error("node id {0:?} already present")]
    IdCollision(String),
    #[error("{0:?} is the root and has no parent edge")]
    RootEdge(String),
    #[error("hyperbolic catalog id {0:?} not found")]
    UnknownCatalogId(String),
    #[error(transparent)]
    Number(#[from] ParseNumberError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("{quantity} = {value} outside the domain {domain}")]
    Domain { quantity: String, value: String, domain: String },
    #[error("precision exhausted evaluating {0}; raise the working precision")]
    Precision(String),
    #[error(transparent)]
    Number(#[from] ParseNumberError),
}

/// Crate-wide error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Handle(#[from] HandleError),
    #[error(transparent)]
    Jsj(#[from] JsjError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Number(#[from] ParseNumberError),
}

impl Error {
    /// True when a computed identity failed to hold, as opposed to bad input.
    pub fn is_certificate(&self) -> bool {
        matches!(
            self,
            Error::Lattice(LatticeError::Certificate(_))
                | Error::Linalg(LinalgError::Certificate(_))
                | Error::Handle(HandleError::Linalg(LinalgError::Certificate(_)))
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
