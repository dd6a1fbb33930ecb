use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("variable catalog mismatch: {0} vs {1} variables")]
    CatalogMismatch(usize, usize),
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    /// Problem with one subspace of a linear configuration (0-based index).
    #[error("invalid configuration: subspace {}: {message}", .index + 1)]
    InvalidSubspace { index: usize, message: String },
    #[error("unknown variable: {0}")]
    UnknownVariable(String),
    #[error("derivation index {index} out of range (model has {count} derivations)")]
    DerivationIndex { index: usize, count: usize },
    #[error("class syntax error at byte {position}: {message}")]
    ClassSyntax { position: usize, message: String },
    #[error("class refers to {0}, which is not an exceptional divisor of this model")]
    UnknownDivisor(String),
    #[error("operation requires a model of kind {expected}")]
    WrongKind { expected: &'static str },
    #[error("no additive action on this model (t = 0); fixed locus analysis does not apply")]
    NoAction,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_))
    }
}
