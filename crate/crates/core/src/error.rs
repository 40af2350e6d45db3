use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two families: malformed input (bad files, simplices
/// that do not exist, wrong dimensions) and mathematical invariant
/// violations (a cochain that is not a cocycle, a surface with an edge in
/// three triangles). [`Error::is_malformed`] tells them apart; the CLI maps
/// them to distinct exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("not a cocycle: coboundary is non-zero on simplex {simplex:?}")]
    NotACocycle { simplex: Vec<usize> },

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("gluing error: {0}")]
    Gluing(String),

    #[error("invalid surgery site: {0}")]
    InvalidSite(String),

    #[error("invalid extension class: {0}")]
    InvalidClass(String),

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("not a monoidal functor: {0}")]
    NotMonoidal(String),

    #[error("object mismatch: {0}")]
    ObjectMismatch(String),

    #[error("coefficient overflow: {0}")]
    Overflow(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by unparseable or ill-referenced input, as
    /// opposed to well-formed input that violates a mathematical invariant.
    pub fn is_malformed(&self) -> bool {
        matches!(
            self,
            Error::Malformed(_) | Error::DomainMismatch(_) | Error::Dimension(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
