use thiserror::Error;

/// Errors raised by the polynomial, potential and eigensolver routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the natural domain of a function (poles included).
    #[error("domain error: {0}")]
    Domain(String),
    /// Physical or family parameters violate an invariant.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Caller misuse: wrong family kind, bad counts, mismatched grids.
    #[error("usage error: {0}")]
    Usage(String),
    /// A construction that must succeed analytically did not.
    #[error("consistency error: {0}")]
    Consistency(String),
    /// Quadrature refinement did not settle.
    #[error("accuracy error: {0}")]
    Accuracy(String),
    /// Potential is not finite at a grid point.
    #[error("singular potential at x = {x}")]
    Singularity { x: f64 },
    /// Iterative linear algebra failed.
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error once context wrappers are peeled off.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
