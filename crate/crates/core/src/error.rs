use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Parameters that cannot describe a valid map, height, grid or problem.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// An argument outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Request outside the supported envelope (order, overflow).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A coefficient of the transformed operator is not finite.
    #[error("coefficient `{term}` is not finite at rho = {rho}")]
    Regularity { term: &'static str, rho: f64 },

    #[error("assembly error: {0}")]
    Assembly(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("mode {m}: {source}")]
    Mode { m: i32, source: Box<Error> },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by invalid input rather than a numerical failure.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::Config(_) | Error::Domain(_) | Error::Unsupported(_) => true,
            Error::Mode { source, .. } => source.is_validation(),
            _ => false,
        }
    }
}
