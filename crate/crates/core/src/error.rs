use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an input parameter was violated.
    #[error("invalid parameter `{field}`: {reason}")]
    Parameter { field: String, reason: String },

    #[error("non-finite sample {value} at x = {coords:?}")]
    Sampling { coords: Vec<f64>, value: f64 },

    #[error("fields are defined on different grids")]
    GridMismatch,

    /// The contour quadrature for a derivative of the flat function did not converge.
    #[error("contour quadrature failed for derivative order {order} at t = {t}: {reason} (try a larger node count M)")]
    Quadrature { order: usize, t: f64, reason: String },

    #[error("malformed input: {0}")]
    Format(String),

    #[error("i/o failure at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parameter {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
