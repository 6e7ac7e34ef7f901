use std::io;

/// Errors produced by pose, metric, temporal and file-format operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Shapes, lengths or parameters that do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    /// No frame of the sequence has both hip joints.
    #[error("unalignable sequence: no frame has both hip joints present")]
    UnalignableSequence,

    /// The two poses share no limb that is valid on both sides.
    #[error("incomparable poses: no commonly valid limb")]
    IncomparablePoses,

    /// A file did not follow its declared format.
    #[error("malformed {format} data: {reason}")]
    Format {
        format: &'static str,
        reason: String,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn format(format: &'static str, reason: impl Into<String>) -> Self {
        Error::Format {
            format,
            reason: reason.into(),
        }
    }

    /// True when the error originates from the filesystem rather than the data.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io(_) => true,
            Error::Json(e) => e.is_io(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
