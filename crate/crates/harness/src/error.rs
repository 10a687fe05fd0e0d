use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] tdalab_core::Error),

    #[error("configuration: {0}")]
    Config(String),

    #[error("realization {index}: {msg}")]
    Realization { index: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
