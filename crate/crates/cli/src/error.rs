use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed flags, config files or grids.
    #[error("{0}")]
    Usage(String),

    /// A value the library would accept syntactically but not physically.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] cavity_cat::Error),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 usage, 2 parameter validation, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Core(_) => 3,
        }
    }
}
