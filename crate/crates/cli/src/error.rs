use thiserror::Error;

/// Failure of a command, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    /// Library error raised while handling `field`.
    pub fn from_lib(field: &str, e: posauction::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else if field.is_empty() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Validation(format!("{field}: {e}"))
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) trait Context<T> {
    fn field(self, name: &str) -> CliResult<T>;
}

impl<T> Context<T> for posauction::Result<T> {
    fn field(self, name: &str) -> CliResult<T> {
        self.map_err(|e| CliError::from_lib(name, e))
    }
}
