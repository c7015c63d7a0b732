use genset_lab_core::Error as CoreError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const FAIL: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const CAP: u8 = 3;
    pub const PRECONDITION: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed group spec: {0}")]
    Parse(String),
    #[error("report encoding failed: {0}")]
    Encode(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Parse(_) => exit::PARSE,
            CliError::Write { .. } | CliError::Encode(_) => exit::FAIL,
            CliError::Core(e) => core_exit_code(e),
        }
    }
}

pub fn core_exit_code(e: &CoreError) -> u8 {
    match e {
        CoreError::Invalid(_) => exit::PARSE,
        CoreError::CapExceeded { .. } | CoreError::BudgetExhausted { .. } | CoreError::Overflow(_) => exit::CAP,
        CoreError::Precondition(_) => exit::PRECONDITION,
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
