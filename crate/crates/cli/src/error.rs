use purity_probe_core::Error as CoreError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_SIZE_CAP: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    SizeCap(CoreError),
    #[error("{0}")]
    Budget(CoreError),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INVALID_INPUT,
            CliError::SizeCap(_) => EXIT_SIZE_CAP,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SizeCapExceeded { .. } => CliError::SizeCap(e),
            CoreError::BudgetTooSmall { .. } => CliError::Budget(e),
            CoreError::ConvergenceFailure | CoreError::NoConvergence { .. } => CliError::Failure(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}
