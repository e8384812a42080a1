use compalg::clifford::CliffordError;
use compalg::codec::CodecError;
use compalg::crank::CrankError;
use compalg::exactfields::FieldError;
use compalg::matalg::MatError;
use compalg::poincare::PoincareError;
use compalg::quatalg::QuatError;
use compalg::weylinv::WeylError;
use compalg::zmod::ZmodError;
use thiserror::Error;

/// Errors that end a run with exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Validation(_) => "validation",
            CliError::Budget(_) => "budget",
        }
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Validation(e.to_string())
            }
        })*
    };
}

validation_from!(FieldError, MatError, QuatError, PoincareError, ZmodError);

impl From<CodecError> for CliError {
    fn from(e: CodecError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CrankError> for CliError {
    fn from(e: CrankError) -> Self {
        match e {
            CrankError::InfeasibleScale { .. } => CliError::Budget(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<CliffordError> for CliError {
    fn from(e: CliffordError) -> Self {
        match e {
            CliffordError::OutOfBudget { .. } => CliError::Budget(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}
