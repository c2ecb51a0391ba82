use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown modality `{0}`")]
    UnknownModality(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("budget exceeded: {required_bits} valuation bits need {required} evaluations, budget is {budget}")]
    BudgetExceeded {
        required_bits: u32,
        required: u128,
        budget: u64,
    },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("frame is not point-generated by `{0}`")]
    NotPointGenerated(String),
    #[error("invalid input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable one-line code used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } | Error::UnknownModality(_) | Error::Format(_) => "E_PARSE",
            Error::BudgetExceeded { .. } => "E_BUDGET",
            Error::UnknownWorld(_) | Error::BadParameter(_) | Error::NotPointGenerated(_) => {
                "E_PARAM"
            }
        }
    }
}
