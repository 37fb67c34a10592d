use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid precision policy: {0}")]
    InvalidPolicy(String),

    #[error("index {k} exceeds table capacity {k_max}")]
    Capacity { k: usize, k_max: usize },

    #[error("tolerance {tol:e} is below the arithmetic noise floor {floor:e}")]
    Precision { tol: f64, floor: f64 },

    #[error("series needs more than {budget} terms; best bracket [{lower}, {upper}]")]
    Budget {
        budget: u64,
        lower: String,
        upper: String,
    },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("report output failed: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Capacity and budget failures are resource limits rather than bad
    /// input or wrong answers.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
