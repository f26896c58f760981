use thiserror::Error;

/// Errors raised by the laboratory. Each variant maps onto one of the
/// process exit codes used by the command-line front end.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole of {function} at s = {at}")]
    Pole { function: &'static str, at: String },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("audit failed: {0}")]
    Audit(String),
    #[error("incomplete zero scan for {label} on [{from}, {to}]: {found} sign changes, {expected} zeros by argument principle")]
    IncompleteScan {
        label: String,
        from: f64,
        to: f64,
        found: usize,
        expected: usize,
    },
    #[error("insufficient zeros for {label}: need height {needed}, have {available}")]
    InsufficientZeros {
        label: String,
        needed: f64,
        available: f64,
    },
    #[error("missing central reports for moduli {0:?}")]
    MissingReports(Vec<u64>),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl LabError {
    pub fn domain(msg: impl Into<String>) -> Self {
        LabError::Domain(msg.into())
    }

    /// 2 domain, 3 resource, 4 audit or incompleteness, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Domain(_) | LabError::Pole { .. } => 2,
            LabError::Resource(_) => 3,
            LabError::Audit(_)
            | LabError::IncompleteScan { .. }
            | LabError::InsufficientZeros { .. }
            | LabError::MissingReports(_) => 4,
            LabError::Cache(_) | LabError::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
