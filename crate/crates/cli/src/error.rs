use std::fmt;

/// CLI-level failures, mapped to exit codes: usage errors exit 2,
/// resource limits exit 3.  Mathematical check failures (verify) exit 1
/// and are not errors here.
#[derive(Debug, Clone)]
pub enum CliError {
    Usage(String),
    Resource(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Resource(m) => write!(f, "{}", m),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<monideal::Error> for CliError {
    fn from(e: monideal::Error) -> Self {
        match e {
            monideal::Error::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
