use std::fmt;

/// Failure classes that map onto the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags, unknown presets, unphysical geometries, unwritable outputs.
    Usage(String),
    /// A numerical routine failed on valid input.
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn usage(e: impl fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn numerical(e: impl fmt::Display) -> Self {
        CliError::Numerical(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => crate::EXIT_USAGE,
            CliError::Numerical(_) => crate::EXIT_NUMERICAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
