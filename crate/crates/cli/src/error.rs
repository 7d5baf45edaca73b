use prabhakar_core::Error;
use std::fmt;

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Error carrying the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        Self { code: EXIT_VALIDATION, message: msg.into() }
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Self { code: EXIT_NUMERICAL, message: msg.into() }
    }

    pub fn io(what: &str, e: std::io::Error) -> Self {
        Self::numerical(format!("cannot write {what}: {e}"))
    }

    /// Core error with a short context prefix.
    pub fn core(ctx: &str, e: Error) -> Self {
        let msg = format!("{ctx}: {e}");
        if e.is_validation() {
            Self::validation(msg)
        } else {
            Self::numerical(msg)
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        if e.is_validation() {
            Self::validation(msg)
        } else {
            Self::numerical(msg)
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CliResult<T> = Result<T, CliError>;
