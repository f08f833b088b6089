use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv output to {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("writing to stdout: {0}")]
    Stdout(#[source] std::io::Error),
    #[error("{0}")]
    Domain(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 for I/O, 2 for domain violations, 3 for failed verification.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Csv { .. } | CliError::Stdout(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<fricke::Error> for CliError {
    fn from(e: fricke::Error) -> Self {
        match e {
            fricke::Error::OutsideV { t, s, .. } => CliError::Domain(outside_message(t, s)),
            other => CliError::Domain(other.to_string()),
        }
    }
}

/// Names the chart inequality that `(t, s)` breaks.
fn outside_message(t: f64, s: f64) -> String {
    use crate::format::sig;
    if !(t.is_finite() && s.is_finite()) {
        return format!("(t, s) = ({t}, {s}) is not finite");
    }
    if !(t > 0.5 && t < 1.0) {
        return format!("t = {} violates 1/2 < t < 1", sig(t));
    }
    let ratio = t / (1.0 - t);
    format!(
        "s = {} violates |s| < log(t/(1−t)) = log({}) = {}",
        sig(s),
        sig(ratio),
        sig(ratio.ln())
    )
}

pub type CliResult<T> = std::result::Result<T, CliError>;
