//! Failure classes and their exit codes.

use std::process::ExitCode;

#[derive(Debug)]
pub enum Failure {
    /// Exit code 1.
    Tolerance(String),
    /// Exit code 2.
    Config(String),
    /// Exit code 3.
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Tolerance(_) => 1,
            Failure::Config(_) => 2,
            Failure::Numerical(_) => 3,
        })
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Tolerance(m) | Failure::Config(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<gamov::Error> for Failure {
    fn from(e: gamov::Error) -> Self {
        use gamov::Error::*;
        let msg = e.to_string();
        match e {
            RealPole(_) | NotHardyPlus | NotHardyMinus | NegativeTime(_) | DimensionMismatch { .. } | InvalidModel(_)
            | Unsupported { .. } | BasisTooSmall(_) | NotInDomain | Json(_) => Failure::Config(msg),
            _ => Failure::Numerical(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numerical(format!("i/o: {e}"))
    }
}
