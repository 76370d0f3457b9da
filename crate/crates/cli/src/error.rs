use serde_json::{json, Value};

use crate::dsl::ParseError;

/// Exit code for bad arguments or input files.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for failed computations.
pub const EXIT_COMPUTE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {err}")]
    Parse { path: String, err: ParseError },
    #[error("{0}")]
    Compute(#[from] focusdim::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Compute(_) | CliError::Io(_) => EXIT_COMPUTE,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Usage(_) => "usage",
            CliError::Parse { .. } => "parse",
            CliError::Compute(_) => "computation",
            CliError::Io(_) => "io",
        };
        let mut v = json!({
            "error": {
                "kind": kind,
                "exit_code": self.exit_code(),
                "message": self.to_string(),
            }
        });
        if let CliError::Parse { path, err } = self {
            v["error"]["path"] = json!(path);
            v["error"]["parse"] = serde_json::to_value(err).expect("serializable");
        }
        v
    }
}

/// Family constructors reject bad parameters with `BadParameter`; from the
/// command line that is a usage problem.
pub fn params(e: focusdim::Error) -> CliError {
    match e {
        focusdim::Error::BadParameter(m) | focusdim::Error::BadPerturbation(m) => CliError::Usage(m),
        other => CliError::Compute(other),
    }
}
