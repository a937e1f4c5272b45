use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{file}: line {line}: {message}")]
    ParseFile { file: String, line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Core(#[from] halllab_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("invalid JSON in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn in_file(self, path: &std::path::Path) -> Self {
        match self {
            CliError::Parse { line, message } => {
                CliError::ParseFile { file: path.display().to_string(), line, message }
            }
            other => other,
        }
    }

    /// 3 for exhausted budgets, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_budget() => 3,
            _ => 2,
        }
    }
}
