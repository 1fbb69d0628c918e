use std::fmt;

use thiserror::Error;

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{span}: syntax error: {msg}")]
    Syntax { span: Span, msg: String },
    #[error("{span}: unknown identifier {name}")]
    UnknownIdentifier { span: Span, name: String },
    #[error("{span}: {name} is already declared")]
    Redeclared { span: Span, name: String },
    #[error("{span}: type mismatch: {msg}")]
    TypeMismatch { span: Span, msg: String },
    #[error("{span}: {source}")]
    Domain {
        span: Span,
        source: sgps_core::Error,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn syntax(span: Span, msg: impl Into<String>) -> Self {
        CliError::Syntax {
            span,
            msg: msg.into(),
        }
    }

    pub fn mismatch(span: Span, msg: impl Into<String>) -> Self {
        CliError::TypeMismatch {
            span,
            msg: msg.into(),
        }
    }

    /// Short machine-readable tag for reports.
    pub fn kind(&self) -> String {
        match self {
            CliError::Syntax { .. } => "SyntaxError".into(),
            CliError::UnknownIdentifier { .. } => "UnknownIdentifier".into(),
            CliError::Redeclared { .. } => "Redeclared".into(),
            CliError::TypeMismatch { .. } => "TypeMismatch".into(),
            CliError::Domain { source, .. } => {
                let dbg = format!("{source:?}");
                dbg.split(['(', ' ', '{'])
                    .next()
                    .unwrap_or("Domain")
                    .to_string()
            }
            CliError::Io(_) => "Io".into(),
        }
    }

    /// 2 for errors found while reading the session, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. }
            | CliError::UnknownIdentifier { .. }
            | CliError::Redeclared { .. }
            | CliError::TypeMismatch { .. } => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub(crate) trait AtSpan<T> {
    fn at(self, span: Span) -> CliResult<T>;
}

impl<T> AtSpan<T> for sgps_core::Result<T> {
    fn at(self, span: Span) -> CliResult<T> {
        self.map_err(|source| CliError::Domain { span, source })
    }
}
