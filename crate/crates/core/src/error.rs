use thiserror::Error;

/// Errors raised across the engine.
///
/// Variants are grouped by how a front end should react to them: input that
/// does not parse, input that parses but is semantically unusable, and
/// evaluations that ran into a configured resource limit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("automaton is ambiguous; multiset semantics requires an unambiguous automaton")]
    Ambiguous,

    #[error("PMRs refer to different graphs ({left} vs {right})")]
    GraphMismatch { left: String, right: String },

    #[error("PMR is not trim")]
    NotTrim,

    #[error("represented path multiset is infinite")]
    InfiniteMultiset,

    #[error("incidence violation: {0}")]
    Incidence(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("determinization exceeded the cap of {cap} states")]
    StateCap { cap: usize },

    #[error("path emission exceeded the cap of {cap} paths")]
    PathCap { cap: usize },

    #[error("invalid document: {0}")]
    Document(String),
}

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }

    /// Input could not be parsed at all.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Format { .. } | Error::Syntax { .. } | Error::Document(_)
        )
    }

    /// A configured resource cap was hit.
    pub fn is_resource_error(&self) -> bool {
        matches!(self, Error::StateCap { .. } | Error::PathCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
