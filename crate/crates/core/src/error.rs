use alloc::string::String;

/// Errors raised by the analysis routines.
///
/// The variants map onto the CLI exit classes: input problems, resource
/// bounds, and broken internal invariants are kept apart so a caller can
/// tell a bad net from a bug.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("duplicate identifier `{0}`")]
    Duplicate(String),

    #[error("transition `{transition}` is not enabled: place `{place}` holds {have}, needs {need}")]
    NotEnabled {
        transition: String,
        place: String,
        have: u32,
        need: u32,
    },

    #[error("step {index} (`{transition}`) cannot fire: place `{place}` holds {have}, needs {need}")]
    NotFirable {
        index: usize,
        transition: String,
        place: String,
        have: u32,
        need: u32,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported net class: {0}")]
    UnsupportedClass(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no witness exists: {0}")]
    NoWitness(String),

    #[error("resource bound exceeded: {0}")]
    ResourceExceeded(String),

    #[error("internal invariant broken: {0}")]
    InvariantBroken(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedClass(msg.into())
    }
}
