use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Variants fall into two classes: domain errors (bad input, violated
/// preconditions) and resource errors (a configured size cap would be
/// exceeded). [`Error::is_resource`] tells them apart.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet size {0} outside 2..=36")]
    InvalidAlphabet(usize),
    #[error("order must be at least {min}, got {got}")]
    InvalidOrder { got: usize, min: usize },
    #[error("empty sequence")]
    EmptySequence,
    #[error("invalid symbol {ch:?} at position {position} for alphabet size {alphabet}")]
    Decode {
        position: usize,
        ch: char,
        alphabet: usize,
    },
    #[error("sequence shorter than order ({len} < {order})")]
    ShorterThanOrder { len: usize, order: usize },
    #[error("not a de Bruijn sequence of order {order}")]
    NotDeBruijn { order: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("malformed walk: {0}")]
    MalformedWalk(String),
    #[error("no Eulerian circuit: {0}")]
    NoEulerianCircuit(String),
    #[error("infeasible: no closed dominating walk exists")]
    Infeasible,
    #[error("{what} of {requested} exceeds cap {cap}{}", estimate_suffix(.estimate))]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
        estimate: Option<u128>,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(String),
}

fn estimate_suffix(estimate: &Option<u128>) -> String {
    match estimate {
        Some(n) => format!(" (about {n} search states)"),
        None => String::new(),
    }
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub(crate) fn cap(what: &'static str, requested: u128, cap: usize) -> Self {
        Error::CapExceeded {
            what,
            requested,
            cap: cap as u128,
            estimate: None,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
