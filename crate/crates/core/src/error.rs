use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid regular expression: {0}")]
    InvalidRegex(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid canonical string: {0}")]
    InvalidCanonical(String),

    #[error("state {0} does not exist")]
    UnknownState(usize),

    #[error("state {0} is protected and cannot be eliminated")]
    ProtectedState(usize),

    #[error("elimination order exhausted with states {remaining:?} still eliminable")]
    OrderExhausted { remaining: Vec<usize> },

    #[error("no eliminable state to select")]
    NothingToSelect,

    #[error("cycle enumeration stopped after {found} cycles (cap {cap})")]
    CycleCapExceeded { found: u64, cap: u64 },

    #[error("brute force over {eliminable} eliminable states exceeds the cap of {cap}")]
    BruteForceCap { eliminable: usize, cap: usize },

    #[error("no initially connected automaton drawn after {attempts} attempts")]
    SamplerExhausted { attempts: u64 },

    #[error("invalid sample specification: {0}")]
    InvalidSampleSpec(String),

    #[error("unknown heuristic `{0}`")]
    UnknownHeuristic(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
