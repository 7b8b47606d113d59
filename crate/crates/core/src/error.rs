use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("surface code distance must be odd and at least 3, got {0}")]
    InvalidDistance(usize),

    #[error("error string has a nontrivial syndrome; its logical class is undefined")]
    NontrivialSyndrome,

    #[error("stabilizer group has {generators} generators, above the enumeration cap of {cap}")]
    GroupTooLarge { generators: usize, cap: usize },

    #[error("coherent backend supports at most {cap} X-checks, code has {checks}")]
    CoherentCapExceeded { checks: usize, cap: usize },

    #[error("statevector oracle supports at most {cap} qubits, code has {n}")]
    OracleTooLarge { n: usize, cap: usize },

    #[error("correction does not return the state to the code space")]
    InconsistentCorrection,

    #[error("decoder left a detection event unmatched")]
    UnmatchedDefect,

    #[error("history has {got} cycles of {checks} checks, expected {expected_cycles} cycles of {expected_checks}")]
    WrongDimensions { got: usize, checks: usize, expected_cycles: usize, expected_checks: usize },

    #[error("probability {0} outside the allowed range")]
    InvalidProbability(f64),

    #[error("at least one measurement cycle is required")]
    NoCycles,

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
