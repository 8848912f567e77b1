use thiserror::Error;

/// Errors raised by the library. Every variant has a stable string code
/// (see [`Error::code`]) that the CLI reports verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state {state} has two outgoing edges labelled {letter}")]
    DuplicateOutLabel { state: String, letter: String },
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("duplicate state {0}")]
    DuplicateState(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(String),
    #[error("unknown edge id {0}")]
    UnknownEdge(String),
    #[error("letter {0} is not in the alphabet")]
    LetterNotInAlphabet(String),
    #[error("duplicate letter {0} in alphabet")]
    DuplicateLetter(String),
    #[error("edge {0} has no label")]
    MissingLabel(String),
    #[error("graph has no states")]
    EmptyGraph,

    #[error("morphism does not send the root to the root")]
    RootNotPreserved,
    #[error("edge {0} is not mapped compatibly with its endpoints")]
    EdgeEndpointMismatch(String),
    #[error("morphism is not total: {0}")]
    IncompleteMorphism(String),
    #[error("out-edges of state {0} are not mapped injectively")]
    NotLocallyInjective(String),
    #[error("out-edges of state {0} are not mapped surjectively")]
    NotLocallySurjective(String),
    #[error("target graph is not connected from its root")]
    TargetNotConnected,
    #[error("edge sequence is not a path")]
    NotAPath,
    #[error("path does not start at the image of the start state")]
    WrongStartVertex,
    #[error("morphisms cannot be composed: domain mismatch")]
    DomainMismatch,

    #[error("graph is not connected from its root")]
    NotConnected,
    #[error("automaton is not geometrically minimal")]
    NotMinimal,
    #[error("permutation is not admissible at state {state}: {reason}")]
    NotAdmissible { state: String, reason: String },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("word {0} is not accepted")]
    WordNotAccepted(String),
    #[error("portraits live over different automata")]
    BaseMismatch,
    #[error("result too large: {0}")]
    TooLarge(String),

    #[error("malformed input: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateOutLabel { .. } => "DuplicateOutLabel",
            Error::UnknownState(_) => "UnknownState",
            Error::DuplicateState(_) => "DuplicateState",
            Error::DuplicateEdgeId(_) => "DuplicateEdgeId",
            Error::UnknownEdge(_) => "UnknownEdge",
            Error::LetterNotInAlphabet(_) => "LetterNotInAlphabet",
            Error::DuplicateLetter(_) => "DuplicateLetter",
            Error::MissingLabel(_) => "MissingLabel",
            Error::EmptyGraph => "EmptyGraph",
            Error::RootNotPreserved => "RootNotPreserved",
            Error::EdgeEndpointMismatch(_) => "EdgeEndpointMismatch",
            Error::IncompleteMorphism(_) => "IncompleteMorphism",
            Error::NotLocallyInjective(_) => "NotLocallyInjective",
            Error::NotLocallySurjective(_) => "NotLocallySurjective",
            Error::TargetNotConnected => "TargetNotConnected",
            Error::NotAPath => "NotAPath",
            Error::WrongStartVertex => "WrongStartVertex",
            Error::DomainMismatch => "DomainMismatch",
            Error::NotConnected => "NotConnected",
            Error::NotMinimal => "NotMinimal",
            Error::NotAdmissible { .. } => "NotAdmissible",
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::WordNotAccepted(_) => "WordNotAccepted",
            Error::BaseMismatch => "BaseMismatch",
            Error::TooLarge(_) => "TooLarge",
            Error::Format(_) => "Format",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
