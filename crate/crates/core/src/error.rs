use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("event space must contain at least one event")]
    EmptyEventSpace,
    #[error("event space has {0} events; at most {max} are supported", max = crate::uncertainty::MAX_EVENTS)]
    TooManyEvents(usize),
    #[error("event label must be non-empty")]
    EmptyLabel,
    #[error("duplicate event label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("operands belong to different event spaces")]
    SpaceMismatch,
    #[error("invalid mass assignment: {0}")]
    InvalidMasses(String),
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),
    #[error("lower envelope of an empty set of probabilities")]
    EmptyEnvelope,
    #[error("capacity table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("cannot condition on {event}: its plausibility is zero")]
    ConditioningOnImplausibleEvent { event: String },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown edge {node}#{edge}")]
    UnknownEdge { node: String, edge: usize },
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("strategy count {count} exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("invalid subtree mask: {0}")]
    InvalidMask(String),
    #[error("invalid utility: {0}")]
    InvalidUtility(String),
    #[error("invalid criterion configuration: {0}")]
    InvalidConfig(String),
    #[error("mixing factor eta must lie in [0, 1), got {0}")]
    InvalidEta(String),
    #[error("cooperation slack epsilon0 must be non-negative, got {0}")]
    NegativeEpsilon(String),
    #[error("at least one weighting system is required")]
    EmptyAlphas,
    #[error("fee must be positive, got {0}")]
    InvalidFee(String),
    #[error("price of information must be positive, got {0}")]
    InvalidPrice(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("path event of node `{0}` has zero probability")]
    ZeroProbabilityPathEvent(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
}
