use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval [{start}, {end}]: start must precede end")]
    InvalidInterval { start: i64, end: i64 },

    #[error("unknown service `{0}`")]
    UnknownService(String),

    #[error("attribute `{attribute}` is not declared by service `{service}`")]
    UnknownAttribute { service: String, attribute: String },

    #[error("invalid service descriptor `{0}`: {1}")]
    InvalidDescriptor(String, String),

    #[error("duplicate service id `{0}`")]
    DuplicateService(String),

    #[error("cannot fit {k} bins to {distinct} distinct values")]
    InfeasibleBinCount { k: usize, distinct: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("events are not sorted by start time (index {0})")]
    Unsorted(usize),

    #[error("settle window must be positive")]
    InvalidSettleWindow,

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid consistency table: {0}")]
    InvalidTable(String),

    #[error("value count must be at least 1")]
    ZeroValueCount,

    #[error("gain {gain} exceeds maximum entropy {max_entropy}")]
    GainExceedsMax { gain: f64, max_entropy: f64 },

    #[error("proximity threshold {0} outside [0, 1]")]
    InvalidThreshold(f64),

    #[error("overlap group span has zero duration")]
    DegenerateSpan,

    #[error("schema version mismatch: expected {expected}, found {found}")]
    SchemaVersion { expected: String, found: String },

    #[error("invalid habit `{id}`: {reason}")]
    InvalidHabit { id: String, reason: String },

    #[error("invalid synthetic profile: {0}")]
    InvalidProfile(String),

    #[error("ground-truth entry {0} has no matching prediction")]
    UnknownTruthKey(String),

    #[error("cannot print event: {0}")]
    Unprintable(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
