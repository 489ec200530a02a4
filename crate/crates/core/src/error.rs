use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("site ({x}, {y}) is outside the {width}x{height} lattice")]
    Coordinate { x: i64, y: i64, width: usize, height: usize },
    #[error("site ({x}, {y}) is outside the dynamics domain")]
    Domain { x: usize, y: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("kappa mismatch: configuration has {config}, rule has {rule}")]
    KappaMismatch { config: u8, rule: u8 },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("rule `{name}` requires kappa {expected}, got {got}")]
    RuleKappa { name: String, expected: String, got: u8 },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("empty region")]
    EmptyRegion,
    #[error("invalid initial-state spec: {0}")]
    InvalidSpec(String),
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("state {0} has no palette entry")]
    Palette(u8),
}
