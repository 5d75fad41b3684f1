use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("player count {0} outside supported range 2..={max}", max = crate::game::MAX_PLAYERS)]
    PlayerCount(usize),

    #[error("coalition mask {mask:#x} is not a subset of {n} players")]
    CoalitionOutOfRange { mask: u32, n: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("rank index {index} out of range for {n} players")]
    RankOutOfRange { index: usize, n: usize },

    #[error("reward table invalid: {0}")]
    InvalidTable(String),

    #[error("uniform noise radius {radius} pushes coalition {mask:#x} (mean {mean}) outside [0, 1]")]
    NoiseSupport { radius: f64, mask: u32, mean: f64 },

    #[error("points are affinely degenerate (width {width:e})")]
    DegenerateSimplex { width: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
