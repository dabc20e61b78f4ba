use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported root system {family}{rank}")]
    UnsupportedFamily { family: String, rank: usize },
    #[error("unknown space id `{0}`")]
    UnknownSpace(String),
    #[error("space {id} cannot be evaluated: {reason}")]
    UnsupportedSpace { id: String, reason: String },
    #[error("unknown group id `{0}`")]
    UnknownGroup(String),
    #[error("gamma pole at {0}")]
    Pole(f64),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("inconsistent multiplicities m_alpha={m_alpha}, m_2alpha={m_2alpha}")]
    InconsistentMultiplicities { m_alpha: u32, m_2alpha: u32 },
    #[error("{0} is not a rank-one space")]
    NotRankOne(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("series did not converge: {0}")]
    NotConverged(String),
    #[error("floating-point overflow: {0}")]
    NumericOverflow(String),
    #[error("degenerate pole configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
}

impl Error {
    /// Errors that describe a mathematically invalid request rather than a bug.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::NumericOverflow(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
