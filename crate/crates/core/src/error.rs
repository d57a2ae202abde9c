use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Group family/parameter combination outside the admissible range
    /// (`O_N⁺` needs `N ≥ 2`, `S_N⁺` needs `N ≥ 4`).
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    /// An argument violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Operation only specified up to a size limit (e.g. root isolation).
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    /// An enclosure of the requested width could not be produced within the
    /// iteration cap.
    #[error("tolerance not achieved: {0}")]
    ToleranceNotAchieved(String),

    /// The requested value lies outside the certified regime and the caller
    /// did not opt in to unverified output.
    #[error("unverified regime: {0}")]
    UnverifiedRegime(String),
}

pub type Result<T> = std::result::Result<T, Error>;
