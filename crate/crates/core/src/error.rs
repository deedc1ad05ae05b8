use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IfmError {
    #[error("invalid interferometer: {0}")]
    InvalidSpec(String),

    #[error("beam-splitter angle {0} rad outside [0, π/2]")]
    InvalidAngle(f64),

    #[error("negative effective barrier ΔW = {0} eV: tunnelling requires ⟨Φ⟩ − e|V|/2 > 0")]
    BarrierViolation(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("success probability is not monotone in ΔW near {delta_w} eV; refusing to bisect")]
    NonMonotone { delta_w: f64 },

    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T> = std::result::Result<T, IfmError>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> IfmError {
    IfmError::InvalidParameter { name, reason: reason.into() }
}
