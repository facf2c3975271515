use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("points lie on different equidistant cylinders (r = {0} vs {1})")]
    RadiusMismatch(f64, f64),

    #[error("complex length 0 + 0i is the identity isometry")]
    IdentityIsometry,

    #[error("the {0}-thin part is empty (core length exceeds it)")]
    EmptyThinPart(f64),

    #[error("core length {lambda} exceeds delta = {delta}")]
    CoreLongerThanDelta { lambda: f64, delta: f64 },

    #[error("eps = {eps} exceeds eps_max = {eps_max}")]
    EpsAboveMax { eps: f64, eps_max: f64 },

    #[error("delta = {delta} must satisfy 0 < delta < eps = {eps}")]
    BadDeltaEps { delta: f64, eps: f64 },

    #[error("comparison function has {0} critical points on the arc, expected exactly one")]
    CriticalPointCount(usize),

    #[error("no power m <= {m_max} satisfies the short-power inequality for lambda = {lambda}, tau = {tau}")]
    PowerSearchExhausted { lambda: f64, tau: f64, m_max: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
