use thiserror::Error;

/// Errors raised by the model, solver and data-reduction routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates a type invariant.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The exponent of the wrap gain exceeds what double precision can represent.
    #[error("range error: friction exponent mu*kappa*s = {exponent} exceeds the limit {limit}")]
    Range { exponent: f64, limit: f64 },

    /// A target cannot be reached under the model.
    #[error("unreachable target: {0}")]
    Unreachable(String),

    /// A ratio whose denominator is zero.
    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),

    /// Step refinement did not reach the requested tolerance.
    #[error("integration did not converge: achieved relative change {achieved:e}, requested {requested:e}")]
    NonConvergence { achieved: f64, requested: f64 },

    /// The applied load exceeds the holding capability over the whole bend range.
    #[error("no equilibrium: load torque {load_torque} N*m exceeds holding torque {max_torque} N*m at the angle limit")]
    NoEquilibrium { load_torque: f64, max_torque: f64 },

    /// Equilibrium reached at zero bend, so the stiffness ratio is unbounded.
    #[error("infinite stiffness: the joint holds the load without bending")]
    InfiniteStiffness,

    /// Least-squares problem without a unique solution.
    #[error("fit error: {0}")]
    Fit(String),

    /// Malformed input file.
    #[error("parse error at line {line}: {reason}")]
    Parse { line: u64, reason: String },

    #[error("empty input: {0}")]
    Empty(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require(cond: bool, field: &'static str, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            reason: reason.to_string(),
        })
    }
}
