use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical parameter lies outside its admissible range.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A denominator of a closed-form expression vanished.
    #[error("singular denominator in {0}")]
    SingularDenominator(&'static str),

    /// The steady-state linear system has no unique solution.
    #[error("singular steady-state system: pivot vanished in the {equation} equation")]
    SingularSystem { equation: &'static str },

    /// The round-trip geometric series does not converge.
    #[error("round-trip gain |rho_in rho_h tau| = {0} is not below 1")]
    Divergent(f64),

    /// Energy bookkeeping produced a negative lost intensity.
    #[error("negative lost intensity {0:e}")]
    NegativeEnergy(f64),

    /// A collective mode normalization is not positive.
    #[error("degenerate mode normalization {name} = {value:e}")]
    DegenerateNormalization { name: &'static str, value: f64 },

    #[error("fit failed: {0}")]
    FitFailed(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }

    /// True for errors caused by bad user input rather than numerical breakdown.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidParameter { .. })
    }
}
