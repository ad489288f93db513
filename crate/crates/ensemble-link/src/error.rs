//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by parameter validation, closed-form evaluation, and the
/// Fock-space oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter fell outside its physical range.
    #[error("{name} = {value} outside valid range {range}")]
    ParamRange {
        /// Parameter name as it appears in the public API.
        name: &'static str,
        /// Offending value.
        value: f64,
        /// Human-readable description of the accepted range.
        range: &'static str,
    },

    /// Cholesky factorization failed: the input is not symmetric positive
    /// definite (within floating-point tolerance).
    #[error("matrix not positive definite")]
    NotPositiveDefinite,

    /// The single-excitation probability must stay strictly below one for the
    /// squeezing parameterization to exist.
    #[error("excitation probability must be < 1 (got {0})")]
    ExcitationProbability(f64),

    /// The pump drive exponent is so large that cosh(r) overflows f64.
    #[error("pump drive exponent {0} overflows the squeezing parameterization")]
    PumpOverflow(f64),

    /// Quadratic-exponent coefficients diverge when a detector efficiency is
    /// exactly zero.
    #[error("zero detector efficiency: quadratic exponent coefficients diverge")]
    ZeroDetectorEfficiency,

    /// The requested detector never clicks, so the conditional fidelity is not
    /// defined.
    #[error("herald impossible; fidelity undefined")]
    HeraldImpossible,

    /// Loaded-state coefficients must form a normalized single-excitation
    /// state.
    #[error("state coefficients not normalized: |d_L|^2 + |d_R|^2 = {0}, expected 1 within 1e-12")]
    NotNormalized(f64),

    /// Optimal-state loading needs at least one live excitation path.
    #[error("no excitation channel: eta_L*p_cL and eta_R*p_cR are both zero")]
    NoExcitationChannel,

    /// The phase-averaged closed form only holds when both sides of the link
    /// are identical up to phase.
    #[error("closed form valid only for symmetric setup: {0}")]
    NotSymmetric(&'static str),

    /// The trapped-atom source moments diverge at the oscillation threshold.
    #[error("threshold singularity: |G| must be < 1 (got {0})")]
    ThresholdSingularity(f64),

    /// A tensor operation referenced a mode that is not part of the state.
    #[error("mode {0:?} not present in tensor")]
    ModeNotFound(crate::oracle::Mode),

    /// Two-mode operations need two distinct modes.
    #[error("beam splitter modes must differ")]
    DuplicateMode,

    /// A measurement outcome with zero probability has no post-measurement
    /// state.
    #[error("zero-probability outcome; post-measurement state undefined")]
    ImpossibleOutcome,
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Validates that `value` lies in the closed interval `[0, 1]`.
pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::ParamRange {
            name,
            value,
            range: "[0, 1]",
        })
    }
}
