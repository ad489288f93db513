//! Pump-side parameterization of a single atomic-ensemble emitter.
//!
//! A classical pump drives the ensemble into a two-mode squeezed state of the
//! collective atomic mode and its emitted photon; everything downstream is
//! parameterized by the excitation probability `p_c = tanh²(r)` and the pump
//! phase.

use num_complex::Complex64 as C64;

use crate::error::{check_unit_interval, Error, Result};

/// Physical pump and cavity numbers fixing the squeezing strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpParams {
    /// Number of atoms in the ensemble.
    pub atom_number: f64,
    /// Pump Rabi frequency magnitude (rad/s).
    pub rabi_frequency: f64,
    /// Atom-cavity coupling magnitude (rad/s).
    pub coupling: f64,
    /// Pump detuning magnitude (rad/s).
    pub detuning: f64,
    /// Cavity decay rate (rad/s).
    pub cavity_decay: f64,
    /// Pump pulse duration (s).
    pub pulse_duration: f64,
}

impl PumpParams {
    fn validate(&self) -> Result<()> {
        if !(self.atom_number.is_finite() && self.atom_number >= 1.0) {
            return Err(Error::ParamRange {
                name: "atom_number",
                value: self.atom_number,
                range: "[1, inf)",
            });
        }
        let rates = [
            ("rabi_frequency", self.rabi_frequency),
            ("coupling", self.coupling),
            ("detuning", self.detuning),
            ("cavity_decay", self.cavity_decay),
            ("pulse_duration", self.pulse_duration),
        ];
        for (name, value) in rates {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::ParamRange {
                    name,
                    value,
                    range: "(0, inf)",
                });
            }
        }
        Ok(())
    }

    /// Dimensionless drive exponent `2 N |Ω g|² t / (Δ² κ)`; the squeeze
    /// parameter satisfies `cosh(r) = exp(drive)`.
    pub fn drive_exponent(&self) -> f64 {
        2.0 * self.atom_number * (self.rabi_frequency * self.coupling).powi(2)
            * self.pulse_duration
            / (self.detuning.powi(2) * self.cavity_decay)
    }
}

/// Two-mode squeezed emitter state in its `(μ, ν)` coefficient form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceState {
    /// Squeeze parameter, dimensionless and nonnegative.
    pub r: f64,
    /// Single-excitation probability `tanh²(r)`.
    pub p_c: f64,
    /// Pump phase offset (radians).
    pub theta: f64,
    /// `cosh(r)`; real by phase convention.
    pub mu: f64,
    /// `-sinh(r) exp(iθ)`.
    pub nu: C64,
}

impl SourceState {
    fn from_squeeze(r: f64, theta: f64) -> Self {
        let tanh = r.tanh();
        SourceState {
            r,
            p_c: tanh * tanh,
            theta,
            mu: r.cosh(),
            nu: -C64::from_polar(r.sinh(), theta),
        }
    }
}

/// Emitter state from raw pump parameters.
pub fn pump_to_source(params: &PumpParams, theta: f64) -> Result<SourceState> {
    params.validate()?;
    let drive = params.drive_exponent();
    let cosh_r = drive.exp();
    if !cosh_r.is_finite() {
        return Err(Error::PumpOverflow(drive));
    }
    Ok(SourceState::from_squeeze(cosh_r.acosh(), theta))
}

/// Emitter state from the excitation probability directly.
///
/// This is the canonical entry point: every downstream metric is a function
/// of `p_c` and `θ` alone.
pub fn pc_to_source(p_c: f64, theta: f64) -> Result<SourceState> {
    check_unit_interval("p_c", p_c)?;
    if p_c >= 1.0 {
        return Err(Error::ExcitationProbability(p_c));
    }
    Ok(SourceState::from_squeeze(p_c.sqrt().atanh(), theta))
}
