//! Post-channel Gaussian description of an asymmetric heralded link: two
//! pumped ensembles, lossy paths to a shared balanced combiner, and two
//! imperfect detectors.

use crate::error::{check_unit_interval, Error, Result};
use crate::gaussian::{CovarianceMatrix, QuadraticExponent};
use crate::mat8;
use crate::source::SourceState;

/// Full asymmetric link configuration.
///
/// `L`/`R` label the two ensembles, `1`/`2` the two detectors behind the
/// balanced combiner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Left excitation probability, in `[0, 1)`.
    pub p_c_l: f64,
    /// Right excitation probability, in `[0, 1)`.
    pub p_c_r: f64,
    /// Left pump phase (radians).
    pub theta_l: f64,
    /// Right pump phase (radians).
    pub theta_r: f64,
    /// Left path transmissivity, in `[0, 1]`.
    pub eta_l: f64,
    /// Right path transmissivity, in `[0, 1]`.
    pub eta_r: f64,
    /// Detector-1 efficiency, in `[0, 1]`.
    pub eta_1: f64,
    /// Detector-2 efficiency, in `[0, 1]`.
    pub eta_2: f64,
}

impl ChannelParams {
    /// Builds a link from two emitter states plus path and detector
    /// efficiencies.
    pub fn from_sources(
        left: &SourceState,
        right: &SourceState,
        eta_l: f64,
        eta_r: f64,
        eta_1: f64,
        eta_2: f64,
    ) -> Result<Self> {
        let cp = ChannelParams {
            p_c_l: left.p_c,
            p_c_r: right.p_c,
            theta_l: left.theta,
            theta_r: right.theta,
            eta_l,
            eta_r,
            eta_1,
            eta_2,
        };
        cp.validate()?;
        Ok(cp)
    }

    /// Checks every field against its physical range.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("p_c_l", self.p_c_l), ("p_c_r", self.p_c_r)] {
            check_unit_interval(name, value)?;
            if value >= 1.0 {
                return Err(Error::ExcitationProbability(value));
            }
        }
        for (name, value) in [
            ("eta_l", self.eta_l),
            ("eta_r", self.eta_r),
            ("eta_1", self.eta_1),
            ("eta_2", self.eta_2),
        ] {
            check_unit_interval(name, value)?;
        }
        for (name, value) in [("theta_l", self.theta_l), ("theta_r", self.theta_r)] {
            if !value.is_finite() {
                return Err(Error::ParamRange {
                    name,
                    value,
                    range: "finite radians",
                });
            }
        }
        Ok(())
    }
}

/// Symmetric link: equal pumping, equal path loss, equal detectors.
///
/// Only the product `eta_s = eta_path * eta_detector` matters for the
/// symmetric closed forms, so the pair is stored as a single system
/// efficiency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricParams {
    /// Common excitation probability, in `[0, 1]`; the closed forms remain
    /// valid at the `p_c = 1` endpoint that the asymmetric machinery
    /// excludes.
    pub p_c: f64,
    /// System efficiency (path times detector), in `[0, 1]`.
    pub eta_s: f64,
}

impl SymmetricParams {
    /// Checks both fields against `[0, 1]`.
    pub fn validate(&self) -> Result<()> {
        check_unit_interval("p_c", self.p_c)?;
        check_unit_interval("eta_s", self.eta_s)?;
        Ok(())
    }

    /// Expands to the asymmetric representation, folding the whole system
    /// efficiency into the path factor (`eta_path = eta_s`, detectors ideal).
    ///
    /// Any split of `eta_s` between path and detector yields identical
    /// metrics; fidelity and probability formulas depend on the product only.
    pub fn expand(&self) -> Result<ChannelParams> {
        self.validate()?;
        if self.p_c >= 1.0 {
            return Err(Error::ExcitationProbability(self.p_c));
        }
        Ok(ChannelParams {
            p_c_l: self.p_c,
            p_c_r: self.p_c,
            theta_l: 0.0,
            theta_r: 0.0,
            eta_l: self.eta_s,
            eta_r: self.eta_s,
            eta_1: 1.0,
            eta_2: 1.0,
        })
    }
}

/// Coefficients of the post-channel characteristic-function exponent.
///
/// Requires strictly positive detector efficiencies; the coefficients divide
/// by `eta_1 eta_2` even though the final detection probabilities stay
/// finite as either efficiency tends to zero.
pub fn exponent_coefficients(cp: &ChannelParams) -> Result<QuadraticExponent> {
    cp.validate()?;
    if cp.eta_1 == 0.0 || cp.eta_2 == 0.0 {
        return Err(Error::ZeroDetectorEfficiency);
    }
    let alpha_l = 2.0 / (1.0 - cp.p_c_l);
    let alpha_r = 2.0 / (1.0 - cp.p_c_r);
    let det_sum = (cp.eta_1 + cp.eta_2) / (cp.eta_1 * cp.eta_2);
    Ok(QuadraticExponent {
        alpha_l,
        alpha_r,
        beta_l: cp.eta_l * cp.p_c_l * alpha_l + det_sum,
        beta_r: cp.eta_r * cp.p_c_r * alpha_r + det_sum,
        gamma_l: (cp.eta_l * cp.p_c_l).sqrt() * alpha_l,
        gamma_r: (cp.eta_r * cp.p_c_r).sqrt() * alpha_r,
        delta: (cp.eta_1 - cp.eta_2) / (cp.eta_1 * cp.eta_2),
        theta_l: cp.theta_l,
        theta_r: cp.theta_r,
    })
}

/// Covariance matrix of atoms plus detected light, from the closed-form
/// entry table.
///
/// Valid for every parameter combination including zero detector
/// efficiencies, where the exponent-coefficient path is unavailable.
pub fn covariance_from_params(cp: &ChannelParams) -> Result<CovarianceMatrix> {
    cp.validate()?;
    let det_sum = cp.eta_1 + cp.eta_2;
    let det_diff = cp.eta_1 - cp.eta_2;
    let amp_l = (cp.eta_l * cp.p_c_l).sqrt();
    let amp_r = (cp.eta_r * cp.p_c_r).sqrt();
    let (cl, sl) = (cp.theta_l.cos(), cp.theta_l.sin());
    let (cr, sr) = (cp.theta_r.cos(), cp.theta_r.sin());
    let diff = cp.theta_l - cp.theta_r;

    let mut k = mat8::zero();
    let mut sym = |i: usize, j: usize, v: f64| {
        k[i][j] = v;
        k[j][i] = v;
    };

    // Atomic diagonals.
    let atom_l = (1.0 - cp.p_c_l) / 2.0 + cp.eta_l * cp.p_c_l * det_sum / 4.0;
    let atom_r = (1.0 - cp.p_c_r) / 2.0 + cp.eta_r * cp.p_c_r * det_sum / 4.0;
    sym(0, 0, atom_l);
    sym(1, 1, atom_l);
    sym(6, 6, atom_r);
    sym(7, 7, atom_r);

    // Left atom against the balanced (-) combination mode.
    sym(1, 3, det_sum * amp_l * cl / 4.0);
    sym(0, 2, -det_sum * amp_l * cl / 4.0);
    sym(0, 3, -det_sum * amp_l * sl / 4.0);
    sym(1, 2, -det_sum * amp_l * sl / 4.0);

    // Left atom against the balanced (+) combination mode.
    sym(0, 4, det_diff * amp_l * cl / 4.0);
    sym(1, 5, -det_diff * amp_l * cl / 4.0);
    sym(0, 5, det_diff * amp_l * sl / 4.0);
    sym(1, 4, det_diff * amp_l * sl / 4.0);

    // Atom-atom cross terms, present only for unequal detectors.
    sym(0, 6, -det_diff * amp_l * amp_r * diff.cos() / 4.0);
    sym(1, 7, -det_diff * amp_l * amp_r * diff.cos() / 4.0);
    sym(0, 7, det_diff * amp_l * amp_r * diff.sin() / 4.0);
    sym(1, 6, -det_diff * amp_l * amp_r * diff.sin() / 4.0);

    // Photonic diagonals and (-)/(+) coupling.
    for i in 2..6 {
        sym(i, i, det_sum / 4.0);
    }
    sym(2, 4, -det_diff / 4.0);
    sym(3, 5, -det_diff / 4.0);

    // Right atom against the balanced (-) combination mode.
    sym(2, 6, det_diff * amp_r * cr / 4.0);
    sym(3, 7, -det_diff * amp_r * cr / 4.0);
    sym(2, 7, det_diff * amp_r * sr / 4.0);
    sym(3, 6, det_diff * amp_r * sr / 4.0);

    // Right atom against the balanced (+) combination mode.
    sym(5, 7, det_sum * amp_r * cr / 4.0);
    sym(4, 6, -det_sum * amp_r * cr / 4.0);
    sym(4, 7, -det_sum * amp_r * sr / 4.0);
    sym(5, 6, -det_sum * amp_r * sr / 4.0);

    Ok(CovarianceMatrix::from_entries(k))
}
