//! Gaussian-moment machinery: the 8x8 covariance container, the quadratic
//! exponent of the post-channel characteristic function, and Isserlis
//! (moment-factoring) helpers.

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::mat8::{self, Mat8, DIM};

pub use crate::mat8::invert_spd;

/// Real symmetric covariance of the post-channel Gaussian state.
///
/// Component ordering is fixed as
/// `[x_aL, y_aL, x_-, y_-, x_+, y_+, x_aR, y_aR]`:
/// real/imaginary quadrature pairs of the left atomic mode, the two detected
/// photonic combination modes, and the right atomic mode.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    entries: Mat8,
}

impl CovarianceMatrix {
    /// Wraps an entry matrix, enforcing symmetry.
    ///
    /// Panics if any pair of mirrored entries differs by more than 1e-14;
    /// every constructor in this crate produces exactly symmetric matrices,
    /// so a violation is a caller bug rather than a recoverable condition.
    pub fn from_entries(entries: Mat8) -> Self {
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                assert!(
                    (entries[i][j] - entries[j][i]).abs() <= 1e-14,
                    "covariance entries ({i},{j}) and ({j},{i}) differ"
                );
            }
        }
        CovarianceMatrix { entries }
    }

    /// Raw entry matrix.
    pub fn entries(&self) -> &Mat8 {
        &self.entries
    }

    /// Second moment `E{X_i X_j}`; indices must be below 8.
    pub fn second_moment(&self, i: usize, j: usize) -> f64 {
        assert!(i < DIM && j < DIM, "moment index ({i},{j}) out of range");
        self.entries[i][j]
    }

    /// True when all eigenvalues are strictly positive.
    pub fn is_positive_definite(&self) -> bool {
        mat8::cholesky(&self.entries).is_ok()
    }

    /// Square root of the determinant, via Cholesky pivots.
    pub fn sqrt_det(&self) -> Result<f64> {
        mat8::sqrt_det(&self.entries)
    }

    /// Matrix inverse (the quadratic form of the characteristic function).
    pub fn inverse(&self) -> Result<Mat8> {
        mat8::invert_spd(&self.entries)
    }
}

/// `E{X_a X_b X_c X_d}` for a zero-mean Gaussian vector, factored into second
/// moments: `K_ab K_cd + K_ac K_bd + K_ad K_bc`.
pub fn fourth_moment_factored(k: &CovarianceMatrix, idx: [usize; 4]) -> f64 {
    let c = |a: usize, b: usize| k.second_moment(idx[a], idx[b]);
    c(0, 1) * c(2, 3) + c(0, 2) * c(1, 3) + c(0, 3) * c(1, 2)
}

/// Complex linear combination `Z = w · X` of the eight real components.
///
/// Lets moments of derived complex modes (e.g. the physical detector modes
/// reassembled from the `+`/`-` combination modes) be expressed as weighted
/// sums over the real-component covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm(pub [C64; DIM]);

impl LinearForm {
    /// Form with the given sparse weights and zeros elsewhere.
    pub fn from_weights(weights: &[(usize, C64)]) -> Self {
        let mut w = [C64::new(0.0, 0.0); DIM];
        for &(i, c) in weights {
            assert!(i < DIM, "form index {i} out of range");
            w[i] = c;
        }
        LinearForm(w)
    }
}

/// `E{Z_f Z_g}` for complex linear forms over a common Gaussian vector.
pub fn second_moment_form(k: &CovarianceMatrix, f: &LinearForm, g: &LinearForm) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..DIM {
        if f.0[i] == C64::new(0.0, 0.0) {
            continue;
        }
        for j in 0..DIM {
            acc += f.0[i] * g.0[j] * k.entries[i][j];
        }
    }
    acc
}

/// `E{Z_1 Z_2 Z_3 Z_4}` by Isserlis factoring over complex linear forms.
pub fn fourth_moment_form(k: &CovarianceMatrix, forms: [&LinearForm; 4]) -> C64 {
    let s = |a: usize, b: usize| second_moment_form(k, forms[a], forms[b]);
    s(0, 1) * s(2, 3) + s(0, 2) * s(1, 3) + s(0, 3) * s(1, 2)
}

/// Coefficients of the quadratic exponent of the antinormally-ordered
/// characteristic function after channel propagation.
///
/// The exponent reads `-ζᵀ P ζ / ...` with `P` assembled by
/// [`QuadraticExponent::precision_matrix`]; its inverse is the covariance
/// matrix. All coefficients are dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticExponent {
    /// Atomic diagonal weight, left side: `2/(1 - p_cL)`.
    pub alpha_l: f64,
    /// Atomic diagonal weight, right side.
    pub alpha_r: f64,
    /// Photonic diagonal weight, left side:
    /// `eta_L p_cL alpha_L + (eta_1 + eta_2)/(eta_1 eta_2)`.
    pub beta_l: f64,
    /// Photonic diagonal weight, right side.
    pub beta_r: f64,
    /// Atom-photon coupling, left side: `sqrt(eta_L p_cL) alpha_L`.
    pub gamma_l: f64,
    /// Atom-photon coupling, right side.
    pub gamma_r: f64,
    /// Detector-imbalance coupling `(eta_1 - eta_2)/(eta_1 eta_2)` between the
    /// two photonic combination modes.
    pub delta: f64,
    /// Left pump phase (radians).
    pub theta_l: f64,
    /// Right pump phase (radians).
    pub theta_r: f64,
}

impl QuadraticExponent {
    /// Assembles the 8x8 quadratic form in the fixed component ordering.
    pub fn precision_matrix(&self) -> Mat8 {
        let mut p = mat8::zero();
        let mut sym = |i: usize, j: usize, v: f64| {
            p[i][j] = v;
            p[j][i] = v;
        };
        let (cl, sl) = (self.theta_l.cos(), self.theta_l.sin());
        let (cr, sr) = (self.theta_r.cos(), self.theta_r.sin());

        sym(0, 0, self.alpha_l);
        sym(1, 1, self.alpha_l);
        sym(2, 2, self.beta_l);
        sym(3, 3, self.beta_l);
        sym(4, 4, self.beta_r);
        sym(5, 5, self.beta_r);
        sym(6, 6, self.alpha_r);
        sym(7, 7, self.alpha_r);

        sym(0, 2, self.gamma_l * cl);
        sym(1, 3, -self.gamma_l * cl);
        sym(0, 3, self.gamma_l * sl);
        sym(1, 2, self.gamma_l * sl);

        sym(6, 4, self.gamma_r * cr);
        sym(7, 5, -self.gamma_r * cr);
        sym(6, 5, self.gamma_r * sr);
        sym(7, 4, self.gamma_r * sr);

        sym(2, 4, self.delta);
        sym(3, 5, self.delta);
        p
    }

    /// Covariance via numeric inversion of the quadratic form.
    ///
    /// This is the cross-check path; the closed-form entry table built by
    /// `channel::covariance_from_params` is the primary path.
    pub fn covariance(&self) -> Result<CovarianceMatrix> {
        let inv = mat8::invert_spd(&self.precision_matrix())?;
        Ok(CovarianceMatrix::from_entries(inv))
    }
}
