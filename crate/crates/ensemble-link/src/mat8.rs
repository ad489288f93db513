//! Dense 8x8 symmetric matrix helpers.
//!
//! The quadrature covariance treatment in this crate always works in a fixed
//! eight-dimensional real basis, so a direct stack-allocated implementation
//! (Cholesky factorization, triangular solves) beats a general linear-algebra
//! dependency: no allocation, no pivoting heuristics, and exact control over
//! the positive-definiteness check.

use crate::error::{Error, Result};

/// Dimension of the quadrature basis.
pub const DIM: usize = 8;

/// A dense 8x8 real matrix stored row-major.
pub type Mat8 = [[f64; DIM]; DIM];

/// The 8x8 zero matrix.
pub fn zero() -> Mat8 {
    [[0.0; DIM]; DIM]
}

/// Lower-triangular Cholesky factor `L` with `L L^T = m`.
///
/// Fails with [`Error::NotPositiveDefinite`] when a pivot is not strictly
/// positive, which is exactly the symmetric-positive-definite test used by
/// the covariance invariant checks.
pub fn cholesky(m: &Mat8) -> Result<Mat8> {
    let mut l = zero();
    for i in 0..DIM {
        for j in 0..=i {
            let mut sum = m[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::NotPositiveDefinite);
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Ok(l)
}

/// Inverse of a symmetric positive-definite matrix via Cholesky.
///
/// Only the lower triangle of `m` is read; the result is exactly symmetric by
/// construction.
pub fn invert_spd(m: &Mat8) -> Result<Mat8> {
    let l = cholesky(m)?;
    // Invert the lower-triangular factor by forward substitution.
    let mut linv = zero();
    for i in 0..DIM {
        linv[i][i] = 1.0 / l[i][i];
        for j in 0..i {
            let mut sum = 0.0;
            for k in j..i {
                sum += l[i][k] * linv[k][j];
            }
            linv[i][j] = -sum / l[i][i];
        }
    }
    // m^-1 = L^-T L^-1, filled symmetrically.
    let mut out = zero();
    for i in 0..DIM {
        for j in 0..=i {
            let mut sum = 0.0;
            for k in i..DIM {
                sum += linv[k][i] * linv[k][j];
            }
            out[i][j] = sum;
            out[j][i] = sum;
        }
    }
    Ok(out)
}

/// Square root of the determinant of a symmetric positive-definite matrix,
/// computed as the product of Cholesky pivots.
pub fn sqrt_det(m: &Mat8) -> Result<f64> {
    let l = cholesky(m)?;
    Ok((0..DIM).map(|i| l[i][i]).product())
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &Mat8, b: &Mat8) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            worst = worst.max((a[i][j] - b[i][j]).abs());
        }
    }
    worst
}

/// Matrix product `a * b`.
pub fn mul(a: &Mat8, b: &Mat8) -> Mat8 {
    let mut out = zero();
    for i in 0..DIM {
        for k in 0..DIM {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..DIM {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity() -> Mat8 {
        let mut m = zero();
        for i in 0..DIM {
            m[i][i] = 1.0;
        }
        m
    }

    /// A well-conditioned SPD matrix with off-diagonal structure.
    fn spd_sample() -> Mat8 {
        // A^T A + 8 I for a fixed pseudo-random A is always SPD.
        let mut a = zero();
        let mut seed = 0x2545f4914f6cdd1du64;
        for i in 0..DIM {
            for j in 0..DIM {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                a[i][j] = (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            }
        }
        let mut m = zero();
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    m[i][j] += a[k][i] * a[k][j];
                }
            }
            m[i][i] += 8.0;
        }
        m
    }

    #[test]
    fn inverse_times_original_is_identity() {
        let m = spd_sample();
        let minv = invert_spd(&m).unwrap();
        let prod = mul(&m, &minv);
        assert!(max_abs_diff(&prod, &identity()) < 1e-12);
    }

    #[test]
    fn sqrt_det_matches_diagonal_case() {
        let mut m = zero();
        for i in 0..DIM {
            m[i][i] = (i + 1) as f64;
        }
        let expected = (1..=DIM).map(|i| i as f64).product::<f64>().sqrt();
        assert!((sqrt_det(&m).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn indefinite_matrix_is_rejected() {
        let mut m = identity();
        m[3][3] = -1.0;
        assert_eq!(cholesky(&m).unwrap_err(), Error::NotPositiveDefinite);
        // Singular (zero pivot) is rejected as well.
        let mut s = identity();
        s[5][5] = 0.0;
        assert_eq!(invert_spd(&s).unwrap_err(), Error::NotPositiveDefinite);
    }
}
