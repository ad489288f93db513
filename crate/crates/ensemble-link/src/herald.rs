//! Heralding probabilities and conditional fidelities for entanglement
//! distribution over the two-ensemble link.
//!
//! A click on exactly one detector projects the two remote ensembles onto a
//! state near one of the two single-excitation Bell states; every metric
//! here is a closed form in the channel parameters.

use num_complex::Complex64 as C64;

use crate::channel::{ChannelParams, SymmetricParams};
use crate::error::{Error, Result};

/// Photon-counting model at the two herald detectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectionScheme {
    /// Number-resolving: herald on exactly one photon at one detector and
    /// none at the other.
    Pnrd,
    /// Non-resolving: herald on at least one photon at one detector and none
    /// at the other.
    Nrpd,
}

/// One of the two detectors behind the balanced combiner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detector {
    /// Difference-port detector; heralds the singlet-like state.
    D1,
    /// Sum-port detector; heralds the triplet-like state.
    D2,
}

impl Detector {
    /// Conventional one-based detector index.
    pub fn index(self) -> usize {
        match self {
            Detector::D1 => 1,
            Detector::D2 => 2,
        }
    }

    /// Relative sign between the left- and right-excitation components of
    /// the Bell state this detector heralds.
    pub fn bell_sign(self) -> f64 {
        match self {
            Detector::D1 => -1.0,
            Detector::D2 => 1.0,
        }
    }

    fn efficiency(self, cp: &ChannelParams) -> f64 {
        match self {
            Detector::D1 => cp.eta_1,
            Detector::D2 => cp.eta_2,
        }
    }

    fn partner_efficiency(self, cp: &ChannelParams) -> f64 {
        match self {
            Detector::D1 => cp.eta_2,
            Detector::D2 => cp.eta_1,
        }
    }
}

/// Optimal single-excitation target state for one detector, with the
/// fidelity it achieves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalState {
    /// Left-excitation coefficient.
    pub d_l: C64,
    /// Right-excitation coefficient.
    pub d_r: C64,
    /// Fidelity against this state, the maximum over all pure
    /// single-excitation targets.
    pub f_opt: f64,
}

/// Every herald metric for one link configuration and detection scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeraldReport {
    /// Detector-1 heralding probability.
    pub p1: f64,
    /// Detector-2 heralding probability.
    pub p2: f64,
    /// Total heralding probability `p1 + p2`.
    pub p_herald: f64,
    /// Herald-weighted Bell-state fidelity sum; scheme-independent.
    pub p_success: f64,
    /// Singlet fidelity after a detector-1 herald; `None` when that herald
    /// never fires.
    pub f1: Option<f64>,
    /// Triplet fidelity after a detector-2 herald.
    pub f2: Option<f64>,
    /// Best achievable fidelity after a detector-1 herald.
    pub f_opt1: Option<f64>,
    /// Best achievable fidelity after a detector-2 herald.
    pub f_opt2: Option<f64>,
    /// Optimal target-state coefficients `(d_l, d_r)` for the detector-1
    /// herald; the detector-2 optimum flips the sign of `d_r`. `None` when
    /// both excitation paths are dead.
    pub opt_coeffs: Option<(C64, C64)>,
}

/// Per-side detection weight: transmitted mean photon number scaled by the
/// excitation-probability enhancement, `2 eta_A p_cA / (1 - p_cA)`.
fn branch_weights(cp: &ChannelParams) -> (f64, f64) {
    (
        2.0 * cp.eta_l * cp.p_c_l / (1.0 - cp.p_c_l),
        2.0 * cp.eta_r * cp.p_c_r / (1.0 - cp.p_c_r),
    )
}

/// Heralding probability with validation already done by the caller.
fn herald_prob_inner(cp: &ChannelParams, scheme: DetectionScheme, det: Detector) -> f64 {
    let (b_l, b_r) = branch_weights(cp);
    let sum = b_l + b_r;
    let q = cp.eta_1 * cp.eta_2 * b_l * b_r + (cp.eta_1 + cp.eta_2) * sum + 4.0;
    let eta_other = det.partner_efficiency(cp);
    // Factored q - q_det; avoids cancellation when det.efficiency is tiny.
    let numer = 4.0 * det.efficiency(cp) * (eta_other * b_l * b_r + sum);
    match scheme {
        DetectionScheme::Pnrd => numer / (q * q),
        DetectionScheme::Nrpd => numer / (q * (eta_other * sum + 4.0)),
    }
}

/// Scheme-independent product of heralding probability and Bell-state
/// fidelity for one detector.
fn fidelity_probability_product(cp: &ChannelParams, det: Detector) -> f64 {
    let t_l = cp.eta_l * cp.p_c_l;
    let t_r = cp.eta_r * cp.p_c_r;
    let interference = t_l + t_r + 2.0 * (t_l * t_r).sqrt() * (cp.theta_l - cp.theta_r).cos();
    det.efficiency(cp) * (1.0 - cp.p_c_l) * (1.0 - cp.p_c_r) * interference / 4.0
}

/// Probability that the given detector alone fires during one trial.
///
/// Finite for every valid configuration, including zero detector
/// efficiencies where it tends to zero.
pub fn heralding_probability(
    cp: &ChannelParams,
    scheme: DetectionScheme,
    det: Detector,
) -> Result<f64> {
    cp.validate()?;
    Ok(herald_prob_inner(cp, scheme, det))
}

/// Fidelity of the heralded two-ensemble state against the Bell state
/// matched to the detector: singlet for detector 1, triplet for detector 2.
pub fn fidelity_singlet_triplet(
    cp: &ChannelParams,
    scheme: DetectionScheme,
    det: Detector,
) -> Result<f64> {
    cp.validate()?;
    let p = herald_prob_inner(cp, scheme, det);
    if p <= 0.0 {
        return Err(Error::HeraldImpossible);
    }
    Ok(fidelity_probability_product(cp, det) / p)
}

/// Fidelity of the heralded state against an arbitrary pure
/// single-excitation target `d_l |1,0> + d_r |0,1>`.
pub fn fidelity_arbitrary(
    cp: &ChannelParams,
    scheme: DetectionScheme,
    det: Detector,
    d_l: C64,
    d_r: C64,
) -> Result<f64> {
    cp.validate()?;
    let norm = d_l.norm_sqr() + d_r.norm_sqr();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized(norm));
    }
    let p = herald_prob_inner(cp, scheme, det);
    if p <= 0.0 {
        return Err(Error::HeraldImpossible);
    }
    let amp = (cp.eta_l * cp.p_c_l).sqrt() * d_l.conj() * C64::from_polar(1.0, cp.theta_l)
        + det.bell_sign() * (cp.eta_r * cp.p_c_r).sqrt() * d_r.conj()
            * C64::from_polar(1.0, cp.theta_r);
    let f = det.efficiency(cp) * (1.0 - cp.p_c_l) * (1.0 - cp.p_c_r) * amp.norm_sqr() / (2.0 * p);
    Ok(f)
}

/// Optimal coefficients alone; `None` when both excitation paths are dead.
fn optimal_coefficients(cp: &ChannelParams, det: Detector) -> Option<(C64, C64)> {
    let t_l = cp.eta_l * cp.p_c_l;
    let t_r = cp.eta_r * cp.p_c_r;
    let total = t_l + t_r;
    if total == 0.0 {
        return None;
    }
    let d_l = C64::new((t_l / total).sqrt(), 0.0);
    let d_r = det.bell_sign() * C64::from_polar((t_r / total).sqrt(), cp.theta_r - cp.theta_l);
    Some((d_l, d_r))
}

/// Pure single-excitation target maximizing the post-herald fidelity, with
/// the fidelity it attains.
pub fn optimal_state(
    cp: &ChannelParams,
    scheme: DetectionScheme,
    det: Detector,
) -> Result<OptimalState> {
    cp.validate()?;
    let (d_l, d_r) = optimal_coefficients(cp, det).ok_or(Error::NoExcitationChannel)?;
    let p = herald_prob_inner(cp, scheme, det);
    if p <= 0.0 {
        return Err(Error::HeraldImpossible);
    }
    let total = cp.eta_l * cp.p_c_l + cp.eta_r * cp.p_c_r;
    let f_opt = det.efficiency(cp) * (1.0 - cp.p_c_l) * (1.0 - cp.p_c_r) * total / (2.0 * p);
    Ok(OptimalState { d_l, d_r, f_opt })
}

/// Probability of heralding *and* projecting onto the matched Bell state,
/// summed over both detectors.
///
/// The detection-scheme dependence cancels between probability and
/// fidelity, so both schemes return the same value.
pub fn success_probability(cp: &ChannelParams, scheme: DetectionScheme) -> Result<f64> {
    cp.validate()?;
    let mut total = 0.0;
    for det in [Detector::D1, Detector::D2] {
        let p = herald_prob_inner(cp, scheme, det);
        if p > 0.0 {
            total += p * (fidelity_probability_product(cp, det) / p);
        }
    }
    Ok(total)
}

/// Bell-state fidelity averaged over independent Gaussian pump-phase jitter
/// of variance `sigma_sq` on each side.
///
/// Valid only for a configuration that is symmetric apart from its phases;
/// the configured phases themselves are immaterial because the jitter is
/// modeled around a common nominal value. `sigma_sq` may be infinite, giving
/// the fully dephased floor of half the symmetric fidelity.
pub fn phase_averaged_fidelity(
    cp: &ChannelParams,
    scheme: DetectionScheme,
    sigma_sq: f64,
) -> Result<f64> {
    cp.validate()?;
    if sigma_sq.is_nan() || sigma_sq < 0.0 {
        return Err(Error::ParamRange {
            name: "sigma_sq",
            value: sigma_sq,
            range: "[0, inf]",
        });
    }
    if cp.p_c_l != cp.p_c_r {
        return Err(Error::NotSymmetric("p_c_l != p_c_r"));
    }
    if cp.eta_l != cp.eta_r {
        return Err(Error::NotSymmetric("eta_l != eta_r"));
    }
    if cp.eta_1 != cp.eta_2 {
        return Err(Error::NotSymmetric("eta_1 != eta_2"));
    }
    let nominal = ChannelParams {
        theta_l: 0.0,
        theta_r: 0.0,
        ..*cp
    };
    let f_sym = fidelity_singlet_triplet(&nominal, scheme, Detector::D1)?;
    Ok(f_sym * (1.0 + (-sigma_sq).exp()) / 2.0)
}

/// Computes every herald metric for one configuration and scheme.
///
/// Conditional quantities that are undefined because the corresponding
/// herald never fires are reported as `None` rather than failing the whole
/// report.
pub fn herald_report(cp: &ChannelParams, scheme: DetectionScheme) -> Result<HeraldReport> {
    cp.validate()?;
    let p1 = herald_prob_inner(cp, scheme, Detector::D1);
    let p2 = herald_prob_inner(cp, scheme, Detector::D2);
    let fidelity = |det: Detector, p: f64| {
        (p > 0.0).then(|| fidelity_probability_product(cp, det) / p)
    };
    let optimal = |det: Detector| optimal_state(cp, scheme, det).ok().map(|o| o.f_opt);
    Ok(HeraldReport {
        p1,
        p2,
        p_herald: p1 + p2,
        p_success: success_probability(cp, scheme)?,
        f1: fidelity(Detector::D1, p1),
        f2: fidelity(Detector::D2, p2),
        f_opt1: optimal(Detector::D1),
        f_opt2: optimal(Detector::D2),
        opt_coeffs: optimal_coefficients(cp, Detector::D1),
    })
}

/// Per-detector heralding probability in the symmetric link, as a closed
/// form in the system efficiency.
///
/// Unlike the asymmetric machinery this remains valid at `p_c = 1`.
pub fn symmetric_heralding_probability(
    sp: &SymmetricParams,
    scheme: DetectionScheme,
) -> Result<f64> {
    sp.validate()?;
    let loaded = sp.eta_s * sp.p_c;
    let numer = match scheme {
        DetectionScheme::Pnrd => (1.0 - sp.p_c) * (1.0 - sp.p_c) * loaded,
        DetectionScheme::Nrpd => (1.0 - sp.p_c) * loaded,
    };
    if numer == 0.0 {
        // Covers p_c ∈ {0, 1} and eta_s = 0, where the quotient may be 0/0.
        return Ok(0.0);
    }
    let base = loaded + (1.0 - sp.p_c);
    Ok(match scheme {
        DetectionScheme::Pnrd => numer / base.powi(3),
        DetectionScheme::Nrpd => numer / base.powi(2),
    })
}

/// Bell-state fidelity in the symmetric link, as a closed form valid on all
/// of `p_c ∈ [0, 1]`; both detectors give the same value.
///
/// At boundary parameters where no herald can occur the returned value is
/// the continuous limit of the conditional fidelity.
pub fn symmetric_fidelity(sp: &SymmetricParams, scheme: DetectionScheme) -> Result<f64> {
    sp.validate()?;
    let base = sp.eta_s * sp.p_c + (1.0 - sp.p_c);
    Ok(match scheme {
        DetectionScheme::Pnrd => base.powi(3),
        DetectionScheme::Nrpd => (1.0 - sp.p_c) * base.powi(2),
    })
}

/// Success probability in the symmetric link: `2 eta_s p_c (1 - p_c)^2`,
/// identical for both detection schemes.
pub fn symmetric_success_probability(sp: &SymmetricParams) -> Result<f64> {
    sp.validate()?;
    Ok(2.0 * sp.eta_s * sp.p_c * (1.0 - sp.p_c) * (1.0 - sp.p_c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SCHEMES: [DetectionScheme; 2] = [DetectionScheme::Pnrd, DetectionScheme::Nrpd];
    const DETECTORS: [Detector; 2] = [Detector::D1, Detector::D2];

    fn sym(p_c: f64, eta_s: f64) -> ChannelParams {
        SymmetricParams { p_c, eta_s }.expand().unwrap()
    }

    fn random_params(rng: &mut ChaCha8Rng) -> ChannelParams {
        ChannelParams {
            p_c_l: rng.gen_range(0.001..0.9),
            p_c_r: rng.gen_range(0.001..0.9),
            theta_l: rng.gen_range(-3.2..3.2),
            theta_r: rng.gen_range(-3.2..3.2),
            eta_l: rng.gen_range(0.01..1.0),
            eta_r: rng.gen_range(0.01..1.0),
            eta_1: rng.gen_range(0.01..1.0),
            eta_2: rng.gen_range(0.01..1.0),
        }
    }

    fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
        let u: f64 = 1.0 - rng.gen::<f64>();
        let v: f64 = rng.gen();
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
    }

    #[test]
    fn lossless_symmetric_examples() {
        let cp = sym(0.01, 1.0);
        for det in DETECTORS {
            let p = heralding_probability(&cp, DetectionScheme::Pnrd, det).unwrap();
            assert!((p - 0.009801).abs() < 1e-15);
            let p = heralding_probability(&cp, DetectionScheme::Nrpd, det).unwrap();
            assert!((p - 0.0099).abs() < 1e-15);
        }
        let f = fidelity_singlet_triplet(&cp, DetectionScheme::Pnrd, Detector::D1).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        let f = fidelity_singlet_triplet(&cp, DetectionScheme::Nrpd, Detector::D1).unwrap();
        assert!((f - 0.99).abs() < 1e-12);
    }

    #[test]
    fn no_pump_means_no_clicks() {
        let cp = ChannelParams {
            p_c_l: 0.0,
            p_c_r: 0.0,
            theta_l: 0.4,
            theta_r: 0.0,
            eta_l: 0.8,
            eta_r: 0.6,
            eta_1: 0.9,
            eta_2: 0.7,
        };
        for scheme in SCHEMES {
            for det in DETECTORS {
                assert_eq!(heralding_probability(&cp, scheme, det).unwrap(), 0.0);
                assert!(matches!(
                    fidelity_singlet_triplet(&cp, scheme, det),
                    Err(Error::HeraldImpossible)
                ));
            }
            assert_eq!(success_probability(&cp, scheme).unwrap(), 0.0);
        }
    }

    #[test]
    fn symmetric_closed_forms_match_asymmetric_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let sp = SymmetricParams {
                p_c: rng.gen_range(0.001..0.95),
                eta_s: rng.gen_range(0.01..1.0),
            };
            let cp = sp.expand().unwrap();
            for scheme in SCHEMES {
                let p_closed = symmetric_heralding_probability(&sp, scheme).unwrap();
                let f_closed = symmetric_fidelity(&sp, scheme).unwrap();
                for det in DETECTORS {
                    let p = heralding_probability(&cp, scheme, det).unwrap();
                    assert!((p - p_closed).abs() < 1e-14 * p_closed.max(1e-30));
                    let f = fidelity_singlet_triplet(&cp, scheme, det).unwrap();
                    assert!((f - f_closed).abs() < 1e-12);
                }
                let ps = success_probability(&cp, scheme).unwrap();
                let ps_closed = symmetric_success_probability(&sp).unwrap();
                assert!((ps - ps_closed).abs() < 1e-14);
                // Success factorizes as fidelity times total herald probability.
                assert!((ps_closed - f_closed * 2.0 * p_closed).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn symmetric_forms_cover_the_full_pump_range() {
        let sp = SymmetricParams { p_c: 1.0, eta_s: 0.37 };
        assert_eq!(
            symmetric_fidelity(&sp, DetectionScheme::Pnrd).unwrap(),
            0.37f64.powi(3)
        );
        assert_eq!(symmetric_fidelity(&sp, DetectionScheme::Nrpd).unwrap(), 0.0);
        for scheme in SCHEMES {
            assert_eq!(symmetric_heralding_probability(&sp, scheme).unwrap(), 0.0);
        }
        assert_eq!(symmetric_success_probability(&sp).unwrap(), 0.0);
        // eta_s = 0 and p_c = 1 together hit 0/0 in the raw quotient.
        let dead = SymmetricParams { p_c: 1.0, eta_s: 0.0 };
        for scheme in SCHEMES {
            let p = symmetric_heralding_probability(&dead, scheme).unwrap();
            assert_eq!(p, 0.0);
        }
    }

    #[test]
    fn opaque_path_limit_of_fidelity() {
        // As the system efficiency vanishes the fidelity approaches
        // (1 - p_c)^3 under both schemes.
        let limit = 0.99f64.powi(3);
        for scheme in SCHEMES {
            let f = symmetric_fidelity(&SymmetricParams { p_c: 0.01, eta_s: 0.0 }, scheme)
                .unwrap();
            assert!((f - limit).abs() < 1e-15);
            assert!((limit - 0.970299).abs() < 1e-6);
            let f_near = fidelity_singlet_triplet(&sym(0.01, 1e-9), scheme, Detector::D2).unwrap();
            assert!((f_near - limit).abs() < 1e-8);
        }
        // The conditional fidelity itself is undefined at eta_s = 0.
        assert!(matches!(
            fidelity_singlet_triplet(&sym(0.01, 0.0), DetectionScheme::Pnrd, Detector::D1),
            Err(Error::HeraldImpossible)
        ));
    }

    #[test]
    fn fidelity_probability_product_is_scheme_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let cp = random_params(&mut rng);
            for det in DETECTORS {
                let products: Vec<f64> = SCHEMES
                    .iter()
                    .map(|&s| {
                        heralding_probability(&cp, s, det).unwrap()
                            * fidelity_singlet_triplet(&cp, s, det).unwrap()
                    })
                    .collect();
                assert!((products[0] - products[1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn detector_symmetry_and_scheme_ordering() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let mut cp = random_params(&mut rng);
            for scheme in SCHEMES {
                for det in DETECTORS {
                    let p = heralding_probability(&cp, scheme, det).unwrap();
                    assert!((0.0..=1.0).contains(&p));
                    let f = fidelity_singlet_triplet(&cp, scheme, det).unwrap();
                    assert!((-1e-12..=1.0 + 1e-12).contains(&f));
                }
                let pnrd = heralding_probability(&cp, DetectionScheme::Pnrd, Detector::D1);
                let nrpd = heralding_probability(&cp, DetectionScheme::Nrpd, Detector::D1);
                assert!(nrpd.unwrap() >= pnrd.unwrap());
            }
            cp.eta_2 = cp.eta_1;
            for scheme in SCHEMES {
                let p1 = heralding_probability(&cp, scheme, Detector::D1).unwrap();
                let p2 = heralding_probability(&cp, scheme, Detector::D2).unwrap();
                assert_eq!(p1, p2);
            }
        }
    }

    #[test]
    fn phases_shift_nothing_but_fidelity_and_only_via_their_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let cp = random_params(&mut rng);
            let shift = rng.gen_range(-3.0..3.0);
            let shifted = ChannelParams {
                theta_l: cp.theta_l + shift,
                theta_r: cp.theta_r + shift,
                ..cp
            };
            for scheme in SCHEMES {
                for det in DETECTORS {
                    let p = heralding_probability(&cp, scheme, det).unwrap();
                    let p_shift = heralding_probability(&shifted, scheme, det).unwrap();
                    assert_eq!(p, p_shift);
                    let f = fidelity_singlet_triplet(&cp, scheme, det).unwrap();
                    let f_shift = fidelity_singlet_triplet(&shifted, scheme, det).unwrap();
                    assert!((f - f_shift).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn arbitrary_state_specializations() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for _ in 0..100 {
            let cp = random_params(&mut rng);
            for scheme in SCHEMES {
                // Bell coefficients reproduce the singlet/triplet fidelity.
                for (det, sign) in [(Detector::D1, -1.0), (Detector::D2, 1.0)] {
                    let f_bell = fidelity_arbitrary(
                        &cp,
                        scheme,
                        det,
                        C64::new(inv_sqrt2, 0.0),
                        C64::new(sign * inv_sqrt2, 0.0),
                    )
                    .unwrap();
                    let f = fidelity_singlet_triplet(&cp, scheme, det).unwrap();
                    assert!((f_bell - f).abs() < 1e-12);
                }
                // A state orthogonal to the optimum scores zero.
                let opt = optimal_state(&cp, scheme, Detector::D1).unwrap();
                let f_orth = fidelity_arbitrary(
                    &cp,
                    scheme,
                    Detector::D1,
                    -opt.d_r.conj(),
                    opt.d_l.conj(),
                )
                .unwrap();
                assert!(f_orth.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unnormalized_coefficients_are_rejected() {
        let cp = sym(0.1, 0.8);
        let err = fidelity_arbitrary(
            &cp,
            DetectionScheme::Pnrd,
            Detector::D1,
            C64::new(0.8, 0.0),
            C64::new(0.3, 0.0),
        );
        assert!(matches!(err, Err(Error::NotNormalized(n)) if (n - 0.73).abs() < 1e-12));
    }

    #[test]
    fn single_path_loading() {
        // Right arm pumped but never observed: the target |1,0> picks up
        // exactly the right-side vacuum weight.
        let cp = ChannelParams {
            p_c_l: 0.01,
            p_c_r: 0.01,
            theta_l: 0.0,
            theta_r: 0.0,
            eta_l: 1.0,
            eta_r: 0.0,
            eta_1: 1.0,
            eta_2: 1.0,
        };
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let f = fidelity_arbitrary(&cp, DetectionScheme::Pnrd, Detector::D1, one, zero).unwrap();
        assert!((f - 0.99).abs() < 1e-12);
        // Right arm truly unpumped: unit fidelity.
        let cp = ChannelParams { p_c_r: 0.0, eta_r: 1.0, ..cp };
        let f = fidelity_arbitrary(&cp, DetectionScheme::Pnrd, Detector::D1, one, zero).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn optimal_state_examples() {
        // Symmetric link: equal weights, detector-dependent sign.
        let cp = sym(0.05, 0.6);
        for scheme in SCHEMES {
            let opt = optimal_state(&cp, scheme, Detector::D1).unwrap();
            assert!((opt.d_l.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
            assert!((opt.d_r.re + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
            let opt2 = optimal_state(&cp, scheme, Detector::D2).unwrap();
            assert!((opt2.d_r.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        }
        // Left path three times stronger than right.
        let cp = ChannelParams {
            p_c_l: 0.06,
            p_c_r: 0.02,
            theta_l: 0.3,
            theta_r: -0.5,
            eta_l: 0.5,
            eta_r: 0.5,
            eta_1: 0.9,
            eta_2: 0.9,
        };
        let opt = optimal_state(&cp, DetectionScheme::Pnrd, Detector::D1).unwrap();
        assert!((opt.d_l.norm_sqr() - 0.75).abs() < 1e-12);
        assert!((opt.d_r.arg() - (cp.theta_r - cp.theta_l + std::f64::consts::PI)).abs() < 1e-12);
        // Dead left path: all weight on the right, singlet fidelity half the
        // optimum.
        let cp = ChannelParams { eta_l: 1e-9, ..sym(0.01, 1.0) };
        let opt = optimal_state(&cp, DetectionScheme::Pnrd, Detector::D1).unwrap();
        assert!(opt.d_r.norm() > 0.999);
        let f = fidelity_singlet_triplet(&cp, DetectionScheme::Pnrd, Detector::D1).unwrap();
        assert!((f - opt.f_opt / 2.0).abs() < 1e-4);
        assert!((0.45..0.51).contains(&f));
    }

    #[test]
    fn dead_link_has_no_optimal_state() {
        let mut cp = sym(0.0, 0.5);
        assert!(matches!(
            optimal_state(&cp, DetectionScheme::Pnrd, Detector::D1),
            Err(Error::NoExcitationChannel)
        ));
        cp = sym(0.1, 0.5);
        cp.eta_1 = 0.0;
        assert!(matches!(
            optimal_state(&cp, DetectionScheme::Pnrd, Detector::D1),
            Err(Error::HeraldImpossible)
        ));
    }

    #[test]
    fn optimum_dominates_a_dense_state_grid() {
        // Sweep the two-real-parameter family d_l = cos(a), d_r = sin(a)e^{iφ}
        // with local refinement, confirming nothing beats the closed form.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let cp = random_params(&mut rng);
            for scheme in SCHEMES {
                let opt = optimal_state(&cp, scheme, Detector::D1).unwrap();
                let eval = |a: f64, phi: f64| {
                    fidelity_arbitrary(
                        &cp,
                        scheme,
                        Detector::D1,
                        C64::new(a.cos(), 0.0),
                        C64::from_polar(a.sin(), phi),
                    )
                    .unwrap()
                };
                let mut best = (0.0, 0.0, f64::MIN);
                let mut scan = |a0: f64, a1: f64, p0: f64, p1: f64, best: &mut (f64, f64, f64)| {
                    for i in 0..=80 {
                        let a = a0 + (a1 - a0) * i as f64 / 80.0;
                        for j in 0..=80 {
                            let phi = p0 + (p1 - p0) * j as f64 / 80.0;
                            let f = eval(a, phi);
                            assert!(f <= opt.f_opt + 1e-12);
                            if f > best.2 {
                                *best = (a, phi, f);
                            }
                        }
                    }
                };
                scan(
                    0.0,
                    std::f64::consts::FRAC_PI_2,
                    -std::f64::consts::PI,
                    std::f64::consts::PI,
                    &mut best,
                );
                let mut da = 0.02 * std::f64::consts::FRAC_PI_2;
                let mut dphi = 0.1;
                for _ in 0..4 {
                    let (a, phi, _) = best;
                    scan(a - da, a + da, phi - dphi, phi + dphi, &mut best);
                    da /= 10.0;
                    dphi /= 10.0;
                }
                assert!(
                    opt.f_opt - best.2 < 1e-9,
                    "grid max {} vs closed form {}",
                    best.2,
                    opt.f_opt
                );
            }
        }
    }

    #[test]
    fn bell_overlap_relates_plain_and_optimal_fidelity() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for _ in 0..100 {
            let cp = random_params(&mut rng);
            for scheme in SCHEMES {
                for (det, sign) in [(Detector::D1, -1.0), (Detector::D2, 1.0)] {
                    let opt = optimal_state(&cp, scheme, det).unwrap();
                    let overlap = (opt.d_l * sign + opt.d_r) * inv_sqrt2;
                    let f = fidelity_singlet_triplet(&cp, scheme, det).unwrap();
                    assert!((overlap.norm_sqr() * opt.f_opt - f).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn success_probability_is_scheme_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let cp = random_params(&mut rng);
            let a = success_probability(&cp, DetectionScheme::Pnrd).unwrap();
            let b = success_probability(&cp, DetectionScheme::Nrpd).unwrap();
            assert!((a - b).abs() < 1e-12);
            let report = herald_report(&cp, DetectionScheme::Pnrd).unwrap();
            assert!(report.p_success <= report.p_herald + 1e-15);
        }
        let sp = SymmetricParams { p_c: 0.01, eta_s: 0.05 };
        let got = success_probability(&sp.expand().unwrap(), DetectionScheme::Nrpd).unwrap();
        assert!((got - 9.801e-4).abs() < 1e-18);
    }

    #[test]
    fn report_fields_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let cp = random_params(&mut rng);
            for scheme in SCHEMES {
                let r = herald_report(&cp, scheme).unwrap();
                assert_eq!(r.p_herald, r.p1 + r.p2);
                assert!(r.f1.unwrap() <= r.f_opt1.unwrap() + 1e-12);
                assert!(r.f2.unwrap() <= r.f_opt2.unwrap() + 1e-12);
                let (d_l, d_r) = r.opt_coeffs.unwrap();
                assert!((d_l.norm_sqr() + d_r.norm_sqr() - 1.0).abs() < 1e-12);
                for p in [r.p1, r.p2, r.p_herald, r.p_success] {
                    assert!((0.0..=1.0).contains(&p));
                }
            }
        }
        // Dead detector 1: conditional metrics become absent, not NaN.
        let mut cp = sym(0.1, 0.8);
        cp.eta_1 = 0.0;
        let r = herald_report(&cp, DetectionScheme::Pnrd).unwrap();
        assert_eq!(r.p1, 0.0);
        assert!(r.f1.is_none() && r.f_opt1.is_none());
        assert!(r.f2.is_some() && r.f_opt2.is_some());
        assert!(r.opt_coeffs.is_some());
    }

    #[test]
    fn phase_average_endpoints_and_symmetry_guard() {
        let cp = sym(0.01, 0.8);
        for scheme in SCHEMES {
            let f_sym = fidelity_singlet_triplet(&cp, scheme, Detector::D1).unwrap();
            let f0 = phase_averaged_fidelity(&cp, scheme, 0.0).unwrap();
            assert!((f0 - f_sym).abs() < 1e-15);
            let f_inf = phase_averaged_fidelity(&cp, scheme, f64::INFINITY).unwrap();
            assert!((f_inf - f_sym / 2.0).abs() < 1e-15);
            let f1 = phase_averaged_fidelity(&cp, scheme, 1.0).unwrap();
            assert!((f1 - f_sym * (1.0 + (-1.0f64).exp()) / 2.0).abs() < 1e-15);
            assert!(f_inf <= f1 && f1 <= f0);
        }
        let mut lopsided = cp;
        lopsided.eta_l = 0.5;
        assert!(matches!(
            phase_averaged_fidelity(&lopsided, DetectionScheme::Pnrd, 0.1),
            Err(Error::NotSymmetric("eta_l != eta_r"))
        ));
        assert!(phase_averaged_fidelity(&cp, DetectionScheme::Pnrd, -0.1).is_err());
    }

    #[test]
    fn phase_average_matches_monte_carlo() {
        let cp = sym(0.01, 0.8);
        let sigma_sq: f64 = 1.0;
        let sigma = sigma_sq.sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for scheme in SCHEMES {
            let expect = phase_averaged_fidelity(&cp, scheme, sigma_sq).unwrap();
            let n = 100_000;
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..n {
                let jittered = ChannelParams {
                    theta_l: sigma * standard_normal(&mut rng),
                    theta_r: sigma * standard_normal(&mut rng),
                    ..cp
                };
                let f = fidelity_singlet_triplet(&jittered, scheme, Detector::D1).unwrap();
                sum += f;
                sum_sq += f * f;
            }
            let mean = sum / n as f64;
            let var = (sum_sq / n as f64 - mean * mean).max(0.0);
            let std_err = (var / n as f64).sqrt();
            assert!(
                (mean - expect).abs() < 3.0 * std_err,
                "MC mean {mean} vs closed form {expect} (3se = {})",
                3.0 * std_err
            );
        }
    }

    #[test]
    fn fidelity_peaks_above_the_matched_path_efficiency() {
        // With the right path fixed at 0.7, the singlet fidelity is not
        // maximized by matching the left path; the optimum sits higher.
        let base = ChannelParams {
            p_c_l: 0.01,
            p_c_r: 0.01,
            theta_l: 0.0,
            theta_r: 0.0,
            eta_l: 0.7,
            eta_r: 0.7,
            eta_1: 1.0,
            eta_2: 1.0,
        };
        let f_at = |eta_l: f64| {
            let cp = ChannelParams { eta_l, ..base };
            fidelity_singlet_triplet(&cp, DetectionScheme::Pnrd, Detector::D1).unwrap()
        };
        let matched = f_at(0.7);
        let mut best = (0.0, 0.0);
        for i in 0..=1000 {
            let eta_l = i as f64 / 1000.0;
            let f = f_at(eta_l);
            if f > best.1 {
                best = (eta_l, f);
            }
        }
        assert!(best.1 > matched);
        assert!((0.74..0.82).contains(&best.0), "peak at {}", best.0);
    }
}
