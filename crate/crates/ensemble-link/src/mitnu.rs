//! Performance model of the MIT/NU trapped-atom architecture (dual optical
//! parametric amplifiers loading trapped-atom memories through fiber), and
//! the distance-indexed throughput comparison against the ensemble link.

use crate::channel::SymmetricParams;
use crate::error::{check_unit_interval, Error, Result};
use crate::herald::{symmetric_fidelity, symmetric_success_probability, DetectionScheme};

/// Operating point of one MIT/NU source-to-memories segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MitNuParams {
    /// Normalized pump gain `|G|^2`, in `[0, 1)`; unity is the oscillation
    /// threshold where the source moments diverge.
    pub gain_sq: f64,
    /// Transmissivity of one source-to-memory path (fiber plus any fixed
    /// loss), in `[0, 1]`.
    pub eta_f: f64,
    /// Memory-coupling ratio of cavity linewidth products, in `(0, 1]`.
    pub coupling_ratio: f64,
    /// Memory-cavity to source-cavity linewidth ratio, positive.
    pub linewidth_ratio: f64,
    /// Pump phase of the first amplifier (radians).
    pub theta_1: f64,
    /// Pump phase of the second amplifier (radians).
    pub theta_2: f64,
}

impl MitNuParams {
    /// Checks every field against its physical range.
    pub fn validate(&self) -> Result<()> {
        if self.gain_sq.is_nan() || self.gain_sq < 0.0 {
            return Err(Error::ParamRange {
                name: "gain_sq",
                value: self.gain_sq,
                range: "[0, 1)",
            });
        }
        if self.gain_sq >= 1.0 {
            return Err(Error::ThresholdSingularity(self.gain_sq.sqrt()));
        }
        check_unit_interval("eta_f", self.eta_f)?;
        if !(self.coupling_ratio > 0.0 && self.coupling_ratio <= 1.0) {
            return Err(Error::ParamRange {
                name: "coupling_ratio",
                value: self.coupling_ratio,
                range: "(0, 1]",
            });
        }
        if !(self.linewidth_ratio > 0.0 && self.linewidth_ratio.is_finite()) {
            return Err(Error::ParamRange {
                name: "linewidth_ratio",
                value: self.linewidth_ratio,
                range: "(0, inf)",
            });
        }
        for (name, value) in [("theta_1", self.theta_1), ("theta_2", self.theta_2)] {
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

/// Loaded-memory photon-number moments of one MIT/NU segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MitNuMoments {
    /// Anti-squeezed quadrature intensity; the smaller of the pair.
    pub i_plus: f64,
    /// Squeezed quadrature intensity; the larger of the pair.
    pub i_minus: f64,
    /// Mean loaded photon number `i_minus - i_plus`.
    pub n_bar: f64,
    /// Phase-sensitive moment `i_minus + i_plus`.
    pub n_tilde: f64,
    /// Determinant-style combination `n_bar (1 + n_bar) - n_tilde^2`
    /// entering both success probability and fidelity.
    pub moment_det: f64,
}

/// Entanglement metrics of one MIT/NU segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MitNuMetrics {
    /// Probability that one trial loads the target Bell state.
    pub p_success: f64,
    /// Fidelity of the loaded state; `None` at zero gain where the
    /// conditional state is undefined.
    pub fidelity: Option<f64>,
}

/// Photon-number moments of the memories after transmission and loading.
pub fn mitnu_moments(p: &MitNuParams) -> Result<MitNuMoments> {
    p.validate()?;
    let g = p.gain_sq.sqrt();
    let scale = p.eta_f * p.coupling_ratio * g;
    let i_plus = scale / ((1.0 + g) * (1.0 + g + p.linewidth_ratio));
    let i_minus = scale / ((1.0 - g) * (1.0 - g + p.linewidth_ratio));
    let n_bar = i_minus - i_plus;
    let n_tilde = i_minus + i_plus;
    Ok(MitNuMoments {
        i_plus,
        i_minus,
        n_bar,
        n_tilde,
        moment_det: n_bar * (1.0 + n_bar) - n_tilde * n_tilde,
    })
}

/// Success probability and fidelity of one MIT/NU segment.
pub fn mitnu_metrics(p: &MitNuParams) -> Result<MitNuMetrics> {
    p.validate()?;
    let m = mitnu_moments(p)?;
    Ok(metrics_from_moments(&m, 1.0 + (p.theta_1 - p.theta_2).cos()))
}

/// Fidelity averaged over independent Gaussian pump-phase jitter of
/// variance `sigma_sq` on each amplifier.
///
/// The configured phases are immaterial: the jitter is modeled around a
/// common nominal value, so only the variance enters. `sigma_sq` may be
/// infinite.
pub fn phase_averaged_mitnu(p: &MitNuParams, sigma_sq: f64) -> Result<f64> {
    p.validate()?;
    if sigma_sq.is_nan() || sigma_sq < 0.0 {
        return Err(Error::ParamRange {
            name: "sigma_sq",
            value: sigma_sq,
            range: "[0, inf]",
        });
    }
    let m = mitnu_moments(p)?;
    metrics_from_moments(&m, 1.0 + (-sigma_sq).exp())
        .fidelity
        .ok_or(Error::HeraldImpossible)
}

/// Shared metric assembly; `phase_weight` is `1 + cos` of the effective
/// phase offset, or its average under jitter.
fn metrics_from_moments(m: &MitNuMoments, phase_weight: f64) -> MitNuMetrics {
    let numerator = m.moment_det * m.moment_det + m.n_tilde * m.n_tilde * phase_weight;
    let herald_base = (1.0 + m.n_bar) * (1.0 + m.n_bar) - m.n_tilde * m.n_tilde;
    let denominator = 4.0 * m.moment_det * m.moment_det + 2.0 * m.n_tilde * m.n_tilde;
    MitNuMetrics {
        p_success: numerator / herald_base.powi(4),
        fidelity: (denominator > 0.0).then(|| numerator / denominator),
    }
}

/// Fiber span and trial clock shared by both architectures' links.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    /// Source-to-memory distance, i.e. half the memory-to-memory distance
    /// (km).
    pub half_distance_km: f64,
    /// Fiber attenuation (dB/km).
    pub loss_db_per_km: f64,
    /// Trial repetition rate (Hz).
    pub trial_rate_hz: f64,
}

impl LinkGeometry {
    /// Checks distances, loss, and rate against their ranges.
    pub fn validate(&self) -> Result<()> {
        if !(self.half_distance_km >= 0.0 && self.half_distance_km.is_finite()) {
            return Err(Error::ParamRange {
                name: "half_distance_km",
                value: self.half_distance_km,
                range: "[0, inf)",
            });
        }
        if !(self.loss_db_per_km >= 0.0 && self.loss_db_per_km.is_finite()) {
            return Err(Error::ParamRange {
                name: "loss_db_per_km",
                value: self.loss_db_per_km,
                range: "[0, inf)",
            });
        }
        if !(self.trial_rate_hz > 0.0 && self.trial_rate_hz.is_finite()) {
            return Err(Error::ParamRange {
                name: "trial_rate_hz",
                value: self.trial_rate_hz,
                range: "(0, inf)",
            });
        }
        Ok(())
    }

    /// Transmissivity of one half-distance fiber path.
    pub fn path_transmissivity(&self) -> f64 {
        10f64.powf(-self.loss_db_per_km * self.half_distance_km / 10.0)
    }

    /// Same geometry at a different source-to-memory distance.
    pub fn with_half_distance(&self, half_distance_km: f64) -> Self {
        LinkGeometry {
            half_distance_km,
            ..*self
        }
    }
}

impl Default for LinkGeometry {
    /// Zero span with the reference comparison numbers: 0.2 dB/km fiber and
    /// a 500 kHz trial clock.
    fn default() -> Self {
        LinkGeometry {
            half_distance_km: 0.0,
            loss_db_per_km: 0.2,
            trial_rate_hz: 5.0e5,
        }
    }
}

/// Ensemble-link side of the throughput comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DlczLinkConfig {
    /// Excitation probability of both ensembles.
    pub p_c: f64,
    /// Efficiency of both herald detectors.
    pub detector_efficiency: f64,
    /// Detection scheme used for the fidelity column.
    pub scheme: DetectionScheme,
    /// Fiber span and trial clock.
    pub geometry: LinkGeometry,
}

/// MIT/NU side of the throughput comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MitNuLinkConfig {
    /// Normalized pump gain `|G|^2`.
    pub gain_sq: f64,
    /// Memory-coupling ratio.
    pub coupling_ratio: f64,
    /// Linewidth ratio.
    pub linewidth_ratio: f64,
    /// Distance-independent loss on each source-to-memory path (dB),
    /// folded into the path transmissivity.
    pub fixed_loss_db_per_path: f64,
    /// Fiber span and trial clock.
    pub geometry: LinkGeometry,
}

/// One distance point of the head-to-head comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputRow {
    /// Memory-to-memory distance (km), twice the per-path span.
    pub total_distance_km: f64,
    /// Ensemble-link entangled-pair rate (Hz), including the 1/2 factor for
    /// needing two heralded pairs per useful qubit pair.
    pub dlcz_throughput_hz: f64,
    /// Ensemble-link fidelity at this distance.
    pub dlcz_fidelity: f64,
    /// MIT/NU entangled-pair rate (Hz).
    pub mitnu_throughput_hz: f64,
    /// MIT/NU fidelity at this distance; `None` at zero gain.
    pub mitnu_fidelity: Option<f64>,
}

/// Evaluates both architectures on a grid of memory-to-memory distances.
///
/// Both sides are scored at zero pump-phase offset. The halving of the
/// ensemble-link rate accounts for its applications consuming two heralded
/// pairs; it is applied only here, never in the underlying metrics.
pub fn throughput_comparison(
    dlcz: &DlczLinkConfig,
    mitnu: &MitNuLinkConfig,
    total_distances_km: &[f64],
) -> Result<Vec<ThroughputRow>> {
    check_unit_interval("p_c", dlcz.p_c)?;
    check_unit_interval("detector_efficiency", dlcz.detector_efficiency)?;
    dlcz.geometry.validate()?;
    mitnu.geometry.validate()?;
    if !(mitnu.fixed_loss_db_per_path >= 0.0 && mitnu.fixed_loss_db_per_path.is_finite()) {
        return Err(Error::ParamRange {
            name: "fixed_loss_db_per_path",
            value: mitnu.fixed_loss_db_per_path,
            range: "[0, inf)",
        });
    }
    let fixed_transmissivity = 10f64.powf(-mitnu.fixed_loss_db_per_path / 10.0);

    total_distances_km
        .iter()
        .map(|&distance| {
            if !(distance >= 0.0 && distance.is_finite()) {
                return Err(Error::ParamRange {
                    name: "total_distance_km",
                    value: distance,
                    range: "[0, inf)",
                });
            }
            let half = distance / 2.0;

            let sp = SymmetricParams {
                p_c: dlcz.p_c,
                eta_s: dlcz.geometry.with_half_distance(half).path_transmissivity()
                    * dlcz.detector_efficiency,
            };
            let dlcz_rate =
                0.5 * dlcz.geometry.trial_rate_hz * symmetric_success_probability(&sp)?;

            let params = MitNuParams {
                gain_sq: mitnu.gain_sq,
                eta_f: fixed_transmissivity
                    * mitnu.geometry.with_half_distance(half).path_transmissivity(),
                coupling_ratio: mitnu.coupling_ratio,
                linewidth_ratio: mitnu.linewidth_ratio,
                theta_1: 0.0,
                theta_2: 0.0,
            };
            let metrics = mitnu_metrics(&params)?;

            Ok(ThroughputRow {
                total_distance_km: distance,
                dlcz_throughput_hz: dlcz_rate,
                dlcz_fidelity: symmetric_fidelity(&sp, dlcz.scheme)?,
                mitnu_throughput_hz: mitnu.geometry.trial_rate_hz * metrics.p_success,
                mitnu_fidelity: metrics.fidelity,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reference_params(eta_f: f64) -> MitNuParams {
        MitNuParams {
            gain_sq: 0.01,
            eta_f,
            coupling_ratio: 10f64.powf(-0.5),
            linewidth_ratio: 0.5,
            theta_1: 0.0,
            theta_2: 0.0,
        }
    }

    fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
        let u: f64 = 1.0 - rng.gen::<f64>();
        let v: f64 = rng.gen();
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
    }

    #[test]
    fn zero_gain_means_zero_moments_and_undefined_fidelity() {
        let p = MitNuParams { gain_sq: 0.0, ..reference_params(0.9) };
        let m = mitnu_moments(&p).unwrap();
        assert_eq!(
            (m.i_plus, m.i_minus, m.n_bar, m.n_tilde, m.moment_det),
            (0.0, 0.0, 0.0, 0.0, 0.0)
        );
        let metrics = mitnu_metrics(&p).unwrap();
        assert_eq!(metrics.p_success, 0.0);
        assert_eq!(metrics.fidelity, None);
        assert!(matches!(
            phase_averaged_mitnu(&p, 0.5),
            Err(Error::HeraldImpossible)
        ));
    }

    #[test]
    fn reference_moments_match_frozen_values() {
        let m = mitnu_moments(&reference_params(1.0)).unwrap();
        let checks = [
            (m.i_plus, 0.017967486705502155),
            (m.i_minus, 0.025097441747368090),
            (m.n_bar, 0.0071299550418659346),
            (m.n_tilde, 0.043064928452870245),
            (m.moment_det, 0.0053262032381141309),
        ];
        for (got, expect) in checks {
            assert!(
                ((got - expect) / expect).abs() < 1e-14,
                "{got} vs frozen {expect}"
            );
        }
        assert!(m.i_minus > m.i_plus && m.i_plus > 0.0);
    }

    #[test]
    fn zero_distance_reference_metrics_match_frozen_values() {
        let metrics = mitnu_metrics(&reference_params(10f64.powf(-0.5))).unwrap();
        let f = metrics.fidelity.unwrap();
        assert!(((f - 0.96674210989563687) / f).abs() < 1e-12);
        let expect_p = 3.6879278377140147e-4;
        assert!(((metrics.p_success - expect_p) / expect_p).abs() < 1e-12);
    }

    #[test]
    fn intensities_scale_linearly_with_path_transmissivity() {
        let half = mitnu_moments(&reference_params(0.3)).unwrap();
        let full = mitnu_moments(&reference_params(0.6)).unwrap();
        assert!((full.i_plus - 2.0 * half.i_plus).abs() < 1e-18);
        assert!((full.i_minus - 2.0 * half.i_minus).abs() < 1e-18);
        assert!((full.n_tilde - 2.0 * half.n_tilde).abs() < 1e-18);
    }

    #[test]
    fn counter_phased_pumps_suppress_the_interference_term() {
        let p = MitNuParams {
            theta_2: std::f64::consts::PI,
            ..reference_params(0.8)
        };
        let m = mitnu_moments(&p).unwrap();
        let f = mitnu_metrics(&p).unwrap().fidelity.unwrap();
        let expect = m.moment_det * m.moment_det
            / (4.0 * m.moment_det * m.moment_det + 2.0 * m.n_tilde * m.n_tilde);
        assert!((f - expect).abs() < 1e-15);
        assert!(f < 0.5);
    }

    #[test]
    fn aligned_fidelity_stays_in_the_upper_half_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..500 {
            let p = MitNuParams {
                gain_sq: rng.gen_range(1e-6..0.999),
                eta_f: rng.gen_range(1e-6..1.0),
                coupling_ratio: rng.gen_range(1e-3..1.0),
                linewidth_ratio: rng.gen_range(1e-3..10.0),
                theta_1: 0.0,
                theta_2: 0.0,
            };
            let metrics = mitnu_metrics(&p).unwrap();
            assert!((0.0..=1.0).contains(&metrics.p_success), "params {p:?}");
            let f = metrics.fidelity.unwrap();
            assert!((0.5..=1.0).contains(&f), "fidelity {f} at {p:?}");
        }
    }

    #[test]
    fn phase_average_endpoints_and_monotonicity() {
        let p = reference_params(0.7);
        let aligned = mitnu_metrics(&p).unwrap().fidelity.unwrap();
        assert!((phase_averaged_mitnu(&p, 0.0).unwrap() - aligned).abs() < 1e-15);
        // Configured phases are immaterial for the averaged value.
        let rotated = MitNuParams { theta_1: 1.0, theta_2: -2.0, ..p };
        assert_eq!(
            phase_averaged_mitnu(&p, 0.3).unwrap(),
            phase_averaged_mitnu(&rotated, 0.3).unwrap()
        );
        let m = mitnu_moments(&p).unwrap();
        let floor = (m.moment_det * m.moment_det + m.n_tilde * m.n_tilde)
            / (4.0 * m.moment_det * m.moment_det + 2.0 * m.n_tilde * m.n_tilde);
        assert!((phase_averaged_mitnu(&p, f64::INFINITY).unwrap() - floor).abs() < 1e-15);
        let mut last = aligned;
        for i in 1..=20 {
            let f = phase_averaged_mitnu(&p, i as f64 * 0.25).unwrap();
            assert!(f <= last && f >= floor);
            last = f;
        }
        assert!(phase_averaged_mitnu(&p, -1.0).is_err());
    }

    #[test]
    fn phase_average_matches_monte_carlo() {
        let base = reference_params(0.7);
        let sigma_sq: f64 = 1.0;
        let expect = phase_averaged_mitnu(&base, sigma_sq).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let n = 100_000;
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..n {
            let p = MitNuParams {
                theta_1: sigma_sq.sqrt() * standard_normal(&mut rng),
                theta_2: sigma_sq.sqrt() * standard_normal(&mut rng),
                ..base
            };
            let f = mitnu_metrics(&p).unwrap().fidelity.unwrap();
            sum += f;
            sum_sq += f * f;
        }
        let mean = sum / n as f64;
        let var = (sum_sq / n as f64 - mean * mean).max(0.0);
        let std_err = (var / n as f64).sqrt();
        assert!(
            (mean - expect).abs() < 3.0 * std_err,
            "MC mean {mean} vs closed form {expect}"
        );
    }

    #[test]
    fn parameter_validation() {
        let p = MitNuParams { gain_sq: 1.0, ..reference_params(1.0) };
        assert!(matches!(
            mitnu_moments(&p),
            Err(Error::ThresholdSingularity(g)) if g == 1.0
        ));
        let p = MitNuParams { gain_sq: -0.1, ..reference_params(1.0) };
        assert!(matches!(p.validate(), Err(Error::ParamRange { name: "gain_sq", .. })));
        let p = MitNuParams { coupling_ratio: 0.0, ..reference_params(1.0) };
        assert!(p.validate().is_err());
        let p = MitNuParams { coupling_ratio: 1.2, ..reference_params(1.0) };
        assert!(p.validate().is_err());
        let p = MitNuParams { linewidth_ratio: 0.0, ..reference_params(1.0) };
        assert!(p.validate().is_err());
        let p = MitNuParams { eta_f: 1.5, ..reference_params(1.0) };
        assert!(p.validate().is_err());
    }

    fn reference_comparison() -> (DlczLinkConfig, MitNuLinkConfig) {
        (
            DlczLinkConfig {
                p_c: 0.01,
                detector_efficiency: 0.5,
                scheme: DetectionScheme::Pnrd,
                geometry: LinkGeometry::default(),
            },
            MitNuLinkConfig {
                gain_sq: 0.01,
                coupling_ratio: 10f64.powf(-0.5),
                linewidth_ratio: 0.5,
                fixed_loss_db_per_path: 5.0,
                geometry: LinkGeometry::default(),
            },
        )
    }

    #[test]
    fn comparison_reference_point_at_zero_distance() {
        let (dlcz, mitnu) = reference_comparison();
        let rows = throughput_comparison(&dlcz, &mitnu, &[0.0]).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        // 0.5 * 500 kHz * 2*0.5*0.01*0.99^2, halved for pair consumption.
        assert!((row.dlcz_throughput_hz - 2450.25).abs() < 1e-9);
        assert!((row.mitnu_throughput_hz - 184.39639188570074).abs() < 1e-9);
        let f = row.mitnu_fidelity.unwrap();
        assert!((f - 0.96674210989563687).abs() < 1e-12);
        let sp = SymmetricParams { p_c: 0.01, eta_s: 0.5 };
        let expect = symmetric_fidelity(&sp, DetectionScheme::Pnrd).unwrap();
        assert_eq!(row.dlcz_fidelity, expect);
    }

    #[test]
    fn lossless_fiber_makes_throughput_distance_independent() {
        let (mut dlcz, mut mitnu) = reference_comparison();
        dlcz.geometry.loss_db_per_km = 0.0;
        mitnu.geometry.loss_db_per_km = 0.0;
        let rows = throughput_comparison(&dlcz, &mitnu, &[0.0, 30.0, 90.0]).unwrap();
        for row in &rows[1..] {
            assert!((row.dlcz_throughput_hz - rows[0].dlcz_throughput_hz).abs() < 1e-12);
            assert!((row.mitnu_throughput_hz - rows[0].mitnu_throughput_hz).abs() < 1e-12);
        }
    }

    #[test]
    fn throughput_decays_and_dlcz_decays_half_as_fast() {
        let (dlcz, mitnu) = reference_comparison();
        let distances: Vec<f64> = (0..=100).map(f64::from).collect();
        let rows = throughput_comparison(&dlcz, &mitnu, &distances).unwrap();
        for pair in rows.windows(2) {
            assert!(pair[1].dlcz_throughput_hz < pair[0].dlcz_throughput_hz);
            assert!(pair[1].mitnu_throughput_hz < pair[0].mitnu_throughput_hz);
            assert_eq!(
                pair[1].total_distance_km,
                pair[0].total_distance_km + 1.0
            );
        }
        // Two-point decadic decay rates over the far half of the span.
        let decade = |a: f64, b: f64| (a / b).log10() / 90.0;
        let dlcz_rate = decade(rows[10].dlcz_throughput_hz, rows[100].dlcz_throughput_hz);
        let mitnu_rate = decade(rows[10].mitnu_throughput_hz, rows[100].mitnu_throughput_hz);
        assert!((dlcz_rate - 0.01).abs() < 1e-12, "pure exponential side");
        let ratio = mitnu_rate / dlcz_rate;
        assert!((1.97..2.0).contains(&ratio), "rate ratio {ratio}");
    }

    #[test]
    fn comparison_rejects_bad_inputs() {
        let (dlcz, mitnu) = reference_comparison();
        assert!(matches!(
            throughput_comparison(&dlcz, &mitnu, &[10.0, -1.0]),
            Err(Error::ParamRange { name: "total_distance_km", .. })
        ));
        let bad = DlczLinkConfig { p_c: 1.5, ..dlcz };
        assert!(throughput_comparison(&bad, &mitnu, &[0.0]).is_err());
        let bad = MitNuLinkConfig { fixed_loss_db_per_path: -2.0, ..mitnu };
        assert!(throughput_comparison(&dlcz, &bad, &[0.0]).is_err());
        let mut bad = mitnu;
        bad.geometry.trial_rate_hz = 0.0;
        assert!(throughput_comparison(&dlcz, &bad, &[0.0]).is_err());
    }

    #[test]
    fn geometry_helpers() {
        let g = LinkGeometry {
            half_distance_km: 50.0,
            loss_db_per_km: 0.2,
            trial_rate_hz: 5.0e5,
        };
        assert!((g.path_transmissivity() - 0.1).abs() < 1e-15);
        assert_eq!(g.with_half_distance(0.0).path_transmissivity(), 1.0);
        assert!(LinkGeometry { loss_db_per_km: -0.1, ..g }.validate().is_err());
        assert!(LinkGeometry { half_distance_km: f64::NAN, ..g }.validate().is_err());
    }
}
