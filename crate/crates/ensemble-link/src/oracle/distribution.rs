//! Brute-force number-basis evaluation of the single-link heralding process.
//!
//! The emission from each source is expanded in the photon-number basis up to
//! a configurable truncation depth, every loss channel is tracked explicitly
//! through exact beam-splitter amplitudes, and the detection statistics are
//! accumulated term by term.  Nothing here shares code with the closed-form
//! expressions in [`crate::herald`]; the two routes agree only if both are
//! right, which is exactly what the cross-validation tests exploit.
//!
//! Truncation affects only the heralding probabilities, and one-sidedly: the
//! enumerated value never exceeds the untruncated one, and the deficit is
//! bounded by [`tail_bound`].  The two-dimensional single-excitation block of
//! the post-herald atomic state is a finite sum that the truncation never
//! touches, so fidelity numerators and the success probability come out exact
//! (up to rounding) at any depth.

use num_complex::Complex64 as C64;

use super::tensor::{bs5050_amp, loss_amp};
use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::herald::{DetectionScheme, Detector};

/// Largest truncation depth accepted by [`oracle_distribution`].
///
/// Beyond this the run time grows without buying accuracy: the neglected
/// weight is already below f64 resolution for any excitation probability of
/// practical interest.
pub const MAX_DEPTH: usize = 30;

/// Upper bound on the heralding probability lost to truncation at depth
/// `n_max`.
///
/// Keeping at most `n_max` excitations per source discards exactly the
/// population with more than `n_max` excitations on either side, whose total
/// weight is `1 - (1 - p_l^(n_max+1)) * (1 - p_r^(n_max+1))`.  Detection
/// probabilities only shrink when that weight is dropped, so any enumerated
/// probability sits within this bound below its exact value.
pub fn tail_bound(p_c_l: f64, p_c_r: f64, n_max: usize) -> f64 {
    let tl = p_c_l.powi(n_max as i32 + 1);
    let tr = p_c_r.powi(n_max as i32 + 1);
    tl + tr - tl * tr
}

/// Detection statistics of one link, enumerated in the number basis.
///
/// Holds the per-detector heralding probabilities and, for each detector, the
/// unnormalised two-by-two block of the post-herald atomic state on the
/// single-excitation basis `{|1,0>, |0,1>}` (left atom excited, right atom
/// excited).  All fidelity-type quantities derive from that block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleDistribution {
    p: [f64; 2],
    block: [[[C64; 2]; 2]; 2],
    tail: f64,
}

impl OracleDistribution {
    /// Probability that the given detector alone fires, as enumerated.
    ///
    /// Undershoots the exact value by at most [`tail`](Self::tail).
    pub fn heralding_probability(&self, detector: Detector) -> f64 {
        self.p[detector.index() - 1]
    }

    /// Total heralding probability (either detector fires alone).
    pub fn p_herald(&self) -> f64 {
        self.p[0] + self.p[1]
    }

    /// Joint probability of heralding on `detector` and projecting the atoms
    /// onto that detector's Bell state afterwards.
    ///
    /// This is a fidelity-probability product, not a conditional fidelity,
    /// and it is exact at any truncation depth.
    pub fn bell_overlap(&self, detector: Detector) -> f64 {
        let b = &self.block[detector.index() - 1];
        let sign = detector.bell_sign();
        0.5 * (b[0][0].re + b[1][1].re + sign * 2.0 * b[0][1].re)
    }

    /// Probability of heralding *and* passing the matching Bell check,
    /// summed over both detectors.  Exact at any truncation depth.
    pub fn p_success(&self) -> f64 {
        self.bell_overlap(Detector::D1) + self.bell_overlap(Detector::D2)
    }

    /// Conditional fidelity onto the heralded detector's Bell state.
    pub fn fidelity_singlet_triplet(&self, detector: Detector) -> Result<f64> {
        let p = self.heralding_probability(detector);
        if p <= 0.0 {
            return Err(Error::HeraldImpossible);
        }
        Ok(self.bell_overlap(detector) / p)
    }

    /// Conditional fidelity onto an arbitrary single-excitation state
    /// `d_l |1,0> + d_r |0,1>` after a herald on `detector`.
    ///
    /// The coefficients must be normalised to unity within `1e-12`.
    pub fn fidelity_arbitrary(&self, detector: Detector, d_l: C64, d_r: C64) -> Result<f64> {
        let norm = d_l.norm_sqr() + d_r.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm));
        }
        let p = self.heralding_probability(detector);
        if p <= 0.0 {
            return Err(Error::HeraldImpossible);
        }
        let b = &self.block[detector.index() - 1];
        let quad = d_l.norm_sqr() * b[0][0].re
            + d_r.norm_sqr() * b[1][1].re
            + 2.0 * (d_l.conj() * d_r * b[0][1]).re;
        Ok(quad / p)
    }

    /// Best conditional fidelity over all normalised single-excitation
    /// states: the top eigenvalue of the heralded block over the heralding
    /// probability.
    pub fn optimal_fidelity(&self, detector: Detector) -> Result<f64> {
        let p = self.heralding_probability(detector);
        if p <= 0.0 {
            return Err(Error::HeraldImpossible);
        }
        let b = &self.block[detector.index() - 1];
        let half_trace = 0.5 * (b[0][0].re + b[1][1].re);
        let half_gap = 0.5 * (b[0][0].re - b[1][1].re);
        let disc = (half_gap * half_gap + b[0][1].norm_sqr()).sqrt();
        Ok((half_trace + disc) / p)
    }

    /// Truncation bound the distribution was enumerated under.
    pub fn tail(&self) -> f64 {
        self.tail
    }
}

/// Number-basis amplitudes of one source: index `n` carries the amplitude of
/// `n` stored excitations (and `n` emitted photons).
fn source_amplitudes(p_c: f64, theta: f64, n_max: usize) -> Vec<C64> {
    let ratio = C64::from_polar(p_c.sqrt(), theta);
    let mut amp = C64::new((1.0 - p_c).sqrt(), 0.0);
    (0..=n_max)
        .map(|_| {
            let out = amp;
            amp *= ratio;
            out
        })
        .collect()
}

/// Probability that a detector of efficiency `eta` reports the heralding
/// click when `s` photons arrive, per counting scheme.
fn click_weight(scheme: DetectionScheme, eta: f64, s: usize) -> f64 {
    match scheme {
        // Exactly one photon seen: s ways to pick it, the rest missed.
        DetectionScheme::Pnrd => {
            if s == 0 {
                0.0
            } else {
                s as f64 * eta * (1.0 - eta).powi(s as i32 - 1)
            }
        }
        // At least one photon seen.
        DetectionScheme::Nrpd => 1.0 - (1.0 - eta).powi(s as i32),
    }
}

/// Probability that a detector of efficiency `eta` stays silent when `s`
/// photons arrive (same in both counting schemes).
fn silence_weight(eta: f64, s: usize) -> f64 {
    (1.0 - eta).powi(s as i32)
}

/// Enumerates the heralding statistics of one link in the photon-number
/// basis, keeping up to `n_max` excitations per source.
///
/// The enumeration walks every pair of stored-excitation numbers, every way
/// the two transmission channels can leak photons, and every way the
/// surviving photons can split at the balanced combiner, weighting each term
/// by the detection probabilities of the chosen scheme.  Off-diagonal terms
/// of loss and splitter outcomes cancel unless every traced channel holds the
/// same count on both sides, which for the atomic single-excitation block
/// reduces to matching total excitation numbers; that is what keeps the block
/// a short exact sum.
pub fn oracle_distribution(
    params: &ChannelParams,
    scheme: DetectionScheme,
    n_max: usize,
) -> Result<OracleDistribution> {
    params.validate()?;
    if !(1..=MAX_DEPTH).contains(&n_max) {
        return Err(Error::ParamRange {
            name: "n_max",
            value: n_max as f64,
            range: "[1, 30]",
        });
    }

    let c = source_amplitudes(params.p_c_l, params.theta_l, n_max);
    let d = source_amplitudes(params.p_c_r, params.theta_r, n_max);

    // amp_keep[n][l]: amplitude factor for losing l of n photons in a channel.
    let keep_table = |eta: f64| -> Vec<Vec<f64>> {
        (0..=n_max)
            .map(|n| (0..=n).map(|l| loss_amp(n, l, eta)).collect())
            .collect()
    };
    let keep_l = keep_table(params.eta_l);
    let keep_r = keep_table(params.eta_r);

    // split[u][v][s1]: amplitude for (u, v) photons in to (s1, u+v-s1) out.
    let split: Vec<Vec<Vec<f64>>> = (0..=n_max)
        .map(|u| {
            (0..=n_max)
                .map(|v| (0..=u + v).map(|s1| bs5050_amp(u, v, s1)).collect())
                .collect()
        })
        .collect();

    let max_photons = 2 * n_max;
    let click1: Vec<f64> = (0..=max_photons)
        .map(|s| click_weight(scheme, params.eta_1, s))
        .collect();
    let click2: Vec<f64> = (0..=max_photons)
        .map(|s| click_weight(scheme, params.eta_2, s))
        .collect();
    let silence1: Vec<f64> = (0..=max_photons)
        .map(|s| silence_weight(params.eta_1, s))
        .collect();
    let silence2: Vec<f64> = (0..=max_photons)
        .map(|s| silence_weight(params.eta_2, s))
        .collect();

    // Heralding probabilities: diagonal terms only.
    let mut p = [0.0_f64; 2];
    for n in 0..=n_max {
        for m in 0..=n_max {
            let weight_nm = c[n].norm_sqr() * d[m].norm_sqr();
            for (l_l, &kl_amp) in keep_l[n].iter().enumerate() {
                for (l_r, &kr_amp) in keep_r[m].iter().enumerate() {
                    let kl = n - l_l;
                    let kr = m - l_r;
                    let u = kl + kr;
                    let base = weight_nm * kl_amp * kl_amp * kr_amp * kr_amp;
                    for (s1, &bs) in split[kl][kr].iter().enumerate() {
                        let shared = base * bs * bs;
                        p[0] += shared * click1[s1] * silence2[u - s1];
                        p[1] += shared * silence1[s1] * click2[u - s1];
                    }
                }
            }
        }
    }

    // Post-herald atomic block on {|1,0>, |0,1>}: finite exact sum.  Traced
    // loss and splitter channels force equal totals on bra and ket, which for
    // these two basis states pins the per-channel loss counts to be equal as
    // well.
    let states = [(1_usize, 0_usize), (0_usize, 1_usize)];
    let mut block = [[[C64::new(0.0, 0.0); 2]; 2]; 2];
    for (i, &(n, m)) in states.iter().enumerate() {
        for (j, &(n2, m2)) in states.iter().enumerate() {
            let pre = c[n] * d[m] * (c[n2] * d[m2]).conj();
            let mut w = [0.0_f64; 2];
            for l_l in 0..=n.min(n2) {
                for l_r in 0..=m.min(m2) {
                    let (kl, kr) = (n - l_l, m - l_r);
                    let (kl2, kr2) = (n2 - l_l, m2 - l_r);
                    let u = kl + kr;
                    let lamp = keep_l[n][l_l] * keep_l[n2][l_l] * keep_r[m][l_r] * keep_r[m2][l_r];
                    for s1 in 0..=u {
                        let bb = lamp * bs5050_amp(kl, kr, s1) * bs5050_amp(kl2, kr2, s1);
                        w[0] += bb * click1[s1] * silence2[u - s1];
                        w[1] += bb * silence1[s1] * click2[u - s1];
                    }
                }
            }
            block[0][i][j] = pre * w[0];
            block[1][i][j] = pre * w[1];
        }
    }

    Ok(OracleDistribution {
        p,
        block,
        tail: tail_bound(params.p_c_l, params.p_c_r, n_max),
    })
}
