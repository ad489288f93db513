//! Circuit-level oracles for the connection and teleportation protocols.
//!
//! Each oracle builds the ideal input state explicitly, pushes it through
//! retrieval loss, balanced combining, and detector loss as exact
//! number-basis operations, then classifies every click pattern the chosen
//! counting scheme accepts.  No closed-form shortcut enters anywhere, so
//! these results stand as independent checks of [`crate::protocols`].
//!
//! Photon numbers here are bounded by construction (at most two per
//! combiner), so unlike the link oracle there is no truncation depth to
//! choose and nothing is approximate beyond f64 rounding.

use num_complex::Complex64 as C64;

use super::tensor::{FockTensor, Mode};
use crate::error::{Error, Result};
use crate::herald::DetectionScheme;
use crate::protocols::MeasurementModule;

/// Metrics of a heralded protocol as measured on the explicit circuit.
///
/// `fidelity` is `None` when no click pattern has nonzero probability, in
/// which case conditioning on a herald is meaningless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleProtocol {
    pub p_herald: f64,
    pub p_success: f64,
    pub fidelity: Option<f64>,
}

/// Click multiplicities a detector may report while still counting as the
/// one-detector herald.  A threshold detector cannot distinguish one photon
/// from two, so it also accepts the double-occupancy patterns.
fn click_counts(scheme: DetectionScheme) -> &'static [usize] {
    match scheme {
        DetectionScheme::Pnrd => &[1],
        DetectionScheme::Nrpd => &[1, 2],
    }
}

/// Attenuates `mode` by `eta`, skipping the identity channel: at unit
/// transmissivity the ancilla would stay in vacuum and only inflate the
/// state, so leaving it out changes nothing downstream.
fn lossy(state: FockTensor, mode: Mode, eta: f64, ancilla: Mode) -> Result<FockTensor> {
    if eta >= 1.0 {
        Ok(state)
    } else {
        state.apply_loss(mode, eta, ancilla)
    }
}

/// Maximally entangled target on the two spectator ensembles,
/// `(|0,1> + sign |1,0>) / sqrt(2)`.
fn bell_target(sign: f64) -> FockTensor {
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    FockTensor::from_components(
        &[Mode::AtomL, Mode::AtomR],
        &[2, 2],
        &[
            (&[0, 1], C64::new(inv, 0.0)),
            (&[1, 0], C64::new(sign * inv, 0.0)),
        ],
    )
}

/// State of the connection circuit just before detection.
///
/// Two ideal entangled pairs share the spectator ensembles `AtomL` and
/// `AtomR`; the two inner ensembles are read out into `Photon(0)` and
/// `Photon(1)`, suffer retrieval loss, interfere on the balanced combiner,
/// and pass through detector loss.  Loss ancillas stay in the state, keeping
/// everything a pure-state computation.
fn swap_state(module: &MeasurementModule) -> Result<FockTensor> {
    let half = C64::new(0.5, 0.0);
    let initial = FockTensor::from_components(
        &[Mode::AtomL, Mode::AtomR, Mode::Photon(0), Mode::Photon(1)],
        &[2, 2, 2, 2],
        &[
            (&[0, 1, 1, 0], half),
            (&[0, 0, 1, 1], -half),
            (&[1, 1, 0, 0], -half),
            (&[1, 0, 0, 1], half),
        ],
    );
    let state = lossy(initial, Mode::Photon(0), module.eta_c, Mode::Ancilla(0))?;
    let state = lossy(state, Mode::Photon(1), module.eta_c, Mode::Ancilla(1))?;
    let state = state.apply_5050(Mode::Photon(0), Mode::Photon(1), false)?;
    let state = lossy(state, Mode::Photon(0), module.eta_d, Mode::Ancilla(2))?;
    lossy(state, Mode::Photon(1), module.eta_d, Mode::Ancilla(3))
}

/// Runs the connection (entanglement-swapping) circuit and classifies every
/// accepted click pattern.
///
/// A click on the difference port heralds the antisymmetric Bell state on
/// the spectators, a click on the sum port the symmetric one; the success
/// weight of each pattern is its probability times the overlap with the
/// heralded target.
pub fn oracle_swap(module: &MeasurementModule) -> Result<OracleProtocol> {
    module.validate()?;
    let state = swap_state(module)?;
    let arms = [
        (Mode::Photon(0), Mode::Photon(1), bell_target(-1.0)),
        (Mode::Photon(1), Mode::Photon(0), bell_target(1.0)),
    ];
    let mut p_herald = 0.0;
    let mut p_success = 0.0;
    for (click, silent, target) in &arms {
        for &k in click_counts(module.scheme) {
            match state.measure(&[(*click, k), (*silent, 0)]) {
                Ok((p, post)) => {
                    p_herald += p;
                    p_success += p * post.fidelity_against(target)?;
                }
                Err(Error::ImpossibleOutcome) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let fidelity = (p_herald > 0.0).then(|| p_success / p_herald);
    Ok(OracleProtocol {
        p_herald,
        p_success,
        fidelity,
    })
}

/// State of the teleportation circuit just before detection.
///
/// The payload qubit `d0 |1,0> + d1 |0,1>` lives on the photonic pair
/// `Photon(1)`/`Photon(3)`.  Two ideal entangled pairs supply the receiver
/// ensembles (`AtomL`, `AtomR`) and the sender-side photons `Photon(0)` and
/// `Photon(2)`, each combiner mixing one payload rail with one pair photon.
fn teleport_state(module: &MeasurementModule, d0: C64, d1: C64) -> Result<FockTensor> {
    let modes = [
        Mode::AtomL,
        Mode::AtomR,
        Mode::Photon(0),
        Mode::Photon(1),
        Mode::Photon(2),
        Mode::Photon(3),
    ];
    let mut parts: Vec<([usize; 6], C64)> = Vec::with_capacity(8);
    for (rail, d) in [(0_usize, d0), (1_usize, d1)] {
        let (i1, i3) = if rail == 0 { (1, 0) } else { (0, 1) };
        for a in 0..2_usize {
            for b in 0..2_usize {
                let sign = if (a + b) % 2 == 0 { 0.5 } else { -0.5 };
                parts.push(([1 - a, 1 - b, a, i1, b, i3], d * sign));
            }
        }
    }
    let part_refs: Vec<(&[usize], C64)> =
        parts.iter().map(|(idx, amp)| (&idx[..], *amp)).collect();
    let mut state = FockTensor::from_components(&modes, &[2; 6], &part_refs);
    for k in 0..4_u8 {
        state = lossy(state, Mode::Photon(k), module.eta_c, Mode::Ancilla(k))?;
    }
    state = state.apply_5050(Mode::Photon(0), Mode::Photon(1), false)?;
    state = state.apply_5050(Mode::Photon(2), Mode::Photon(3), false)?;
    for k in 0..4_u8 {
        state = lossy(state, Mode::Photon(k), module.eta_d, Mode::Ancilla(4 + k))?;
    }
    Ok(state)
}

/// Runs the teleportation circuit for the payload `d0 |1,0> + d1 |0,1>` and
/// classifies every accepted click pattern.
///
/// The herald is one click in each combiner.  Matching output ports across
/// the two combiners herald the payload itself; opposite ports herald the
/// payload with the relative sign of `d1` flipped, which classical feedback
/// would undo — the oracle scores each pattern against its own target.
pub fn oracle_teleport(module: &MeasurementModule, d0: C64, d1: C64) -> Result<OracleProtocol> {
    module.validate()?;
    let norm = d0.norm_sqr() + d1.norm_sqr();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized(norm));
    }
    let state = teleport_state(module, d0, d1)?;
    let counts = click_counts(module.scheme);
    let mut p_herald = 0.0;
    let mut p_success = 0.0;
    for port_a in 0..2_usize {
        for port_b in 0..2_usize {
            let (click_a, silent_a) = match port_a {
                0 => (Mode::Photon(0), Mode::Photon(1)),
                _ => (Mode::Photon(1), Mode::Photon(0)),
            };
            let (click_b, silent_b) = match port_b {
                0 => (Mode::Photon(2), Mode::Photon(3)),
                _ => (Mode::Photon(3), Mode::Photon(2)),
            };
            let sign = if port_a == port_b { 1.0 } else { -1.0 };
            let target = FockTensor::from_components(
                &[Mode::AtomL, Mode::AtomR],
                &[2, 2],
                &[(&[1, 0], d0), (&[0, 1], d1 * sign)],
            );
            for &ka in counts {
                for &kb in counts {
                    let pattern = [
                        (click_a, ka),
                        (silent_a, 0),
                        (click_b, kb),
                        (silent_b, 0),
                    ];
                    match state.measure(&pattern) {
                        Ok((p, post)) => {
                            p_herald += p;
                            p_success += p * post.fidelity_against(&target)?;
                        }
                        Err(Error::ImpossibleOutcome) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    let fidelity = (p_herald > 0.0).then(|| p_success / p_herald);
    Ok(OracleProtocol {
        p_herald,
        p_success,
        fidelity,
    })
}
