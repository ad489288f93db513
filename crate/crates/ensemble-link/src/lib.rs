//! Performance model for heralded entanglement between atomic-ensemble
//! quantum memories.
//!
//! The crate computes the figures of merit of a memory-to-memory link —
//! heralding probability, post-herald fidelity, and success probability —
//! from closed-form expressions derived via the Gaussian (covariance-matrix)
//! description of the optical fields, and cross-checks every one of them
//! against a brute-force photon-number-basis enumeration that shares no code
//! with the closed forms.
//!
//! Modules:
//!
//! - [`source`]: pump-parameter to emission-amplitude mapping for a single
//!   ensemble.
//! - [`channel`]: link parameters (two sources, channel and detector
//!   efficiencies) and the covariance matrix of the eight optical
//!   quadratures at the measurement plane.
//! - [`gaussian`]: moment calculus on that covariance matrix.
//! - [`herald`]: closed-form heralding and fidelity metrics for both
//!   photon-number-resolving and threshold detection, including optimal
//!   target states and dephasing averages.
//! - [`protocols`]: entanglement connection (swapping) and teleportation
//!   built on heralded links.
//! - [`oracle`]: independent truncated number-basis oracles for all of the
//!   above.
//! - [`mitnu`]: an alternative trapped-atom/parametric-source architecture
//!   evaluated under the same metrics, plus side-by-side throughput scans.
//!
//! ```
//! use ensemble_link::channel::SymmetricParams;
//! use ensemble_link::herald::{self, DetectionScheme};
//!
//! let link = SymmetricParams { p_c: 0.01, eta_s: 1.0 };
//! let p = herald::symmetric_heralding_probability(&link, DetectionScheme::Pnrd)?;
//! let f = herald::symmetric_fidelity(&link, DetectionScheme::Pnrd)?;
//! assert!((p - 0.009801).abs() < 1e-15);
//! assert_eq!(f, 1.0);
//! # Ok::<(), ensemble_link::Error>(())
//! ```

pub mod channel;
pub mod error;
pub mod gaussian;
pub mod herald;
pub mod mat8;
pub mod mitnu;
pub mod oracle;
pub mod protocols;
pub mod source;

pub use channel::{ChannelParams, SymmetricParams};
pub use error::{Error, Result};
pub use herald::{DetectionScheme, Detector, HeraldReport, OptimalState};
pub use mitnu::{MitNuMetrics, MitNuParams};
pub use protocols::{MeasurementModule, ProtocolReport};
pub use source::{PumpParams, SourceState};
