//! Shared fixtures for the criterion benchmarks of the metrics library.

use ensemble_link::channel::ChannelParams;
use ensemble_link::herald::DetectionScheme;
use ensemble_link::protocols::MeasurementModule;

/// Moderately asymmetric link exercising every parameter of the closed
/// forms and the enumeration.
pub fn reference_link() -> ChannelParams {
    ChannelParams {
        p_c_l: 0.05,
        p_c_r: 0.12,
        theta_l: 0.8,
        theta_r: -0.5,
        eta_l: 0.85,
        eta_r: 0.55,
        eta_1: 0.9,
        eta_2: 0.65,
    }
}

/// Mid-efficiency measurement module, lossy at both stages so the protocol
/// circuits keep every ancilla.
pub fn reference_module(scheme: DetectionScheme) -> MeasurementModule {
    MeasurementModule {
        eta_c: 0.8,
        eta_d: 0.75,
        scheme,
    }
}
