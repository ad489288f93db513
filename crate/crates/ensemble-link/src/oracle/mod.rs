//! Brute-force truncated Fock-space oracle.
//!
//! Everything in this module is deliberately independent of the Gaussian
//! closed forms in the rest of the crate: states are photon-number tensors,
//! loss is a beam splitter against an explicit vacuum ancilla, and detection
//! enumerates joint photon-count outcomes. The only shared vocabulary is the
//! parameter structs. Agreement between the two routes, within the geometric
//! truncation tail, is what the cross-validation suite certifies.

mod distribution;
mod protocols;
mod tensor;

pub use distribution::{oracle_distribution, tail_bound, OracleDistribution, MAX_DEPTH};
pub use protocols::{oracle_swap, oracle_teleport, OracleProtocol};
pub use tensor::{build_tms, Mode, ModeMap, FockTensor};
