//! Theta-vacua and their thermodynamics: pair and four-mode vacua, overlaps,
//! the entropy operator, the free energy and pair-sector weights.
//!
//! Multimode vacua are products of independent per-mode states; global
//! overlaps, entropies and weights are assembled from per-mode values.

mod entanglement;
mod entropy;
mod free_energy;
mod mode;
mod vacuum;
mod weights;

pub use entanglement::{entanglement_report, SCHMIDT_REL_TOL};
pub use entropy::{
    entanglement_entropy, entropy_closed_form, entropy_expectation, entropy_gradient_relation,
    entropy_on_state, entropy_operator, entropy_operator_local, GradientResidual, Sector,
    GRADIENT_STEP,
};
pub use free_energy::{
    bose_occupation, free_energy, free_energy_gradient, mode_free_energy, stationary_theta, BRACKET,
};
pub use mode::ModeSpec;
pub use vacuum::{
    mode_pair_space, mode_quartet_space, overlap, overlap_per_mode, overlap_scan, pair_amplitudes,
    vacuum_closed, vacuum_closed_pair, vacuum_exponential, vacuum_exponential_with_tail,
    vacuum_four_mode, vacuum_four_mode_with_tail, Construction, Layout, OverlapScan, ThetaVacuum,
};
pub use weights::{weights, WeightDistribution, MAX_ENTRIES};
