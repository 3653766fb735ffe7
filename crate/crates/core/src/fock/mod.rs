//! Truncated bosonic Fock spaces and the dense linear algebra built on them.
//!
//! Each mode is truncated at a cutoff `n_max`; on that space `[a, a^dag]` is
//! the identity except on the top level `|n_max>`, where it is `-n_max`.
//! Identities that involve commutators are therefore checked on low
//! sub-blocks (see [`SpaceDescriptor::low_indices`]).

mod density;
mod expm;
mod operator;
pub mod serial;
mod space;
mod state;

use num_complex::Complex64;

pub use density::{
    partial_trace, schmidt_coefficients, schmidt_rank, von_neumann_entropy, DensityMatrix,
    EIGEN_CLAMP,
};
pub use expm::matrix_exp;
pub use operator::{local_annihilator, Operator};
pub use space::{Factor, SpaceDescriptor};
pub use state::StateVector;

use crate::error::Result;

pub fn make_space<S: Into<String>>(
    modes: impl IntoIterator<Item = (S, usize)>,
) -> Result<SpaceDescriptor> {
    SpaceDescriptor::new(modes)
}

pub fn annihilator(space: &SpaceDescriptor, label: &str) -> Result<Operator> {
    Operator::annihilator(space, label)
}

pub fn adjoint(op: &Operator) -> Operator {
    op.adjoint()
}

pub fn twisted_adjoint(op: &Operator) -> Result<Operator> {
    op.twisted_adjoint()
}

pub fn embed(op: &Operator, space: &SpaceDescriptor, position: usize) -> Result<Operator> {
    Operator::embed(op, space, position)
}

pub fn commutator(x: &Operator, y: &Operator) -> Result<Operator> {
    x.commutator(y)
}

pub fn apply(op: &Operator, state: &StateVector) -> Result<StateVector> {
    op.apply(state)
}

pub fn inner(x: &StateVector, y: &StateVector) -> Result<Complex64> {
    x.inner(y)
}

pub fn expectation(state: &StateVector, op: &Operator) -> Result<Complex64> {
    state.expectation(op)
}

/// Weight discarded by truncating a two-mode squeezed vacuum of angle
/// `theta` at `cutoff`: `sum_{n > cutoff} tanh^{2n} / cosh^2 = tanh^{2(cutoff+1)}`.
pub fn truncation_tail(theta: f64, cutoff: usize) -> f64 {
    theta.tanh().powi(2).powi(cutoff as i32 + 1)
}

/// Smallest cutoff whose truncation tail is below `eps`.
pub fn cutoff_for_tail(theta: f64, eps: f64) -> usize {
    let t2 = theta.tanh().powi(2);
    if t2 == 0.0 {
        return 1;
    }
    let mut n = ((eps.ln() / t2.ln()).ceil() as usize)
        .saturating_sub(1)
        .max(1);
    while truncation_tail(theta, n) >= eps {
        n += 1;
    }
    while n > 1 && truncation_tail(theta, n - 1) < eps {
        n -= 1;
    }
    n
}

/// Default truncation tail bound.
pub const DEFAULT_TAIL: f64 = 1e-12;
