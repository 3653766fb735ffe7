//! The entropy operator
//!
//! ```text
//! S_A = -sum_k { A_k^dag A_k ln sinh^2(theta_k) - A_k A_k^dag ln cosh^2(theta_k) }
//! ```
//!
//! (and `S_B` with `B_k`), with the second term in the `A A^dag` ordering as
//! written, truncated like every other product of ladder operators.

use num_complex::Complex64;

use super::mode::ModeSpec;
use super::vacuum::{mode_pair_space, raw_pair_state, Layout, ThetaVacuum};
use crate::error::{Error, Result};
use crate::fock::{local_annihilator, partial_trace, Operator, SpaceDescriptor, StateVector};

/// Which member of each pair an entropy operator refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    A,
    B,
}

impl Sector {
    pub fn position(self) -> usize {
        match self {
            Sector::A => 0,
            Sector::B => 1,
        }
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta == 0.0 {
        Err(Error::DegenerateTheta)
    } else {
        Ok(())
    }
}

/// `-(a^dag a ln sinh^2 - a a^dag ln cosh^2)` on a single mode with the
/// given cutoff.
pub fn entropy_operator_local(theta: f64, cutoff: usize) -> Result<Operator> {
    check_theta(theta)?;
    let a = local_annihilator(cutoff);
    let a_dag = a.adjoint();
    let ln_s2 = theta.sinh().powi(2).ln();
    let ln_c2 = theta.cosh().powi(2).ln();
    Ok(&(&a * &a_dag).scale_real(ln_c2) - &(&a_dag * &a).scale_real(ln_s2))
}

/// `S_A` or `S_B` on the product of the per-mode pair spaces.
pub fn entropy_operator(modes: &[ModeSpec], cutoffs: &[usize], sector: Sector) -> Result<Operator> {
    if modes.is_empty() || modes.len() != cutoffs.len() {
        return Err(Error::EmptySpace);
    }
    let mut spaces = Vec::with_capacity(modes.len());
    for (m, &n) in modes.iter().zip(cutoffs) {
        spaces.push(mode_pair_space(&m.label, n)?);
    }
    let space = spaces[1..]
        .iter()
        .try_fold(spaces[0].clone(), |acc, s| acc.product(s))?;
    let mut total = Operator::zeros(&space);
    for (k, (m, &n)) in modes.iter().zip(cutoffs).enumerate() {
        let local = entropy_operator_local(m.theta, n)?;
        let embedded = Operator::local_product(&space, &[(2 * k + sector.position(), &local)])?;
        total = &total + &embedded;
    }
    Ok(total)
}

/// `cosh^2 ln cosh^2 - sinh^2 ln sinh^2`, the vacuum expectation of one
/// mode's entropy operator; `0` at `theta = 0`.
pub fn entropy_closed_form(theta: f64) -> f64 {
    if theta == 0.0 {
        return 0.0;
    }
    let c2 = theta.cosh().powi(2);
    let s2 = theta.sinh().powi(2);
    c2 * c2.ln() - s2 * s2.ln()
}

/// `<0(theta)| S_sector |0(theta)>`, summed over modes. Pair layout only.
pub fn entropy_expectation(vacuum: &ThetaVacuum, sector: Sector) -> Result<f64> {
    if vacuum.layout() != Layout::Pair {
        return Err(Error::LayoutMismatch);
    }
    let mut total = 0.0;
    for (k, m) in vacuum.modes().iter().enumerate() {
        let s = entropy_operator_local(m.theta, vacuum.cutoffs()[k])?;
        total += vacuum
            .mode_state(k)
            .expectation_local(sector.position(), &s)?
            .re;
    }
    Ok(total)
}

/// Von Neumann entropy of the A-side reduced state, summed over modes.
pub fn entanglement_entropy(vacuum: &ThetaVacuum) -> Result<f64> {
    let keep: Vec<usize> = match vacuum.layout() {
        Layout::Pair => vec![0],
        Layout::FourMode => vec![0, 1],
    };
    let mut total = 0.0;
    for psi in vacuum.states() {
        total += partial_trace(psi, &keep)?.von_neumann_entropy();
    }
    Ok(total)
}

/// Residuals of the theta-derivative of the pair vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientResidual {
    /// `|| d/dtheta |0> + (1/2)(dS_A/dtheta) |0> ||`
    pub entropy: f64,
    /// `|| d/dtheta |0> - (A^dag B^dag - A B) |0> ||`
    pub generator: f64,
}

/// Central-difference step for the theta-derivative of the vacuum.
pub const GRADIENT_STEP: f64 = 1e-5;

/// Compares the finite-difference derivative of the closed-form vacuum with
/// the analytic operator derivative of `S_A` and with the pair generator.
pub fn entropy_gradient_relation(theta: f64, cutoff: usize) -> Result<GradientResidual> {
    check_theta(theta)?;
    let space = SpaceDescriptor::new([("A", cutoff), ("B", cutoff)])?;
    let psi = raw_pair_state(&space, theta)?;
    let h = GRADIENT_STEP;
    let derivative = raw_pair_state(&space, theta + h)?
        .minus(&raw_pair_state(&space, theta - h)?)?
        .scale(Complex64::new(0.5 / h, 0.0));

    // -(1/2) dS_A/dtheta = A^dag A coth - A A^dag tanh
    let a = local_annihilator(cutoff);
    let a_dag = a.adjoint();
    let half_gradient =
        &(&a_dag * &a).scale_real(1.0 / theta.tanh()) - &(&a * &a_dag).scale_real(theta.tanh());
    let predicted = psi.apply_local(0, &half_gradient)?;
    let entropy = derivative.minus(&predicted)?.norm();

    let pair_up = psi.apply_local(1, &a_dag)?.apply_local(0, &a_dag)?;
    let pair_down = psi.apply_local(1, &a)?.apply_local(0, &a)?;
    let generated = pair_up.minus(&pair_down)?;
    let generator = derivative.minus(&generated)?.norm();
    Ok(GradientResidual { entropy, generator })
}

/// `<psi| S_A |psi>` for a single-mode pair state, with `S_A` built for
/// angle `theta`.
pub fn entropy_on_state(psi: &StateVector, theta: f64, sector: Sector) -> Result<f64> {
    let cutoff = psi.space().factors()[sector.position()].cutoff;
    let s = entropy_operator_local(theta, cutoff)?;
    Ok(psi.expectation_local(sector.position(), &s)?.re)
}
