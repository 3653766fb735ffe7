//! Free energy of the A-modes,
//! `F_A(theta) = sum_k omega_k sinh^2(theta_k) - (1/beta) <S_A>(theta)`,
//! and its stationary point.

use super::entropy::entropy_closed_form;
use super::mode::ModeSpec;
use crate::error::{Error, Result};

/// Bracket used for the stationary-angle bisection.
pub const BRACKET: (f64, f64) = (1e-8, 20.0);

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}

/// `F_A` from the closed-form expectations of every mode.
pub fn free_energy(modes: &[ModeSpec], beta: f64) -> Result<f64> {
    positive("beta", beta)?;
    let mut f = 0.0;
    for m in modes {
        m.validate()?;
        f += mode_free_energy(m.theta, beta, m.omega);
    }
    Ok(f)
}

/// Single-mode `omega sinh^2(theta) - S(theta) / beta`.
pub fn mode_free_energy(theta: f64, beta: f64, omega: f64) -> f64 {
    omega * theta.sinh().powi(2) - entropy_closed_form(theta) / beta
}

/// `ln coth(theta) = 2 artanh(e^{-2 theta})`, accurate for large theta.
fn ln_coth(theta: f64) -> f64 {
    2.0 * (-2.0 * theta).exp().atanh()
}

/// Sign-carrying factor of `dF/dtheta = sinh(2 theta) [omega - (2/beta) ln coth(theta)]`.
fn gradient_factor(theta: f64, beta: f64, omega: f64) -> f64 {
    omega - 2.0 / beta * ln_coth(theta)
}

/// `dF_A/dtheta` of one mode.
pub fn free_energy_gradient(theta: f64, beta: f64, omega: f64) -> f64 {
    (2.0 * theta).sinh() * gradient_factor(theta, beta, omega)
}

/// Minimizer of the single-mode free energy, by bisection on the sign of
/// `dF/dtheta` in [`BRACKET`]. At low temperature the root lies below the
/// bracket; the lower end is then moved down until it brackets the root.
pub fn stationary_theta(beta: f64, omega: f64) -> Result<f64> {
    positive("beta", beta)?;
    positive("omega", omega)?;
    let (mut lo, mut hi) = BRACKET;
    let g = |t: f64| gradient_factor(t, beta, omega);
    if g(hi) <= 0.0 {
        return Err(Error::NoBracket { lo, hi });
    }
    while g(lo) > 0.0 {
        lo *= 1e-3;
        if lo < 1e-300 {
            return Err(Error::NoBracket { lo, hi });
        }
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bose-Einstein occupancy `1 / (e^{beta omega} - 1)`.
pub fn bose_occupation(beta: f64, omega: f64) -> f64 {
    1.0 / (beta * omega).exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stationary_angle_is_bose() {
        for (beta, omega) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.3)] {
            let t = stationary_theta(beta, omega).unwrap();
            assert!((t.sinh().powi(2) - bose_occupation(beta, omega)).abs() < 1e-10);
        }
        let t = stationary_theta(1.0, 1.0).unwrap();
        assert!((t.sinh().powi(2) - 0.581_976_7).abs() < 1e-7);
    }

    #[test]
    fn zero_temperature_limit() {
        let t = stationary_theta(50.0, 1.0).unwrap();
        assert!(t < 1e-10 && t > 0.0);
    }

    #[test]
    fn stationary_point_is_minimum() {
        let t = stationary_theta(1.0, 1.0).unwrap();
        let h = 1e-4;
        let f = |x| mode_free_energy(x, 1.0, 1.0);
        let second = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
        assert!(second > 0.0);
        assert!(free_energy_gradient(t, 1.0, 1.0).abs() < 1e-9);
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let h = 1e-6;
        for t in [0.2, 0.7, 1.3] {
            let fd =
                (mode_free_energy(t + h, 0.8, 1.5) - mode_free_energy(t - h, 0.8, 1.5)) / (2.0 * h);
            assert!((fd - free_energy_gradient(t, 0.8, 1.5)).abs() < 1e-7);
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(stationary_theta(0.0, 1.0).is_err());
        assert!(stationary_theta(1.0, -1.0).is_err());
        assert!(free_energy(&[], -2.0).is_err());
    }
}
