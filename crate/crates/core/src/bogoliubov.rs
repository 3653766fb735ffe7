//! Bogoliubov pairs built from the deformed coproduct.
//!
//! With `q = e^{2 theta}` the normalized coproduct and its theta-derivative
//!
//! ```text
//! alpha_q(theta) = (e^theta a1 + e^-theta a2) / sqrt([2]_q)
//! beta_q(theta)  = (e^theta a1 - e^-theta a2) / sqrt([2]_q)
//! ```
//!
//! are combined into
//!
//! ```text
//! alpha(theta) = sqrt([2]_q)/(2 sqrt 2) [alpha_q(theta) + alpha_q(-theta) - beta_q(theta)^+ + beta_q(-theta)^+]
//! beta(theta)  = sqrt([2]_q)/(2 sqrt 2) [beta_q(theta) + beta_q(-theta) - alpha_q(theta)^+ + alpha_q(-theta)^+]
//! ```
//!
//! and `A(theta) = (alpha + beta)/sqrt 2`, `B(theta) = (alpha - beta)/sqrt 2`.
//!
//! The dagger `^+` above is the *twisted* adjoint (adjoint followed by the
//! exchange of the two factors). With the plain adjoint the combination
//! gives `A(theta) = a1 cosh(theta) - a1^dag sinh(theta)`, which mixes a mode
//! with itself. The twisted adjoint gives the two-mode form
//!
//! ```text
//! A(theta) = a1 cosh(theta) - a2^dag sinh(theta)
//! B(theta) = a2 cosh(theta) - a1^dag sinh(theta)
//! ```
//!
//! and [`make_pair`] checks that both routes agree. The pair is generated by
//! `G = -i (a1^dag a2^dag - a1 a2)`: `-i dA/dtheta = [G, A(theta)]` and
//! `exp(i t G) A(theta) exp(-i t G) = A(theta + t)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{matrix_exp, truncation_tail, Operator, SpaceDescriptor};
use crate::hopf::{coproduct_deformed_a, fundamental_pair, q_number, DeformationParameter};

/// Agreement required between the combination and closed forms.
pub const FORM_TOL: f64 = 1e-12;

/// Default tolerance for theta translations on the low sub-block.
pub const TRANSLATION_TOL: f64 = 1e-6;

/// Two-mode space with factors `A` and `B` at a common cutoff.
pub fn pair_space(cutoff: usize) -> Result<SpaceDescriptor> {
    SpaceDescriptor::new([("A", cutoff), ("B", cutoff)])
}

/// Ladder operators of the two factors.
#[derive(Debug, Clone)]
pub struct Ladders {
    pub a1: Operator,
    pub a2: Operator,
    pub a1_dag: Operator,
    pub a2_dag: Operator,
}

impl Ladders {
    pub fn new(space: &SpaceDescriptor) -> Result<Self> {
        let (r1, r2) = fundamental_pair(space)?;
        Ok(Self {
            a1: r1.a,
            a2: r2.a,
            a1_dag: r1.a_dag,
            a2_dag: r2.a_dag,
        })
    }

    /// `c1 a1 + c2 a2 + d1 a1^dag + d2 a2^dag` with real coefficients.
    fn combine(&self, c1: f64, c2: f64, d1: f64, d2: f64) -> Operator {
        let mut out = self.a1.scale_real(c1);
        for (op, c) in [(&self.a2, c2), (&self.a1_dag, d1), (&self.a2_dag, d2)] {
            if c != 0.0 {
                out = &out + &op.scale_real(c);
            }
        }
        out
    }
}

fn sqrt_two_q(theta: f64) -> f64 {
    q_number(2.0, DeformationParameter::from_theta(theta))
        .re
        .sqrt()
}

/// `alpha_q(theta) = Delta a_q / sqrt([2]_q)`.
pub fn alpha_q(space: &SpaceDescriptor, theta: f64) -> Result<Operator> {
    let q = DeformationParameter::from_theta(theta);
    Ok(coproduct_deformed_a(q, space)?.scale_real(1.0 / sqrt_two_q(theta)))
}

/// `beta_q(theta)`: theta-derivative of the coproduct numerator, normalized
/// afterwards.
pub fn beta_q(space: &SpaceDescriptor, theta: f64) -> Result<Operator> {
    let l = Ladders::new(space)?;
    let n = sqrt_two_q(theta);
    Ok(l.combine(theta.exp() / n, -(-theta).exp() / n, 0.0, 0.0))
}

fn combination(
    first: impl Fn(f64) -> Result<Operator>,
    second: impl Fn(f64) -> Result<Operator>,
    theta: f64,
) -> Result<Operator> {
    let sum = &first(theta)? + &first(-theta)?;
    let twisted = &second(-theta)?.twisted_adjoint()? - &second(theta)?.twisted_adjoint()?;
    Ok((&sum + &twisted).scale_real(sqrt_two_q(theta) / (2.0 * std::f64::consts::SQRT_2)))
}

/// `alpha(theta)` from the coproduct combination with twisted adjoints.
pub fn alpha(space: &SpaceDescriptor, theta: f64) -> Result<Operator> {
    combination(|t| alpha_q(space, t), |t| beta_q(space, t), theta)
}

/// `beta(theta)` from the coproduct combination with twisted adjoints.
pub fn beta(space: &SpaceDescriptor, theta: f64) -> Result<Operator> {
    combination(|t| beta_q(space, t), |t| alpha_q(space, t), theta)
}

/// `A(theta) = a1 cosh(theta) - a2^dag sinh(theta)`.
pub fn closed_a(space: &SpaceDescriptor, theta: f64) -> Result<Operator> {
    Ok(Ladders::new(space)?.combine(theta.cosh(), 0.0, 0.0, -theta.sinh()))
}

/// `B(theta) = a2 cosh(theta) - a1^dag sinh(theta)`.
pub fn closed_b(space: &SpaceDescriptor, theta: f64) -> Result<Operator> {
    Ok(Ladders::new(space)?.combine(0.0, theta.cosh(), -theta.sinh(), 0.0))
}

/// `G = -i (a1^dag a2^dag - a1 a2)`.
pub fn generator(space: &SpaceDescriptor) -> Result<Operator> {
    let l = Ladders::new(space)?;
    let pair = &(&l.a1_dag * &l.a2_dag) - &(&l.a1 * &l.a2);
    Ok(pair.scale(Complex64::new(0.0, -1.0)))
}

/// `A(theta)`, `B(theta)` and their generator on a two-mode space.
#[derive(Debug, Clone)]
pub struct BogoliubovPair {
    pub theta: f64,
    pub a_theta: Operator,
    pub b_theta: Operator,
    pub generator: Operator,
    /// Largest deviation between the coproduct combination and the closed
    /// cosh/sinh form, over both operators.
    pub form_deviation: f64,
}

/// Builds the pair by both routes and requires agreement within
/// [`FORM_TOL`]. The stored operators are the closed forms, so `A(0) = a1`
/// exactly.
pub fn make_pair(space: &SpaceDescriptor, theta: f64) -> Result<BogoliubovPair> {
    if !theta.is_finite() {
        return Err(Error::NonFinite {
            name: "theta",
            value: theta,
        });
    }
    let al = alpha(space, theta)?;
    let be = beta(space, theta)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let a_comb = (&al + &be).scale_real(s);
    let b_comb = (&al - &be).scale_real(s);
    let a_theta = closed_a(space, theta)?;
    let b_theta = closed_b(space, theta)?;
    let form_deviation = a_comb.deviation(&a_theta)?.max(b_comb.deviation(&b_theta)?);
    if !(form_deviation < FORM_TOL) {
        return Err(Error::TwistedAdjointMismatch {
            deviation: form_deviation,
        });
    }
    Ok(BogoliubovPair {
        theta,
        a_theta,
        b_theta,
        generator: generator(space)?,
        form_deviation,
    })
}

impl BogoliubovPair {
    pub fn space(&self) -> &SpaceDescriptor {
        self.a_theta.space()
    }

    /// Largest residual of the canonical relations `[A, A^dag] = [B, B^dag] = 1`
    /// and `[A, B] = [A, B^dag] = 0` below `cutoff - 1`.
    pub fn ccr_residual(&self) -> Result<f64> {
        let space = self.space();
        let low = space.low_indices(2);
        let one = Operator::identity(space);
        let zero = Operator::zeros(space);
        let (a, b) = (&self.a_theta, &self.b_theta);
        let checks = [
            (a.commutator(&a.adjoint())?, &one),
            (b.commutator(&b.adjoint())?, &one),
            (a.commutator(b)?, &zero),
            (a.commutator(&b.adjoint())?, &zero),
        ];
        let mut worst = 0.0f64;
        for (lhs, rhs) in &checks {
            worst = worst.max(lhs.deviation_on(rhs, &low)?);
        }
        Ok(worst)
    }

    /// `|| -i dA/dtheta - [G, A(theta)] ||` below `cutoff - 1`, with the
    /// derivative taken by central difference of step `step`.
    pub fn derivative_residual(&self, step: f64) -> Result<f64> {
        let space = self.space();
        let forward = closed_a(space, self.theta + step)?;
        let backward = closed_a(space, self.theta - step)?;
        let derivative = (&forward - &backward).scale(Complex64::new(0.0, -0.5 / step));
        let bracket = self.generator.commutator(&self.a_theta)?;
        derivative.deviation_on(&bracket, &space.low_indices(2))
    }
}

/// Basis indices on which translated operators are compared: every
/// occupation at most a third of the cutoff.
///
/// Conjugation by `exp(i t G)` spreads the truncation error at the top level
/// downwards; at a third of the cutoff it is still far below the tolerance.
pub fn translation_block(space: &SpaceDescriptor) -> Vec<usize> {
    let cutoff = space.factors().iter().map(|f| f.cutoff).min().unwrap_or(0);
    space.indices_with_max_occupation(cutoff / 3)
}

/// `exp(i t G) X exp(-i t G)`.
pub fn conjugate_by_generator(generator: &Operator, t: f64, x: &Operator) -> Result<Operator> {
    let u = matrix_exp(&generator.scale(Complex64::new(0.0, t)))?;
    u.compose(x)?.compose(&u.adjoint())
}

/// Translates the pair by `theta_bar` through conjugation with
/// `exp(i theta_bar G)` and compares against the closed form at
/// `theta + theta_bar` on [`translation_block`].
pub fn translate(pair: &BogoliubovPair, theta_bar: f64, tolerance: f64) -> Result<BogoliubovPair> {
    let space = pair.space();
    let u = matrix_exp(&pair.generator.scale(Complex64::new(0.0, theta_bar)))?;
    let u_dag = u.adjoint();
    let a_theta = u.compose(&pair.a_theta)?.compose(&u_dag)?;
    let b_theta = u.compose(&pair.b_theta)?.compose(&u_dag)?;
    let theta = pair.theta + theta_bar;
    let block = translation_block(space);
    let deviation = a_theta
        .deviation_on(&closed_a(space, theta)?, &block)?
        .max(b_theta.deviation_on(&closed_b(space, theta)?, &block)?);
    if !(deviation < tolerance) {
        let cutoff = space.factors()[0].cutoff;
        return Err(Error::TranslationBreach {
            deviation,
            tolerance,
            tail: truncation_tail(pair.theta.abs() + theta_bar.abs(), cutoff),
        });
    }
    Ok(BogoliubovPair {
        theta,
        a_theta,
        b_theta,
        generator: pair.generator.clone(),
        form_deviation: pair.form_deviation,
    })
}

/// `[G, N_A - N_B]` on the full truncated space, largest entry.
pub fn number_difference_residual(space: &SpaceDescriptor) -> Result<f64> {
    let labels: Vec<String> = space.factors().iter().map(|f| f.label.clone()).collect();
    let diff = &Operator::number(space, &labels[0])? - &Operator::number(space, &labels[1])?;
    Ok(generator(space)?.commutator(&diff)?.max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_zero_forms() {
        let s = pair_space(4).unwrap();
        let l = Ladders::new(&s).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = (&l.a1 + &l.a2).scale_real(h);
        let minus = (&l.a1 - &l.a2).scale_real(h);
        assert!(alpha_q(&s, 0.0).unwrap().deviation(&plus).unwrap() < 1e-15);
        assert!(beta_q(&s, 0.0).unwrap().deviation(&minus).unwrap() < 1e-15);
        assert!(alpha(&s, 0.0).unwrap().deviation(&plus).unwrap() < 1e-15);
        assert!(beta(&s, 0.0).unwrap().deviation(&minus).unwrap() < 1e-15);
        let p = make_pair(&s, 0.0).unwrap();
        assert_eq!(p.a_theta, l.a1);
        assert_eq!(p.b_theta, l.a2);
    }

    #[test]
    fn alpha_q_readout() {
        let s = pair_space(3).unwrap();
        let aq = alpha_q(&s, 0.5).unwrap();
        let scaled = aq.element(&[0, 0], &[1, 0]).unwrap().re * sqrt_two_q(0.5);
        assert!((scaled - 0.5f64.exp()).abs() < 1e-14);
        assert!((scaled - 1.648_721_27).abs() < 1e-8);
    }

    #[test]
    fn alpha_q_ccr_is_one() {
        let s = pair_space(6).unwrap();
        for th in [-1.0, 0.3, 0.5] {
            let aq = alpha_q(&s, th).unwrap();
            let c = aq.commutator(&aq.adjoint()).unwrap();
            let dev = c
                .deviation_on(&Operator::identity(&s), &s.low_indices(2))
                .unwrap();
            assert!(dev < 1e-12);
        }
    }

    #[test]
    fn alpha_beta_canonical() {
        let s = pair_space(8).unwrap();
        let al = alpha(&s, 0.5).unwrap();
        let be = beta(&s, 0.5).unwrap();
        let low = s.low_indices(2);
        let one = Operator::identity(&s);
        let zero = Operator::zeros(&s);
        assert!(
            al.commutator(&al.adjoint())
                .unwrap()
                .deviation_on(&one, &low)
                .unwrap()
                < 1e-10
        );
        assert!(
            al.commutator(&be)
                .unwrap()
                .deviation_on(&zero, &low)
                .unwrap()
                < 1e-10
        );
        assert!(
            al.commutator(&be.adjoint())
                .unwrap()
                .deviation_on(&zero, &low)
                .unwrap()
                < 1e-10
        );
    }

    #[test]
    fn plain_adjoint_gives_single_mode_mixing() {
        // the reading rejected in favour of the twisted adjoint
        let s = pair_space(4).unwrap();
        let th: f64 = 0.5;
        let c = sqrt_two_q(th) / (2.0 * std::f64::consts::SQRT_2);
        let plain = |f: &dyn Fn(f64) -> Operator, g: &dyn Fn(f64) -> Operator| {
            let sum = &f(th) + &f(-th);
            let d = &g(-th).adjoint() - &g(th).adjoint();
            (&sum + &d).scale_real(c)
        };
        let aq = |t| alpha_q(&s, t).unwrap();
        let bq = |t| beta_q(&s, t).unwrap();
        let a = (&plain(&aq, &bq) + &plain(&bq, &aq)).scale_real(std::f64::consts::FRAC_1_SQRT_2);
        let l = Ladders::new(&s).unwrap();
        let want = l.combine(th.cosh(), 0.0, -th.sinh(), 0.0);
        assert!(a.deviation(&want).unwrap() < 1e-14);
    }

    #[test]
    fn pair_readout() {
        let s = pair_space(3).unwrap();
        let p = make_pair(&s, 0.5).unwrap();
        let c1 = p.a_theta.element(&[0, 0], &[1, 0]).unwrap().re;
        let c2 = p.a_theta.element(&[0, 1], &[0, 0]).unwrap().re;
        assert!((c1 - 1.127_625_965).abs() < 1e-9);
        assert!((c2 + 0.521_095_305).abs() < 1e-9);
        assert!(p.form_deviation < FORM_TOL);
    }

    #[test]
    fn generator_is_hermitian_and_conserves_difference() {
        let s = pair_space(10).unwrap();
        assert!(generator(&s).unwrap().hermiticity_residual() < 1e-12);
        assert!(number_difference_residual(&s).unwrap() < 1e-12);
    }

    #[test]
    fn derivative_matches_commutator() {
        let s = pair_space(12).unwrap();
        let p = make_pair(&s, 0.5).unwrap();
        assert!(p.derivative_residual(1e-5).unwrap() < 1e-8);
    }

    #[test]
    fn translation_by_zero_is_identity() {
        let s = pair_space(6).unwrap();
        let p = make_pair(&s, 0.2).unwrap();
        let t = translate(&p, 0.0, 1e-12).unwrap();
        assert!(t.a_theta.deviation(&p.a_theta).unwrap() < 1e-14);
    }

    #[test]
    fn translation_breach_reports_tail() {
        let s = pair_space(4).unwrap();
        let p = make_pair(&s, 0.5).unwrap();
        match translate(&p, 1.0, 1e-14) {
            Err(Error::TranslationBreach { tail, .. }) => {
                assert!((tail - truncation_tail(1.5, 4)).abs() < 1e-15)
            }
            other => panic!("expected breach, got {other:?}"),
        }
    }
}
