//! The Weyl-Heisenberg Hopf algebra `h(1)` and its deformation `h_q(1)`.
//!
//! `h(1)` is generated by `{a, a^dag, H, N}` with
//!
//! ```text
//! [a, a^dag] = 2H,  [N, a] = -a,  [N, a^dag] = a^dag,  [H, .] = 0
//! ```
//!
//! and Casimir `C = 2NH - a^dag a`. The deformation replaces `2H` by the
//! q-number `[2H]_q`, with `[x]_q = (q^x - q^-x) / (q - q^-1)`, and deforms
//! the coproduct of the ladder operators to
//! `Delta a_q = a_q (x) q^H + q^-H (x) a_q`.
//!
//! `H` is central, so every realization here carries it as a scalar central
//! value `h`; `q^H` legs are the scalars `q^{+-h}`. The fundamental
//! realization is `h = 1/2`, where `C = 0` and `h(1)` and `h_q(1)` coincide.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{Operator, SpaceDescriptor};

/// Tolerance for accepting `|q| = 1`.
const UNIT_TOL: f64 = 1e-12;

/// Deformation parameter `q`, real (nonzero) or of unit modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParameter {
    q: Complex64,
}

impl DeformationParameter {
    pub fn new(q: Complex64) -> Result<Self> {
        let finite = q.re.is_finite() && q.im.is_finite();
        let real = q.im == 0.0 && q.re != 0.0;
        let unit = (q.norm() - 1.0).abs() <= UNIT_TOL;
        if finite && (real || unit) {
            Ok(Self { q })
        } else {
            Err(Error::InvalidDeformation { re: q.re, im: q.im })
        }
    }

    /// `q = e^{2 theta}`.
    pub fn from_theta(theta: f64) -> Self {
        Self {
            q: Complex64::new((2.0 * theta).exp(), 0.0),
        }
    }

    pub fn real(q: f64) -> Result<Self> {
        Self::new(Complex64::new(q, 0.0))
    }

    /// `q = e^{i phase}`.
    pub fn unit(phase: f64) -> Self {
        Self {
            q: Complex64::from_polar(1.0, phase),
        }
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// `theta = ln(q) / 2` when `q` is real and positive.
    pub fn theta(&self) -> Option<f64> {
        (self.q.im == 0.0 && self.q.re > 0.0).then(|| 0.5 * self.q.re.ln())
    }

    /// `1/q`.
    pub fn inverse(&self) -> Self {
        Self { q: self.q.inv() }
    }

    /// Principal power `q^x`.
    pub fn pow(&self, x: f64) -> Complex64 {
        if self.q.im == 0.0 && self.q.re > 0.0 {
            Complex64::new(self.q.re.powf(x), 0.0)
        } else {
            self.q.powf(x)
        }
    }
}

/// The q-number `[x]_q`, continuous through the singular points `q = +-1`.
pub fn q_number(x: f64, q: DeformationParameter) -> Complex64 {
    let z = q.q;
    if let Some(theta) = q.theta() {
        // q = e^{2 theta}: [x]_q = sinh(2 theta x) / sinh(2 theta)
        let lambda = 2.0 * theta;
        if lambda == 0.0 {
            return Complex64::new(x, 0.0);
        }
        return Complex64::new((lambda * x).sinh() / lambda.sinh(), 0.0);
    }
    if (z.norm() - 1.0).abs() <= UNIT_TOL {
        // q = e^{i phi}: [x]_q = sin(x phi) / sin(phi)
        let phi = z.arg();
        let s = phi.sin();
        if s.abs() < 1e-300 {
            return Complex64::new(x * (x * phi).cos() / phi.cos(), 0.0);
        }
        return Complex64::new((x * phi).sin() / s, 0.0);
    }
    (q.pow(x) - q.pow(-x)) / (z - z.inv())
}

/// The generators of `h(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    A,
    ADag,
    H,
    N,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::A, Generator::ADag, Generator::H, Generator::N];
}

impl std::str::FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Self::A),
            "a_dag" | "a†" | "adag" => Ok(Self::ADag),
            "H" => Ok(Self::H),
            "N" => Ok(Self::N),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

/// A realization of `h(1)` on one factor of a Fock space.
#[derive(Debug, Clone)]
pub struct AlgebraRealization {
    pub space: SpaceDescriptor,
    pub label: String,
    pub a: Operator,
    pub a_dag: Operator,
    pub n: Operator,
    pub h: Operator,
    pub central_value: f64,
}

impl AlgebraRealization {
    /// Realization with `H = h * 1`: `a = sqrt(2h) b` for the standard
    /// ladder operator `b`, `N = b^dag b`.
    pub fn with_central_value(space: &SpaceDescriptor, label: &str, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::NonPositive {
                name: "central value",
                value: h,
            });
        }
        let b = Operator::annihilator(space, label)?;
        let a = b.scale_real((2.0 * h).sqrt());
        Ok(Self {
            space: space.clone(),
            label: label.to_string(),
            a_dag: a.adjoint(),
            a,
            n: Operator::number(space, label)?,
            h: Operator::identity(space).scale_real(h),
            central_value: h,
        })
    }

    /// `[2H]_q` through the spectral calculus of the central element `H`.
    pub fn two_h_q(&self, q: DeformationParameter) -> Complex64 {
        q_number(2.0 * self.central_value, q)
    }

    /// `a_q` with `[a_q, a_q^dag] = [2H]_q`.
    pub fn deformed_annihilator(&self, q: DeformationParameter) -> Operator {
        let b = self.a.scale_real(1.0 / (2.0 * self.central_value).sqrt());
        b.scale(self.two_h_q(q).sqrt())
    }

    /// Undeformed Casimir `C = 2NH - a^dag a`.
    pub fn casimir(&self) -> Operator {
        &(2.0 * &(&self.n * &self.h)) - &(&self.a_dag * &self.a)
    }

    /// Largest residual of the defining relations on the low sub-block with
    /// the given margin below the cutoff.
    pub fn relation_residual(&self, margin: usize) -> Result<f64> {
        let low = self.space.low_indices(margin);
        let two_h = self.h.scale_real(2.0);
        let mut worst = 0.0f64;
        let mut check = |lhs: Operator, rhs: &Operator| -> Result<()> {
            worst = worst.max(lhs.deviation_on(rhs, &low)?);
            Ok(())
        };
        check(self.a.commutator(&self.a_dag)?, &two_h)?;
        check(self.n.commutator(&self.a)?, &(-&self.a))?;
        check(self.n.commutator(&self.a_dag)?, &self.a_dag)?;
        let zero = Operator::zeros(&self.space);
        for x in [&self.a, &self.a_dag, &self.n] {
            check(self.h.commutator(x)?, &zero)?;
        }
        Ok(worst)
    }
}

/// Fundamental realization, `H = 1/2`; here `a_q = a`.
pub fn fundamental_realization(space: &SpaceDescriptor, label: &str) -> Result<AlgebraRealization> {
    AlgebraRealization::with_central_value(space, label, 0.5)
}

/// Deformed Casimir `C_q = N [2H]_q - a_q^dag a_q`.
pub fn casimir_deformed(realization: &AlgebraRealization, q: DeformationParameter) -> Operator {
    let a_q = realization.deformed_annihilator(q);
    let lead = realization.n.scale(realization.two_h_q(q));
    &lead - &(&a_q.adjoint() * &a_q)
}

fn two_factor_labels(space: &SpaceDescriptor) -> Result<(String, String)> {
    if space.num_factors() != 2 {
        return Err(Error::NotTwoFactor(space.num_factors()));
    }
    let f = space.factors();
    Ok((f[0].label.clone(), f[1].label.clone()))
}

fn generator_of(r: &AlgebraRealization, g: Generator) -> &Operator {
    match g {
        Generator::A => &r.a,
        Generator::ADag => &r.a_dag,
        Generator::H => &r.h,
        Generator::N => &r.n,
    }
}

/// Fundamental realizations on the two factors of a two-factor space.
pub fn fundamental_pair(
    space: &SpaceDescriptor,
) -> Result<(AlgebraRealization, AlgebraRealization)> {
    let (l1, l2) = two_factor_labels(space)?;
    Ok((
        fundamental_realization(space, &l1)?,
        fundamental_realization(space, &l2)?,
    ))
}

/// Primitive coproduct `Delta O = O (x) 1 + 1 (x) O` in the fundamental
/// realization on both factors.
pub fn coproduct_primitive(generator: Generator, space: &SpaceDescriptor) -> Result<Operator> {
    let (r1, r2) = fundamental_pair(space)?;
    generator_of(&r1, generator).plus(generator_of(&r2, generator))
}

/// `Delta a_q = a_q (x) q^h + q^-h (x) a_q` for realizations with central
/// value `h` on both factors.
pub fn coproduct_deformed_a_with(
    q: DeformationParameter,
    space: &SpaceDescriptor,
    central_value: f64,
) -> Result<Operator> {
    let (l1, l2) = two_factor_labels(space)?;
    let r1 = AlgebraRealization::with_central_value(space, &l1, central_value)?;
    let r2 = AlgebraRealization::with_central_value(space, &l2, central_value)?;
    let leg = q.pow(central_value);
    Ok(&r1.deformed_annihilator(q).scale(leg) + &r2.deformed_annihilator(q).scale(leg.inv()))
}

/// `Delta a_q^dag = a_q^dag (x) q^h + q^-h (x) a_q^dag`.
pub fn coproduct_deformed_adag_with(
    q: DeformationParameter,
    space: &SpaceDescriptor,
    central_value: f64,
) -> Result<Operator> {
    let (l1, l2) = two_factor_labels(space)?;
    let r1 = AlgebraRealization::with_central_value(space, &l1, central_value)?;
    let r2 = AlgebraRealization::with_central_value(space, &l2, central_value)?;
    let leg = q.pow(central_value);
    Ok(&r1.deformed_annihilator(q).adjoint().scale(leg)
        + &r2.deformed_annihilator(q).adjoint().scale(leg.inv()))
}

/// `Delta a_q = q^{1/2} a_1 + q^{-1/2} a_2` on the fundamental two-mode space.
pub fn coproduct_deformed_a(q: DeformationParameter, space: &SpaceDescriptor) -> Result<Operator> {
    coproduct_deformed_a_with(q, space, 0.5)
}

/// `Delta a_q^dag = q^{1/2} a_1^dag + q^{-1/2} a_2^dag`.
pub fn coproduct_deformed_adag(
    q: DeformationParameter,
    space: &SpaceDescriptor,
) -> Result<Operator> {
    coproduct_deformed_adag_with(q, space, 0.5)
}

/// Residuals of the deformed coproduct on the fundamental two-mode space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformedClosure {
    /// `[Delta a_q, Delta a_q^dag] - [2]_q 1`
    pub ccr: f64,
    /// `[Delta N, Delta a_q] + Delta a_q`
    pub grading: f64,
}

/// Checks the deformed relations on the sub-block below `cutoff - 1`.
pub fn deformed_closure(
    q: DeformationParameter,
    space: &SpaceDescriptor,
) -> Result<DeformedClosure> {
    let da = coproduct_deformed_a(q, space)?;
    let dad = coproduct_deformed_adag(q, space)?;
    let dn = coproduct_primitive(Generator::N, space)?;
    let low = space.low_indices(2);
    let two_q = Operator::identity(space).scale(q_number(2.0, q));
    Ok(DeformedClosure {
        ccr: da.commutator(&dad)?.deviation_on(&two_q, &low)?,
        grading: dn.commutator(&da)?.deviation_on(&(-&da), &low)?,
    })
}

/// Largest residual of `Delta [X, Y] = [Delta X, Delta Y]` over the defining
/// relations, for the primitive coproduct on the sub-block below `cutoff - 1`.
pub fn primitive_homomorphism_residual(space: &SpaceDescriptor) -> Result<f64> {
    let low = space.low_indices(2);
    let d = |g| coproduct_primitive(g, space);
    let (a, ad, h, n) = (
        d(Generator::A)?,
        d(Generator::ADag)?,
        d(Generator::H)?,
        d(Generator::N)?,
    );
    let zero = Operator::zeros(space);
    let checks = [
        (a.commutator(&ad)?, h.scale_real(2.0)),
        (n.commutator(&a)?, -&a),
        (n.commutator(&ad)?, ad.clone()),
        (h.commutator(&a)?, zero.clone()),
        (h.commutator(&ad)?, zero.clone()),
        (h.commutator(&n)?, zero.clone()),
        (a.commutator(&a)?, zero),
    ];
    let mut worst = 0.0f64;
    for (lhs, rhs) in &checks {
        worst = worst.max(lhs.deviation_on(rhs, &low)?);
    }
    Ok(worst)
}
