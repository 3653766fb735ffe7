//! Theta-vacua `|0(theta)>` as products of per-mode states.
//!
//! Every mode contributes either an `(A, B)` pair (two factors) or a charged
//! quartet `A+, Abar+, A-, Abar-` (four factors) paired in the channels
//! `(A+, Abar-)` and `(A-, Abar+)`. Within one channel the vacuum is the
//! two-mode squeezed state
//!
//! ```text
//! |0(theta)> = exp(theta (A^dag B^dag - A B)) |0> = sum_n tanh^n / cosh |n, n>
//! ```
//!
//! so amplitudes are real and non-negative for `theta >= 0`. Truncated
//! closed forms are renormalized to unit norm.

use num_complex::Complex64;
use serde_json::json;

use super::mode::ModeSpec;
use crate::bogoliubov::generator;
use crate::error::{Error, Result};
use crate::fock::{
    local_annihilator, matrix_exp, serial, truncation_tail, SpaceDescriptor, StateVector,
    DEFAULT_TAIL,
};
use crate::table::ResultTable;

/// How the state was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    ExponentialMap,
    ClosedForm,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::ExponentialMap => "exponential_map",
            Construction::ClosedForm => "closed_form",
        }
    }
}

/// Factors per mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `A, B`.
    Pair,
    /// `A+, Abar+, A-, Abar-`.
    FourMode,
}

impl Layout {
    pub fn name(self) -> &'static str {
        match self {
            Layout::Pair => "pair",
            Layout::FourMode => "four_mode",
        }
    }

    pub fn factors(self) -> usize {
        match self {
            Layout::Pair => 2,
            Layout::FourMode => 4,
        }
    }

    /// `(annihilated factor, partner)` for every Bogoliubov annihilator
    /// `cosh a_p - sinh a_partner^dag`.
    pub fn channels(self) -> &'static [(usize, usize)] {
        match self {
            Layout::Pair => &[(0, 1), (1, 0)],
            Layout::FourMode => &[(0, 3), (3, 0), (2, 1), (1, 2)],
        }
    }

    /// Number of pairs in a basis state that belongs to the vacuum's support.
    pub fn pair_order(self, occupations: &[usize]) -> Option<usize> {
        match self {
            Layout::Pair => (occupations[0] == occupations[1]).then_some(occupations[0]),
            Layout::FourMode => (occupations[0] == occupations[3]
                && occupations[1] == occupations[2])
                .then_some(occupations[0] + occupations[1]),
        }
    }
}

/// Two-factor space of one mode, labelled `A_<k>`, `B_<k>`.
pub fn mode_pair_space(label: &str, cutoff: usize) -> Result<SpaceDescriptor> {
    SpaceDescriptor::new([
        (format!("A_{label}"), cutoff),
        (format!("B_{label}"), cutoff),
    ])
}

/// Four-factor space of one mode in the order `A+, Abar+, A-, Abar-`.
pub fn mode_quartet_space(label: &str, cutoff: usize) -> Result<SpaceDescriptor> {
    SpaceDescriptor::new([
        (format!("A+_{label}"), cutoff),
        (format!("Abar+_{label}"), cutoff),
        (format!("A-_{label}"), cutoff),
        (format!("Abar-_{label}"), cutoff),
    ])
}

fn check_tail(theta: f64, cutoff: usize, eps: f64) -> Result<()> {
    let tail = truncation_tail(theta, cutoff);
    if tail >= eps && theta != 0.0 {
        return Err(Error::TailBound {
            tail,
            cutoff,
            bound: eps,
        });
    }
    Ok(())
}

/// `tanh^n(theta) / cosh(theta)`, `n = 0..=cutoff`, without renormalization.
pub fn pair_amplitudes(theta: f64, cutoff: usize) -> Vec<f64> {
    let t = theta.tanh();
    let mut amp = 1.0 / theta.cosh();
    let mut out = Vec::with_capacity(cutoff + 1);
    for _ in 0..=cutoff {
        out.push(amp);
        amp *= t;
    }
    out
}

/// Unnormalized truncated closed-form pair state on `space`.
pub(crate) fn raw_pair_state(space: &SpaceDescriptor, theta: f64) -> Result<StateVector> {
    let cutoff = space.factors()[0].cutoff;
    let mut amps = vec![Complex64::new(0.0, 0.0); space.total_dim()];
    for (n, a) in pair_amplitudes(theta, cutoff).into_iter().enumerate() {
        amps[space.index_of(&[n, n]).expect("diagonal index")] = Complex64::new(a, 0.0);
    }
    StateVector::new(space, amps)
}

/// The theta-vacuum of a set of modes, one state per mode.
#[derive(Debug, Clone)]
pub struct ThetaVacuum {
    modes: Vec<ModeSpec>,
    cutoffs: Vec<usize>,
    states: Vec<StateVector>,
    layout: Layout,
    construction: Construction,
}

impl ThetaVacuum {
    fn assemble(
        modes: &[ModeSpec],
        cutoffs: &[usize],
        layout: Layout,
        construction: Construction,
        eps: f64,
        build: impl Fn(&ModeSpec, usize) -> Result<StateVector>,
    ) -> Result<Self> {
        if modes.len() != cutoffs.len() {
            return Err(Error::DimensionMismatch {
                expected: modes.len(),
                found: cutoffs.len(),
            });
        }
        let mut states = Vec::with_capacity(modes.len());
        for (m, &n) in modes.iter().zip(cutoffs) {
            m.validate()?;
            check_tail(m.theta, n, eps)?;
            states.push(build(m, n)?.normalize()?);
        }
        Ok(Self {
            modes: modes.to_vec(),
            cutoffs: cutoffs.to_vec(),
            states,
            layout,
            construction,
        })
    }

    pub fn modes(&self) -> &[ModeSpec] {
        &self.modes
    }

    pub fn cutoffs(&self) -> &[usize] {
        &self.cutoffs
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn mode_state(&self, k: usize) -> &StateVector {
        &self.states[k]
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    /// Product of the per-mode norms.
    pub fn norm(&self) -> f64 {
        self.states.iter().map(StateVector::norm).product()
    }

    /// Truncation tail of each mode (per channel).
    pub fn tails(&self) -> Vec<f64> {
        self.modes
            .iter()
            .zip(&self.cutoffs)
            .map(|(m, &n)| truncation_tail(m.theta, n))
            .collect()
    }

    /// The state on the full tensor product of all modes.
    pub fn global_state(&self) -> Result<StateVector> {
        let mut it = self.states.iter();
        let first = it.next().ok_or(Error::EmptySpace)?.clone();
        it.try_fold(first, |acc, s| acc.tensor(s))
    }

    /// `<0(theta)| N |0(theta)>` on factor `position` of mode `k`.
    pub fn occupation(&self, k: usize, position: usize) -> Result<f64> {
        let a = local_annihilator(self.cutoffs[k]);
        let n = &a.adjoint() * &a;
        Ok(self.states[k].expectation_local(position, &n)?.re)
    }

    /// `|| X_k(theta_k) |0(theta)> ||` for every Bogoliubov annihilator of every
    /// mode, largest value.
    pub fn annihilation_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for ((m, &n), psi) in self.modes.iter().zip(&self.cutoffs).zip(&self.states) {
            let a = local_annihilator(n);
            let a_dag = a.adjoint();
            for &(p, partner) in self.layout.channels() {
                let lowered = psi
                    .apply_local(p, &a)?
                    .scale(Complex64::new(m.theta.cosh(), 0.0));
                let raised = psi
                    .apply_local(partner, &a_dag)?
                    .scale(Complex64::new(m.theta.sinh(), 0.0));
                worst = worst.max(lowered.minus(&raised)?.norm());
            }
        }
        Ok(worst)
    }

    /// A-priori bound on [`Self::annihilation_residual`].
    ///
    /// Closed forms are annihilated up to roundoff. The exponential map of
    /// the truncated generator differs from the closed form near the top
    /// level; its residual is bounded by `10 (n_max + 1) sqrt(tail)`.
    pub fn annihilation_bound(&self) -> f64 {
        let roundoff = 1e-14;
        self.tails()
            .iter()
            .zip(&self.cutoffs)
            .map(|(&tail, &n)| match self.construction {
                Construction::ClosedForm => 10.0 * tail + roundoff,
                Construction::ExponentialMap => 10.0 * (n as f64 + 1.0) * tail.sqrt() + roundoff,
            })
            .fold(0.0, f64::max)
    }

    /// Amplitudes of the pair states `|n, n>` (per channel for quartets),
    /// one row per mode and `n`.
    pub fn amplitude_table(&self, n_show: usize) -> Result<ResultTable> {
        let mut t = ResultTable::new(["mode", "n", "amplitude", "closed_form"]);
        for (k, (m, psi)) in self.modes.iter().zip(&self.states).enumerate() {
            let closed = pair_amplitudes(m.theta, self.cutoffs[k]);
            for n in 0..=n_show.min(self.cutoffs[k]) {
                let occ: Vec<usize> = match self.layout {
                    Layout::Pair => vec![n, n],
                    Layout::FourMode => vec![n, 0, 0, n],
                };
                let amp = psi.amplitude(&occ).expect("in range").re;
                let want = match self.layout {
                    Layout::Pair => closed[n],
                    Layout::FourMode => closed[n] * closed[0],
                };
                t.push_row(vec![
                    m.label.as_str().into(),
                    n.into(),
                    amp.into(),
                    want.into(),
                ])?;
            }
        }
        Ok(t)
    }

    /// JSON record with the per-mode states in the fock-core state format.
    pub fn to_json(&self) -> Result<String> {
        let mut modes = Vec::new();
        for ((m, &n), psi) in self.modes.iter().zip(&self.cutoffs).zip(&self.states) {
            let state: serde_json::Value = serde_json::from_str(&serial::state_to_json(psi)?)
                .map_err(|e| Error::Serialization(e.to_string()))?;
            modes.push(json!({"mode": m, "cutoff": n, "state": state}));
        }
        let doc = json!({
            "construction": self.construction.name(),
            "layout": self.layout.name(),
            "modes": modes,
        });
        serde_json::to_string(&doc).map_err(|e| Error::Serialization(e.to_string()))
    }
}

/// `exp(i sum_k theta_k G_k) |0>`, mode by mode through the dense matrix
/// exponential of the truncated generator.
pub fn vacuum_exponential(modes: &[ModeSpec], cutoffs: &[usize]) -> Result<ThetaVacuum> {
    vacuum_exponential_with_tail(modes, cutoffs, DEFAULT_TAIL)
}

pub fn vacuum_exponential_with_tail(
    modes: &[ModeSpec],
    cutoffs: &[usize],
    eps: f64,
) -> Result<ThetaVacuum> {
    ThetaVacuum::assemble(
        modes,
        cutoffs,
        Layout::Pair,
        Construction::ExponentialMap,
        eps,
        |m, n| {
            let space = mode_pair_space(&m.label, n)?;
            let u = matrix_exp(&generator(&space)?.scale(Complex64::new(0.0, m.theta)))?;
            u.apply(&StateVector::vacuum(&space))
        },
    )
}

/// Closed-form pair vacuum of a single mode labelled `k`.
pub fn vacuum_closed_pair(theta: f64, cutoff: usize) -> Result<ThetaVacuum> {
    vacuum_closed(&[ModeSpec::new("k", 1.0, theta)?], &[cutoff], DEFAULT_TAIL)
}

/// Closed-form pair vacua `cosh^-1 exp(tanh A^dag B^dag) |0>` for several modes.
pub fn vacuum_closed(modes: &[ModeSpec], cutoffs: &[usize], eps: f64) -> Result<ThetaVacuum> {
    ThetaVacuum::assemble(
        modes,
        cutoffs,
        Layout::Pair,
        Construction::ClosedForm,
        eps,
        |m, n| raw_pair_state(&mode_pair_space(&m.label, n)?, m.theta),
    )
}

/// Charged four-mode vacuum of a single mode labelled `k`.
pub fn vacuum_four_mode(theta: f64, cutoff: usize) -> Result<ThetaVacuum> {
    vacuum_four_mode_with_tail(&[ModeSpec::new("k", 1.0, theta)?], &[cutoff], DEFAULT_TAIL)
}

/// `Z^-1 exp[tanh (A+^dag Abar-^dag + A-^dag Abar+^dag)] |0>` with
/// `Z = cosh^2`, by summing the exponential series on the vacuum. The series
/// terminates on the truncated space.
pub fn vacuum_four_mode_with_tail(
    modes: &[ModeSpec],
    cutoffs: &[usize],
    eps: f64,
) -> Result<ThetaVacuum> {
    ThetaVacuum::assemble(
        modes,
        cutoffs,
        Layout::FourMode,
        Construction::ClosedForm,
        eps,
        |m, n| {
            let space = mode_quartet_space(&m.label, n)?;
            let t = Complex64::new(m.theta.tanh(), 0.0);
            let create = local_annihilator(n).adjoint();
            let pair_creation = |psi: &StateVector| -> Result<StateVector> {
                let plus = psi.apply_local(3, &create)?.apply_local(0, &create)?;
                let minus = psi.apply_local(1, &create)?.apply_local(2, &create)?;
                plus.plus(&minus)
            };
            let mut term = StateVector::vacuum(&space);
            let mut sum = term.clone();
            for k in 1..=2 * n {
                term = pair_creation(&term)?.scale(t / k as f64);
                sum = sum.plus(&term)?;
            }
            Ok(sum.scale(Complex64::new(1.0 / m.theta.cosh().powi(2), 0.0)))
        },
    )
}

/// `<a|b>` as a product over modes.
pub fn overlap(a: &ThetaVacuum, b: &ThetaVacuum) -> Result<Complex64> {
    Ok(overlap_per_mode(a, b)?.into_iter().product())
}

/// Per-mode overlaps `<a_k|b_k>`.
pub fn overlap_per_mode(a: &ThetaVacuum, b: &ThetaVacuum) -> Result<Vec<Complex64>> {
    if a.layout != b.layout || a.cutoffs != b.cutoffs || a.states.len() != b.states.len() {
        return Err(Error::LayoutMismatch);
    }
    a.states
        .iter()
        .zip(&b.states)
        .map(|(x, y)| x.inner(y).map_err(|_| Error::LayoutMismatch))
        .collect()
}

/// `|<0(theta)|0(theta')>|` for one mode and for `K = 1..=kmax` identical
/// modes.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapScan {
    pub theta: f64,
    pub theta_prime: f64,
    pub cutoff: usize,
    /// Measured single-mode overlap on the truncated space.
    pub per_mode: f64,
    /// `(K, |overlap|)`.
    pub curve: Vec<(usize, f64)>,
}

/// Measures the single-mode overlap on closed-form vacua truncated for
/// `DEFAULT_TAIL` and multiplies it out over `K` independent modes.
pub fn overlap_scan(theta: f64, theta_prime: f64, kmax: usize) -> Result<OverlapScan> {
    let cutoff =
        crate::fock::cutoff_for_tail(theta.abs().max(theta_prime.abs()), DEFAULT_TAIL).max(4);
    let a = vacuum_closed_pair(theta, cutoff)?;
    let b = vacuum_closed_pair(theta_prime, cutoff)?;
    let per_mode = overlap(&a, &b)?.norm();
    let mut curve = Vec::with_capacity(kmax);
    let mut acc = 1.0;
    for k in 1..=kmax {
        acc *= per_mode;
        curve.push((k, acc));
    }
    Ok(OverlapScan {
        theta,
        theta_prime,
        cutoff,
        per_mode,
        curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::cutoff_for_tail;

    fn one(theta: f64) -> Vec<ModeSpec> {
        vec![ModeSpec::new("k", 1.0, theta).unwrap()]
    }

    #[test]
    fn theta_zero_is_fock_vacuum() {
        for v in [
            vacuum_exponential(&one(0.0), &[5]).unwrap(),
            vacuum_closed_pair(0.0, 5).unwrap(),
            vacuum_four_mode(0.0, 3).unwrap(),
        ] {
            let psi = v.mode_state(0);
            assert_eq!(psi, &StateVector::vacuum(psi.space()).normalize().unwrap());
        }
    }

    #[test]
    fn exponential_map_amplitudes() {
        let v = vacuum_exponential(&one(0.5), &[30]).unwrap();
        let psi = v.mode_state(0);
        for n in 0..=5 {
            let want = 0.5f64.tanh().powi(n as i32) / 0.5f64.cosh();
            assert!((psi.amplitude(&[n, n]).unwrap().re - want).abs() < 1e-10);
        }
        assert!((psi.amplitude(&[0, 0]).unwrap().re - 0.886_818_9).abs() < 1e-6);
        assert!((v.occupation(0, 0).unwrap() - 0.5f64.sinh().powi(2)).abs() < 1e-10);
        assert!((v.occupation(0, 0).unwrap() - 0.271_540_317).abs() < 1e-8);
    }

    #[test]
    fn tail_bound_enforced() {
        assert!(matches!(
            vacuum_closed_pair(1.0, 10),
            Err(Error::TailBound { .. })
        ));
    }

    #[test]
    fn closed_pair_matches_exponential() {
        let n = cutoff_for_tail(0.5, DEFAULT_TAIL);
        let a = vacuum_closed_pair(0.5, n).unwrap();
        let b = vacuum_exponential(&one(0.5), &[n]).unwrap();
        let ov = overlap(&a, &b).unwrap();
        assert!((ov - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        assert!((a.norm() - 1.0).abs() < 1e-12);
        assert!(a.annihilation_residual().unwrap() < a.annihilation_bound());
        assert!(b.annihilation_residual().unwrap() < b.annihilation_bound());
    }

    #[test]
    fn four_mode_first_order_is_bell_pair() {
        let th: f64 = 0.4;
        let v = vacuum_four_mode(th, cutoff_for_tail(th, DEFAULT_TAIL)).unwrap();
        let psi = v.mode_state(0);
        let want = th.tanh() / th.cosh().powi(2);
        let x = psi.amplitude(&[1, 0, 0, 1]).unwrap().re;
        let y = psi.amplitude(&[0, 1, 1, 0]).unwrap().re;
        assert!((x - want).abs() < 1e-12 && (y - want).abs() < 1e-12);
        assert!(psi.amplitude(&[1, 1, 0, 0]).unwrap().norm() == 0.0);
        assert!(v.annihilation_residual().unwrap() < v.annihilation_bound());
    }

    #[test]
    fn coherence_ratio_is_geometric() {
        let v = vacuum_closed_pair(0.7, cutoff_for_tail(0.7, DEFAULT_TAIL)).unwrap();
        let psi = v.mode_state(0);
        for n in 0..10 {
            let r = psi.amplitude(&[n + 1, n + 1]).unwrap().re / psi.amplitude(&[n, n]).unwrap().re;
            assert!((r - 0.7f64.tanh()).abs() < 1e-10);
        }
    }

    #[test]
    fn overlap_layout_mismatch() {
        let a = vacuum_closed_pair(0.1, 10).unwrap();
        let b = vacuum_closed_pair(0.1, 11).unwrap();
        assert_eq!(overlap(&a, &b).unwrap_err(), Error::LayoutMismatch);
    }

    #[test]
    fn overlap_scan_curve() {
        let s = overlap_scan(0.3, 0.8, 100).unwrap();
        assert!((s.per_mode - 1.0 / 0.5f64.cosh()).abs() < 1e-10);
        assert_eq!(s.curve.len(), 100);
        assert!((s.curve[99].1.ln() + 12.011).abs() < 1e-3);
    }

    #[test]
    fn json_record() {
        let v = vacuum_closed_pair(0.2, 12).unwrap();
        let js: serde_json::Value = serde_json::from_str(&v.to_json().unwrap()).unwrap();
        assert_eq!(js["construction"], "closed_form");
        assert_eq!(
            js["modes"][0]["state"]["data"].as_array().unwrap().len(),
            169
        );
    }
}
