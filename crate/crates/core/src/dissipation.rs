//! Time-dependent deformation angle `theta(t)`.
//!
//! With `theta = theta(t)` the pair operators obey
//!
//! ```text
//! -i dA(t, theta(t))/dt = [H + Q, A(t, theta(t))],   Q = theta_dot G,
//! ```
//!
//! where `A(t, theta) = exp(iHt) A(theta) exp(-iHt)` and `Q` is the heat
//! term. The free Hamiltonian used here is `H = omega (N_A - N_B)`, which
//! commutes with `G`; this is what lets the explicit-time part and the
//! theta-flow part separate. `S_A - S_B` commutes with `G`, so it is
//! conserved along any schedule, while `S_A` follows the direction of
//! `theta(t)`.

use num_complex::Complex64;

use crate::bogoliubov::{closed_a, generator, pair_space};
use crate::error::{Error, Result};
use crate::fock::{cutoff_for_tail, Operator, DEFAULT_TAIL};
use crate::table::ResultTable;
use crate::thermofield::{
    entropy_on_state, entropy_operator_local, stationary_theta, vacuum_closed, ModeSpec, Sector,
};

/// Uniform time grid `t_i = t0 + i dt`, `i = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t0: f64,
    pub dt: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, dt: f64, steps: usize) -> Result<Self> {
        if !t0.is_finite() {
            return Err(Error::NonFinite {
                name: "t0",
                value: t0,
            });
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::NonPositive {
                name: "dt",
                value: dt,
            });
        }
        Ok(Self { t0, dt, steps })
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    pub fn end(&self) -> f64 {
        self.time(self.steps)
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|i| self.time(i)).collect()
    }
}

/// The canonical schedules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScheduleKind {
    Constant {
        theta: f64,
    },
    /// `theta(t) = theta0 + rate t`.
    Linear {
        theta0: f64,
        rate: f64,
    },
    /// `theta(t) = theta*(beta(t), omega)` with `beta` linear from `beta0` at
    /// the first grid point to `beta1` at the last.
    QuasiStatic {
        beta0: f64,
        beta1: f64,
    },
}

impl ScheduleKind {
    /// `constant:THETA`, `linear:THETA0:RATE` or `quasistatic:BETA0:BETA1`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = || Error::UnknownLabel(format!("schedule '{spec}'"));
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
        match parts.as_slice() {
            ["constant", th] => Ok(Self::Constant { theta: num(th)? }),
            ["linear", th, rate] => Ok(Self::Linear {
                theta0: num(th)?,
                rate: num(rate)?,
            }),
            ["quasistatic", b0, b1] => Ok(Self::QuasiStatic {
                beta0: num(b0)?,
                beta1: num(b1)?,
            }),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Self::Constant { theta } => format!("constant:{theta}"),
            Self::Linear { theta0, rate } => format!("linear:{theta0}:{rate}"),
            Self::QuasiStatic { beta0, beta1 } => format!("quasistatic:{beta0}:{beta1}"),
        }
    }
}

/// Central-difference step for derivatives of schedules without a closed form.
const SCHEDULE_STEP: f64 = 1e-5;

/// A schedule sampled on a grid, optionally run backwards in time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaSchedule {
    pub kind: ScheduleKind,
    pub grid: TimeGrid,
    reversed: bool,
}

impl ThetaSchedule {
    pub fn new(kind: ScheduleKind, grid: TimeGrid) -> Result<Self> {
        let schedule = Self {
            kind,
            grid,
            reversed: false,
        };
        if let ScheduleKind::QuasiStatic { beta0, beta1 } = kind {
            for (name, b) in [("beta0", beta0), ("beta1", beta1)] {
                if !(b > 0.0) || !b.is_finite() {
                    return Err(Error::NonPositive { name, value: b });
                }
            }
        }
        Ok(schedule)
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// The same samples in the opposite order: step `i` of the result is step
    /// `steps - i` of `self`.
    pub fn reversed(&self) -> Self {
        Self {
            reversed: !self.reversed,
            ..*self
        }
    }

    fn source_time(&self, t: f64) -> f64 {
        if self.reversed {
            self.grid.t0 + self.grid.end() - t
        } else {
            t
        }
    }

    fn source_step(&self, i: usize) -> usize {
        if self.reversed {
            self.grid.steps - i
        } else {
            i
        }
    }

    fn forward_beta(&self, t: f64) -> Option<f64> {
        match self.kind {
            ScheduleKind::QuasiStatic { beta0, beta1 } => {
                let span = self.grid.end() - self.grid.t0;
                let s = if span > 0.0 {
                    (t - self.grid.t0) / span
                } else {
                    0.0
                };
                Some(beta0 + (beta1 - beta0) * s)
            }
            _ => None,
        }
    }

    fn forward_theta(&self, t: f64, omega: f64) -> Result<f64> {
        match self.kind {
            ScheduleKind::Constant { theta } => Ok(theta),
            ScheduleKind::Linear { theta0, rate } => Ok(theta0 + rate * t),
            ScheduleKind::QuasiStatic { .. } => {
                stationary_theta(self.forward_beta(t).expect("quasi-static"), omega)
            }
        }
    }

    /// Inverse temperature at time `t` for quasi-static schedules.
    pub fn beta_at(&self, t: f64) -> Option<f64> {
        self.forward_beta(self.source_time(t))
    }

    pub fn beta_at_step(&self, i: usize) -> Option<f64> {
        self.forward_beta(self.grid.time(self.source_step(i)))
    }

    /// `theta(t)` for a mode of frequency `omega` (only quasi-static
    /// schedules depend on it).
    pub fn theta_at(&self, t: f64, omega: f64) -> Result<f64> {
        self.forward_theta(self.source_time(t), omega)
    }

    pub fn theta_at_step(&self, i: usize, omega: f64) -> Result<f64> {
        self.forward_theta(self.grid.time(self.source_step(i)), omega)
    }

    /// `d theta / dt`: analytic for constant and linear schedules, central
    /// difference otherwise.
    pub fn theta_dot(&self, t: f64, omega: f64) -> Result<f64> {
        let sign = if self.reversed { -1.0 } else { 1.0 };
        match self.kind {
            ScheduleKind::Constant { .. } => Ok(0.0),
            ScheduleKind::Linear { rate, .. } => Ok(sign * rate),
            ScheduleKind::QuasiStatic { .. } => {
                let h = SCHEDULE_STEP;
                Ok((self.theta_at(t + h, omega)? - self.theta_at(t - h, omega)?) / (2.0 * h))
            }
        }
    }
}

/// `Q = theta_dot G`.
pub fn heat_term(theta_dot: f64, generator: &Operator) -> Result<Operator> {
    if !theta_dot.is_finite() {
        return Err(Error::NonFinite {
            name: "theta_dot",
            value: theta_dot,
        });
    }
    Ok(generator.scale_real(theta_dot))
}

/// `H = omega (N_A - N_B)` on a two-mode space.
pub fn free_hamiltonian(omega: f64, cutoff: usize) -> Result<Operator> {
    let space = pair_space(cutoff)?;
    let diag: Vec<Complex64> = (0..space.total_dim())
        .map(|i| {
            let occ = space.occupations(i);
            Complex64::new(omega * (occ[0] as f64 - occ[1] as f64), 0.0)
        })
        .collect();
    Operator::diagonal(&space, &diag)
}

/// `A(t, theta) = exp(iHt) A(theta) exp(-iHt) = exp(-i omega t) A(theta)`.
fn rotated_a(theta: f64, t: f64, omega: f64, cutoff: usize) -> Result<Operator> {
    let a = closed_a(&pair_space(cutoff)?, theta)?;
    Ok(a.scale(Complex64::from_polar(1.0, -omega * t)))
}

/// `|| -i dA(t, theta(t))/dt - [H + Q, A(t, theta(t))] ||` below
/// `cutoff - 1`, with the time derivative taken by central difference over
/// one grid step.
pub fn heisenberg_residual(
    schedule: &ThetaSchedule,
    t: f64,
    omega: f64,
    cutoff: usize,
) -> Result<f64> {
    let dt = schedule.grid.dt;
    if t - dt < schedule.grid.t0 - 1e-12 * dt || t + dt > schedule.grid.end() + 1e-12 * dt {
        return Err(Error::BoundaryTime { t });
    }
    let space = pair_space(cutoff)?;
    let forward = rotated_a(schedule.theta_at(t + dt, omega)?, t + dt, omega, cutoff)?;
    let backward = rotated_a(schedule.theta_at(t - dt, omega)?, t - dt, omega, cutoff)?;
    let lhs = (&forward - &backward).scale(Complex64::new(0.0, -0.5 / dt));
    let a_t = rotated_a(schedule.theta_at(t, omega)?, t, omega, cutoff)?;
    let q = heat_term(schedule.theta_dot(t, omega)?, &generator(&space)?)?;
    let total = &free_hamiltonian(omega, cutoff)? + &q;
    lhs.deviation_on(&total.commutator(&a_t)?, &space.low_indices(2))
}

/// One row of an [`EvolutionTrace`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub t: f64,
    /// Angle of the first mode.
    pub theta: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub s_a_minus_s_b: f64,
    pub e_a: f64,
    pub f_a: f64,
    /// `(1/beta) Delta <S_A>` over the preceding step, `beta` at the step
    /// midpoint; zero on the first row.
    pub dq_entropy: f64,
    /// `Delta <E_A>` over the preceding step; zero on the first row.
    pub dq_energy: f64,
    /// `<0(theta(t_0))|0(theta(t))>`, product over modes.
    pub overlap: f64,
}

/// Column order of the trace table.
pub const TRACE_COLUMNS: [&str; 9] = [
    "t",
    "theta",
    "S_A",
    "S_B",
    "S_A_minus_S_B",
    "E_A",
    "F_A",
    "dQ_entropy",
    "dQ_energy",
];

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionTrace {
    pub records: Vec<TraceRecord>,
    pub cutoff: usize,
    pub tail: f64,
}

impl EvolutionTrace {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let get: fn(&TraceRecord) -> f64 = match name {
            "t" => |r| r.t,
            "theta" => |r| r.theta,
            "S_A" => |r| r.s_a,
            "S_B" => |r| r.s_b,
            "S_A_minus_S_B" => |r| r.s_a_minus_s_b,
            "E_A" => |r| r.e_a,
            "F_A" => |r| r.f_a,
            "dQ_entropy" => |r| r.dq_entropy,
            "dQ_energy" => |r| r.dq_energy,
            "overlap" => |r| r.overlap,
            _ => return None,
        };
        Some(self.records.iter().map(get).collect())
    }

    /// `Delta <S_A>` per step.
    pub fn entropy_increments(&self) -> Vec<f64> {
        self.records
            .windows(2)
            .map(|w| w[1].s_a - w[0].s_a)
            .collect()
    }

    /// `|dE - (1/beta) dS| / |dE|` per step: the first-principle balance
    /// `dF = dE - (1/beta) dS = 0`. Steps with no energy change report the
    /// absolute residual.
    pub fn balance_residuals(&self) -> Vec<f64> {
        self.records[1..]
            .iter()
            .map(|r| {
                let d = (r.dq_energy - r.dq_entropy).abs();
                if r.dq_energy != 0.0 {
                    d / r.dq_energy.abs()
                } else {
                    d
                }
            })
            .collect()
    }

    /// Largest deviation of the `S_A - S_B` column from its first value.
    pub fn conservation_drift(&self) -> f64 {
        let first = self.records[0].s_a_minus_s_b;
        self.records
            .iter()
            .map(|r| (r.s_a_minus_s_b - first).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_table(&self) -> Result<ResultTable> {
        let mut t = ResultTable::new(TRACE_COLUMNS);
        for r in &self.records {
            t.push_row(
                [
                    r.t,
                    r.theta,
                    r.s_a,
                    r.s_b,
                    r.s_a_minus_s_b,
                    r.e_a,
                    r.f_a,
                    r.dq_entropy,
                    r.dq_energy,
                ]
                .into_iter()
                .map(Into::into)
                .collect(),
            )?;
        }
        t.set_meta("cutoff", self.cutoff);
        t.set_meta("truncation_tail", self.tail);
        Ok(t)
    }
}

/// Records the vacuum expectations along the schedule. Every mode follows
/// the schedule (quasi-static schedules use each mode's own frequency);
/// the angles stored in `modes` are ignored. Constant and linear schedules
/// use the fixed `beta`; quasi-static ones use their own `beta(t)`.
pub fn evolve(schedule: &ThetaSchedule, modes: &[ModeSpec], beta: f64) -> Result<EvolutionTrace> {
    if modes.is_empty() {
        return Err(Error::EmptySpace);
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::NonPositive {
            name: "beta",
            value: beta,
        });
    }
    let grid = schedule.grid;
    let mut thetas = vec![vec![0.0; modes.len()]; grid.steps + 1];
    let mut widest = 0.0f64;
    for (i, row) in thetas.iter_mut().enumerate() {
        for (k, m) in modes.iter().enumerate() {
            m.validate()?;
            let th = schedule.theta_at_step(i, m.omega)?;
            if !(th > 0.0) {
                return Err(Error::ThetaNotPositive {
                    t: grid.time(i),
                    theta: th,
                });
            }
            row[k] = th;
            widest = widest.max(th);
        }
    }
    let cutoff = cutoff_for_tail(widest, DEFAULT_TAIL).max(4);
    let cutoffs = vec![cutoff; modes.len()];
    let tail = crate::fock::truncation_tail(widest, cutoff);
    let beta_at = |i: usize| schedule.beta_at_step(i).unwrap_or(beta);

    let mut records: Vec<TraceRecord> = Vec::with_capacity(grid.steps + 1);
    let mut initial = None;
    for (i, row) in thetas.iter().enumerate() {
        let specs: Vec<ModeSpec> = modes
            .iter()
            .zip(row)
            .map(|(m, &th)| ModeSpec {
                theta: th,
                ..m.clone()
            })
            .collect();
        let vac = vacuum_closed(&specs, &cutoffs, 1.0)?;
        let (mut s_a, mut s_b, mut e_a) = (0.0, 0.0, 0.0);
        for (k, m) in specs.iter().enumerate() {
            let psi = vac.mode_state(k);
            s_a += entropy_on_state(psi, m.theta, Sector::A)?;
            s_b += entropy_on_state(psi, m.theta, Sector::B)?;
            e_a += m.omega * vac.occupation(k, 0)?;
        }
        let b = beta_at(i);
        let overlap = match &initial {
            None => 1.0,
            Some(v0) => crate::thermofield::overlap(v0, &vac)?.re,
        };
        let (dq_entropy, dq_energy) = match records.last() {
            None => (0.0, 0.0),
            Some(prev) => {
                let b_mid = 0.5 * (beta_at(i - 1) + b);
                ((s_a - prev.s_a) / b_mid, e_a - prev.e_a)
            }
        };
        records.push(TraceRecord {
            t: grid.time(i),
            theta: row[0],
            s_a,
            s_b,
            s_a_minus_s_b: s_a - s_b,
            e_a,
            f_a: e_a - s_a / b,
            dq_entropy,
            dq_energy,
            overlap,
        });
        if initial.is_none() {
            initial = Some(vac);
        }
    }
    Ok(EvolutionTrace {
        records,
        cutoff,
        tail,
    })
}

/// Conservation of `S_A - S_B` on one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationCheck {
    /// `|| [S_A - S_B, G] ||` below `cutoff - 1`.
    pub commutator: f64,
    /// `<0(theta)| S_A - S_B |0(theta)>`.
    pub expectation: f64,
    /// `|| [N_A - N_B, G] ||` below `cutoff - 1`.
    pub number_commutator: f64,
}

#[allow(non_snake_case)]
/// Checks the conservation of `S_A - S_B` at angle `theta`.
pub fn check_sA_minus_sB(theta: f64, cutoff: usize) -> Result<ConservationCheck> {
    let local = entropy_operator_local(theta, cutoff)?;
    let space = pair_space(cutoff)?;
    let s_a = Operator::local_product(&space, &[(0, &local)])?;
    let s_b = Operator::local_product(&space, &[(1, &local)])?;
    let diff = &s_a - &s_b;
    let g = generator(&space)?;
    let low = space.low_indices(2);
    let commutator = diff.commutator(&g)?.max_abs_on(&low);
    let n_diff = free_hamiltonian(1.0, cutoff)?;
    let number_commutator = n_diff.commutator(&g)?.max_abs_on(&low);
    let vac = vacuum_closed(&[ModeSpec::new("k", 1.0, theta)?], &[cutoff], 1.0)?;
    let psi = vac.mode_state(0);
    let expectation = (psi.expectation_local(0, &local)? - psi.expectation_local(1, &local)?).re;
    Ok(ConservationCheck {
        commutator,
        expectation,
        number_commutator,
    })
}
