//! The acceptance run: every criterion of the suite as rows, each check
//! indexed by its criterion number so the exit code names the first
//! failing criterion.

use qhopf::bogoliubov::{make_pair, pair_space};
use qhopf::dissipation::{check_sA_minus_sB, evolve, ScheduleKind, ThetaSchedule, TimeGrid};
use qhopf::hopf::{deformed_closure, DeformationParameter};
use qhopf::thermofield::{
    bose_occupation, entanglement_entropy, entropy_closed_form, entropy_expectation,
    entropy_gradient_relation, overlap, overlap_scan, stationary_theta, vacuum_closed_pair,
    vacuum_exponential, weights, ModeSpec, Sector,
};
use qhopf::{Error, ResultTable};

use super::{tail_cutoff, translation_deviation, THETA_GRID};
use crate::config::Params;
use crate::{Check, CliError, Report};

struct Rows {
    table: ResultTable,
    checks: Vec<Check>,
}

impl Rows {
    fn below(
        &mut self,
        criterion: usize,
        name: impl Into<String>,
        value: f64,
        tolerance: f64,
    ) -> Result<(), CliError> {
        let check = Check::below(criterion, name, value, tolerance);
        self.table.push_row(vec![
            criterion.into(),
            check.name.as_str().into(),
            value.into(),
            tolerance.into(),
            check.passed().into(),
        ])?;
        self.checks.push(check);
        Ok(())
    }
}

/// Quasi-static schedule of the acceptance run: beta 1 -> 1.5 in 400 steps.
pub fn quasi_static_schedule() -> Result<ThetaSchedule, CliError> {
    Ok(ThetaSchedule::new(
        ScheduleKind::QuasiStatic {
            beta0: 1.0,
            beta1: 1.5,
        },
        TimeGrid::new(0.0, 0.0025, 400)?,
    )?)
}

pub fn acceptance(p: &Params) -> Result<Report, CliError> {
    let kmax = p.kmax.unwrap_or(200);
    let mut rows = Rows {
        table: ResultTable::new(["criterion", "check", "value", "tolerance", "passed"]),
        checks: Vec::new(),
    };

    // 1. deformed ccr closure
    let space20 = pair_space(20)?;
    let worst = THETA_GRID.iter().try_fold(0.0f64, |w, &th| {
        Ok::<_, Error>(w.max(deformed_closure(DeformationParameter::from_theta(th), &space20)?.ccr))
    })?;
    rows.below(1, "deformed_ccr", worst, 1e-10)?;

    // 2. twisted-adjoint combination equals the closed Bogoliubov form
    let mut worst = 0.0f64;
    for &th in &THETA_GRID {
        let dev = match make_pair(&space20, th) {
            Ok(pair) => pair.form_deviation,
            Err(Error::TwistedAdjointMismatch { deviation }) => deviation,
            Err(e) => return Err(e.into()),
        };
        worst = worst.max(dev);
    }
    rows.below(2, "twisted_adjoint_form", worst, 1e-12)?;

    // 3. generator derivative and translation
    let space30 = pair_space(30)?;
    let mut worst = 0.0f64;
    for &th in &THETA_GRID {
        worst = worst.max(make_pair(&space30, th)?.derivative_residual(1e-5)?);
    }
    rows.below(3, "generator_derivative", worst, 1e-8)?;
    rows.below(
        3,
        "translation",
        translation_deviation(&space30, 0.2, 0.3)?,
        1e-6,
    )?;

    // 4. vacuum equivalence and annihilation
    let cutoff = tail_cutoff(0.5);
    let closed = vacuum_closed_pair(0.5, cutoff)?;
    let exp = vacuum_exponential(closed.modes(), closed.cutoffs())?;
    rows.below(
        4,
        "exp_map_overlap",
        (1.0 - overlap(&exp, &closed)?.norm()).abs(),
        1e-10,
    )?;
    rows.below(4, "annihilation", closed.annihilation_residual()?, 1e-10)?;
    rows.table
        .set_meta("exp_map_annihilation", exp.annihilation_residual()?);
    rows.table.set_meta("vacuum_cutoff", cutoff);
    rows.table.set_meta("truncation_tail", closed.tails()[0]);

    // 5. inequivalence curve
    let mut worst = 0.0f64;
    for (a, b) in [(0.0, 0.5), (0.25, 1.0), (-0.5, 0.5)] {
        let scan = overlap_scan(a, b, 1)?;
        worst = worst.max((scan.per_mode - 1.0 / (a - b).cosh()).abs());
    }
    rows.below(5, "per_mode_overlap", worst, 1e-10)?;
    let scan = overlap_scan(0.0, 0.5, kmax)?;
    let largest = scan
        .curve
        .iter()
        .filter(|&&(k, _)| k >= 64)
        .map(|&(_, o)| o)
        .fold(0.0, f64::max);
    rows.below(5, "k_mode_overlap_from_64", largest, 1e-12)?;

    // 6. entropy relations
    let s = entropy_expectation(&closed, Sector::A)?;
    rows.below(
        6,
        "entropy_closed_form",
        (s - entropy_closed_form(0.5)).abs(),
        1e-10,
    )?;
    rows.below(
        6,
        "entropy_gradient",
        entropy_gradient_relation(0.5, 40)?.entropy,
        1e-6,
    )?;
    rows.below(
        6,
        "entanglement_entropy",
        (s - entanglement_entropy(&closed)?).abs(),
        1e-8,
    )?;

    // 7. thermodynamics
    let mut worst = 0.0f64;
    for (beta, omega) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.3)] {
        let star = stationary_theta(beta, omega)?;
        worst = worst.max((star.sinh().powi(2) - bose_occupation(beta, omega)).abs());
    }
    rows.below(7, "bose_identification", worst, 1e-10)?;
    let one = ModeSpec::uniform(1, 1.0, 0.5)?;
    let quasi = evolve(&quasi_static_schedule()?, &one, 1.0)?;
    let balance = quasi.balance_residuals().into_iter().fold(0.0, f64::max);
    rows.below(7, "quasi_static_balance", balance, 1e-6)?;

    // 8. entanglement weights
    let w = weights(&[0.5], 50)?.marginal(0);
    let sector_dev = (0..=8)
        .map(|n| {
            let amp = closed
                .mode_state(0)
                .amplitude(&[n, n])
                .expect("in range")
                .norm();
            (amp * amp - w[n]).abs()
        })
        .fold(0.0, f64::max);
    rows.below(8, "sector_norms", sector_dev, 1e-10)?;
    rows.below(8, "partial_sum", (1.0 - w.iter().sum::<f64>()).abs(), 1e-12)?;
    let t2 = 0.5f64.tanh().powi(2);
    let ratio_dev = w
        .windows(2)
        .map(|p| (p[1] / p[0] - t2).abs())
        .fold(0.0, f64::max);
    rows.below(8, "ratio_tanh2", ratio_dev, 1e-12)?;

    // 9. conservation
    let c = check_sA_minus_sB(0.5, 30)?;
    rows.below(9, "entropy_difference_commutator", c.commutator, 1e-9)?;
    rows.below(
        9,
        "number_difference_commutator",
        c.number_commutator,
        1e-12,
    )?;
    let grid = TimeGrid::new(0.0, 0.01, 100)?;
    let mut drift = quasi.conservation_drift();
    for kind in [
        ScheduleKind::Constant { theta: 0.5 },
        ScheduleKind::Linear {
            theta0: 0.2,
            rate: 0.5,
        },
    ] {
        let trace = evolve(&ThetaSchedule::new(kind, grid)?, &one, 1.0)?;
        drift = drift.max(trace.conservation_drift());
    }
    rows.below(9, "trace_drift", drift, 1e-9)?;

    rows.table.set_meta("kmax", kmax);
    let mut report = Report::new(rows.table);
    for c in rows.checks {
        report.check(c);
    }
    Ok(report)
}
