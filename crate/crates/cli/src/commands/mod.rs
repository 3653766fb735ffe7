//! One function per subcommand. Each returns its table and checks; output
//! is written by the caller.

mod acceptance;

use num_complex::Complex64;
use qhopf::bogoliubov::{
    closed_a, closed_b, generator, make_pair, number_difference_residual, pair_space,
    translation_block, FORM_TOL, TRANSLATION_TOL,
};
use qhopf::dissipation::{evolve, heisenberg_residual, ScheduleKind, ThetaSchedule, TimeGrid};
use qhopf::fock::{cutoff_for_tail, matrix_exp, truncation_tail, SpaceDescriptor, DEFAULT_TAIL};
use qhopf::hopf::{
    deformed_closure, fundamental_realization, primitive_homomorphism_residual,
    DeformationParameter,
};
use qhopf::thermofield::{
    bose_occupation, entanglement_entropy, entanglement_report, entropy_closed_form,
    entropy_expectation, free_energy_gradient, mode_free_energy, overlap, overlap_scan,
    stationary_theta, vacuum_closed, vacuum_exponential_with_tail, vacuum_four_mode_with_tail,
    weights, Layout, ModeSpec, Sector, ThetaVacuum,
};
use qhopf::{ResultTable, Value};

pub use acceptance::acceptance;

use crate::config::{ExperimentConfig, Params, SubcommandName, VacuumKind};
use crate::{CliError, Report};

/// The angle grid shared by the algebra and Bogoliubov checks.
pub const THETA_GRID: [f64; 7] = [0.0, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0];

/// Largest pair-space dimension for which the vacuum command also builds
/// the exponential-map vacuum (a dense matrix exponential).
pub const EXP_MAP_MAX_DIM: usize = 1024;

pub fn dispatch(config: &ExperimentConfig) -> Result<Report, CliError> {
    let p = &config.params;
    match config.subcommand {
        SubcommandName::AlgebraCheck => algebra_check(p),
        SubcommandName::BogoliubovDemo => bogoliubov_demo(p),
        SubcommandName::Vacuum => vacuum(p),
        SubcommandName::OverlapScan => overlap_scan_cmd(p),
        SubcommandName::Weights => weights_cmd(p),
        SubcommandName::FreeEnergy => free_energy_cmd(p),
        SubcommandName::Entangle => entangle(p),
        SubcommandName::Dissipate => dissipate(p),
        SubcommandName::Acceptance => acceptance(p),
    }
}

fn grid_or_single(theta: Option<f64>, grid: &[f64]) -> Vec<f64> {
    match theta {
        Some(t) => vec![t],
        None => grid.to_vec(),
    }
}

fn tail_cutoff(theta: f64) -> usize {
    cutoff_for_tail(theta.abs(), DEFAULT_TAIL).max(4)
}

fn algebra_check(p: &Params) -> Result<Report, CliError> {
    let cutoff = p.cutoff.unwrap_or(20);
    let tol = p.tol.unwrap_or(1e-10);
    let space = pair_space(cutoff)?;
    let mut table = ResultTable::new(["theta", "q", "two_q", "deformed_ccr", "deformed_grading"]);
    let mut report_checks = Vec::new();
    for theta in grid_or_single(p.theta, &THETA_GRID) {
        let q = DeformationParameter::from_theta(theta);
        let closure = deformed_closure(q, &space)?;
        let two_q = q.q().re + 1.0 / q.q().re;
        table.push_row(vec![
            theta.into(),
            q.q().re.into(),
            two_q.into(),
            closure.ccr.into(),
            closure.grading.into(),
        ])?;
        report_checks.push((format!("deformed_ccr theta={theta}"), closure.ccr));
        report_checks.push((format!("deformed_grading theta={theta}"), closure.grading));
    }
    let primitive = primitive_homomorphism_residual(&space)?;
    let relations = fundamental_realization(&SpaceDescriptor::single("a", cutoff)?, "a")?
        .relation_residual(2)?;
    table.set_meta("cutoff", cutoff);
    table.set_meta("primitive_homomorphism", primitive);
    table.set_meta("fundamental_relations", relations);
    let mut report = Report::new(table);
    for (name, value) in report_checks {
        report.below(name, value, tol);
    }
    report.below("primitive_homomorphism", primitive, tol);
    report.below("fundamental_relations", relations, tol);
    Ok(report)
}

/// `max |U X U^dag - closed(theta0 + dtheta)|` on the translation block for
/// `A` and `B`, with `U = exp(i dtheta G)`.
pub fn translation_deviation(
    space: &SpaceDescriptor,
    theta0: f64,
    dtheta: f64,
) -> Result<f64, CliError> {
    let u = matrix_exp(&generator(space)?.scale(Complex64::new(0.0, dtheta)))?;
    let u_dag = u.adjoint();
    let block = translation_block(space);
    let target = theta0 + dtheta;
    let a = u.compose(&closed_a(space, theta0)?)?.compose(&u_dag)?;
    let b = u.compose(&closed_b(space, theta0)?)?.compose(&u_dag)?;
    Ok(a.deviation_on(&closed_a(space, target)?, &block)?
        .max(b.deviation_on(&closed_b(space, target)?, &block)?))
}

fn bogoliubov_demo(p: &Params) -> Result<Report, CliError> {
    let cutoff = p.cutoff.unwrap_or(30);
    let tol = p.tol.unwrap_or(1e-8);
    let space = pair_space(cutoff)?;
    let mut table = ResultTable::new([
        "theta",
        "form_deviation",
        "ccr_residual",
        "derivative_residual",
    ]);
    let mut rows = Vec::new();
    for theta in grid_or_single(p.theta, &[-1.0, -0.5, 0.0, 0.5, 1.0]) {
        let pair = make_pair(&space, theta)?;
        let ccr = pair.ccr_residual()?;
        let derivative = pair.derivative_residual(1e-5)?;
        table.push_row(vec![
            theta.into(),
            pair.form_deviation.into(),
            ccr.into(),
            derivative.into(),
        ])?;
        rows.push((theta, pair.form_deviation, ccr, derivative));
    }
    let theta0 = 0.2;
    let dtheta = p.dtheta.unwrap_or(0.3);
    let translation = translation_deviation(&space, theta0, dtheta)?;
    let number = number_difference_residual(&space)?;
    table.set_meta("cutoff", cutoff);
    table.set_meta("translation_from", theta0);
    table.set_meta("translation_by", dtheta);
    table.set_meta("translation_deviation", translation);
    table.set_meta("number_difference_commutator", number);
    table.set_meta(
        "truncation_tail",
        truncation_tail(theta0 + dtheta.abs(), cutoff),
    );
    let mut report = Report::new(table);
    for (theta, form, ccr, derivative) in rows {
        report.below(
            format!("twisted_adjoint_form theta={theta}"),
            form,
            FORM_TOL,
        );
        report.below(format!("ccr theta={theta}"), ccr, tol);
        report.below(
            format!("generator_derivative theta={theta}"),
            derivative,
            tol,
        );
    }
    report.below("translation", translation, TRANSLATION_TOL);
    report.below("number_difference_commutator", number, 1e-12);
    Ok(report)
}

fn vacuum_of(kind: VacuumKind, theta: f64, cutoff: usize) -> Result<ThetaVacuum, CliError> {
    let modes = vec![ModeSpec::new("k0", 1.0, theta)?];
    // the tail is reported, not enforced
    Ok(match kind {
        VacuumKind::Pair => vacuum_closed(&modes, &[cutoff], f64::INFINITY)?,
        VacuumKind::Four => vacuum_four_mode_with_tail(&modes, &[cutoff], f64::INFINITY)?,
    })
}

fn vacuum(p: &Params) -> Result<Report, CliError> {
    let theta = p.theta.unwrap_or(0.5);
    let cutoff = p.cutoff.unwrap_or_else(|| tail_cutoff(theta));
    let tol = p.tol.unwrap_or(1e-10);
    let kind = p.construction.unwrap_or(VacuumKind::Pair);
    let vac = vacuum_of(kind, theta, cutoff)?;
    let mut table = ResultTable::new([
        "theta",
        "cutoff",
        "layout",
        "N",
        "S_A",
        "S_A_closed_form",
        "entanglement_entropy",
        "norm",
        "annihilation_residual",
        "annihilation_bound",
        "exp_map_overlap_deviation",
    ]);
    let channels = vac.layout().channels().len() / 2;
    let closed = channels as f64 * entropy_closed_form(theta);
    let n = vac.occupation(0, 0)?;
    let s_a: Value = if theta == 0.0 {
        "rejected: theta=0 (limit 0)".into()
    } else {
        match vac.layout() {
            Layout::Pair => entropy_expectation(&vac, Sector::A)?.into(),
            Layout::FourMode => entanglement_entropy(&vac)?.into(),
        }
    };
    let ent = entanglement_entropy(&vac)?;
    let residual = vac.annihilation_residual()?;
    let bound = vac.annihilation_bound();
    let exp_dev: Option<f64> = match kind {
        VacuumKind::Pair if (cutoff + 1).pow(2) <= EXP_MAP_MAX_DIM => {
            let e = vacuum_exponential_with_tail(vac.modes(), vac.cutoffs(), f64::INFINITY)?;
            Some((1.0 - overlap(&e, &vac)?.norm()).abs())
        }
        _ => None,
    };
    table.push_row(vec![
        theta.into(),
        cutoff.into(),
        vac.layout().name().into(),
        n.into(),
        s_a.clone(),
        closed.into(),
        ent.into(),
        vac.norm().into(),
        residual.into(),
        bound.into(),
        match exp_dev {
            Some(d) => d.into(),
            None => "skipped".into(),
        },
    ])?;
    let tail = vac.tails()[0];
    table.set_meta("construction", vac.construction().name());
    table.set_meta("truncation_tail", tail);
    let amps = vac.amplitude_table(8)?;
    for row in amps.rows() {
        table.set_meta(format!("amplitude_{}", row[1].render()), row[2].clone());
    }
    let mut report = Report::new(table);
    report.below("norm", (vac.norm() - 1.0).abs(), 1e-12);
    report.below("annihilation", residual, bound.max(tol));
    if let Some(s) = s_a.as_real() {
        report.below("entropy_closed_form", (s - closed).abs(), tol);
    }
    if let Some(d) = exp_dev {
        report.below("exp_map_overlap", d, tol);
    }
    Ok(report)
}

fn overlap_scan_cmd(p: &Params) -> Result<Report, CliError> {
    let theta = p.theta.unwrap_or(0.0);
    let theta_prime = p.theta_prime.unwrap_or(theta + p.dtheta.unwrap_or(0.5));
    let kmax = p.kmax.unwrap_or(200);
    let tol = p.tol.unwrap_or(1e-10);
    let scan = overlap_scan(theta, theta_prime, kmax)?;
    let per_mode_closed = 1.0 / (theta - theta_prime).cosh();
    let mut table = ResultTable::new(["K", "overlap", "closed_form", "ln_overlap"]);
    for &(k, o) in &scan.curve {
        let closed = per_mode_closed.powi(k as i32);
        table.push_row(vec![k.into(), o.into(), closed.into(), o.ln().into()])?;
    }
    table.set_meta("cutoff", scan.cutoff);
    table.set_meta("per_mode", scan.per_mode);
    table.set_meta("per_mode_closed_form", per_mode_closed);
    table.set_meta(
        "truncation_tail",
        truncation_tail(theta.abs().max(theta_prime.abs()), scan.cutoff),
    );
    let mut report = Report::new(table);
    report.below(
        "per_mode_overlap",
        (scan.per_mode - per_mode_closed).abs(),
        tol,
    );
    Ok(report)
}

fn weights_cmd(p: &Params) -> Result<Report, CliError> {
    let theta = p.theta.unwrap_or(0.5);
    let n_max = p.nmax.unwrap_or(50);
    let tol = p.tol.unwrap_or(1e-12);
    let dist = weights(&[theta], n_max)?;
    let w = dist.marginal(0);
    let mut table = ResultTable::new(["n", "W_n", "partial_sum", "ratio"]);
    let mut sum = 0.0;
    let t2 = theta.tanh().powi(2);
    let mut ratio_dev = 0.0f64;
    let mut increases = 0usize;
    for (n, &x) in w.iter().enumerate() {
        sum += x;
        let ratio = if n == 0 { f64::NAN } else { x / w[n - 1] };
        if n > 0 && theta != 0.0 {
            ratio_dev = ratio_dev.max((ratio - t2).abs());
            increases += usize::from(x >= w[n - 1]);
        }
        table.push_row(vec![n.into(), x.into(), sum.into(), ratio.into()])?;
    }
    table.set_meta("truncation_tail", dist.tail());
    table.set_meta("tanh2_theta", t2);
    let mut report = Report::new(table);
    report.below("partial_sum_deficit", (1.0 - sum - dist.tail()).abs(), tol);
    if theta != 0.0 {
        report.below("ratio_tanh2", ratio_dev, tol);
        report.below("monotone_violations", increases as f64, 0.5);
    }
    Ok(report)
}

fn free_energy_cmd(p: &Params) -> Result<Report, CliError> {
    let beta = p.beta.unwrap_or(1.0);
    let omega = p.omega.unwrap_or(1.0);
    let tol = p.tol.unwrap_or(1e-10);
    let lo = p.theta_min.unwrap_or(0.05);
    let hi = p.theta_max.unwrap_or(2.0);
    let points = p.points.unwrap_or(40);
    if !(lo > 0.0 && hi > lo) || points < 2 {
        return Err(CliError::Usage(format!(
            "free-energy needs 0 < theta_min < theta_max and points >= 2, got [{lo}, {hi}] with {points} points"
        )));
    }
    let mut table = ResultTable::new(["theta", "F_A", "dF_dtheta"]);
    for i in 0..points {
        let th = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        table.push_row(vec![
            th.into(),
            mode_free_energy(th, beta, omega).into(),
            free_energy_gradient(th, beta, omega).into(),
        ])?;
    }
    let star = stationary_theta(beta, omega)?;
    let bose = bose_occupation(beta, omega);
    let s2 = star.sinh().powi(2);
    let h = 1e-3 * star;
    let curvature = (free_energy_gradient(star + h, beta, omega)
        - free_energy_gradient(star - h, beta, omega))
        / (2.0 * h);
    table.set_meta("beta", beta);
    table.set_meta("omega", omega);
    table.set_meta("theta_star", star);
    table.set_meta("sinh2_theta_star", s2);
    table.set_meta("bose_occupation", bose);
    table.set_meta("curvature_at_theta_star", curvature);
    let mut report = Report::new(table);
    report.below("bose_identification", (s2 - bose).abs(), tol);
    report.above("curvature", curvature, 0.0);
    Ok(report)
}

fn entangle(p: &Params) -> Result<Report, CliError> {
    let theta = p.theta.unwrap_or(0.5);
    let cutoff = p.cutoff.unwrap_or_else(|| tail_cutoff(theta));
    let tol = p.tol.unwrap_or(1e-10);
    let kind = p.construction.unwrap_or(VacuumKind::Four);
    let vac = vacuum_of(kind, theta, cutoff)?;
    let table = entanglement_report(&vac)?;
    let weight = table.column("sector_weight").unwrap_or_default();
    let expected = table.column("W_n").unwrap_or_default();
    let ranks = table.column("schmidt_rank").unwrap_or_default();
    let mut report = Report::new(table.clone());
    let n_checked = cutoff.min(8);
    let weight_dev = (0..=n_checked)
        .map(|n| (weight[n] - expected[n]).abs())
        .fold(0.0, f64::max);
    report.below("sector_weights", weight_dev, tol);
    if theta != 0.0 {
        let rank_dev = (0..=n_checked)
            .map(|n| {
                let want = match kind {
                    VacuumKind::Pair => 1.0,
                    VacuumKind::Four => n as f64 + 1.0,
                };
                (ranks[n] - want).abs()
            })
            .fold(0.0, f64::max);
        report.below("schmidt_ranks", rank_dev, 0.5);
    }
    let reduced = table.meta_value("reduced_entropy").and_then(Value::as_real);
    let closed = table
        .meta_value("reduced_entropy_closed_form")
        .and_then(Value::as_real);
    if let (Some(r), Some(c)) = (reduced, closed) {
        report.below("reduced_entropy", (r - c).abs(), 1e-8);
    }
    Ok(report)
}

fn dissipate(p: &Params) -> Result<Report, CliError> {
    let spec = p
        .schedule
        .clone()
        .unwrap_or_else(|| "quasistatic:1:1.5".into());
    let kind = ScheduleKind::parse(&spec)?;
    let grid = TimeGrid::new(
        p.t0.unwrap_or(0.0),
        p.dt.unwrap_or(0.0025),
        p.steps.unwrap_or(400),
    )?;
    let schedule = ThetaSchedule::new(kind, grid)?;
    let omega = p.omega.unwrap_or(1.0);
    let beta = p.beta.unwrap_or(1.0);
    let modes = ModeSpec::uniform(p.modes.unwrap_or(1), omega, 0.5)?;
    let trace = evolve(&schedule, &modes, beta)?;
    let mut table = trace.to_table()?;
    table.set_meta("schedule", kind.name());
    let mid = grid.time(grid.steps / 2);
    if grid.steps >= 2 {
        // informational: the finite-difference error at the grid step is
        // O(dt^2) and not held to a tolerance here
        let h = heisenberg_residual(&schedule, mid, omega, 12)?;
        table.set_meta("heisenberg_residual_mid", h);
    }
    let overlap_end = trace.records.last().map(|r| r.overlap).unwrap_or(1.0);
    table.set_meta("overlap_final", overlap_end);
    let drift = trace.conservation_drift();
    let balance = trace.balance_residuals().into_iter().fold(0.0, f64::max);
    table.set_meta("max_balance_residual", balance);
    let mut report = Report::new(table);
    report.below("conservation_drift", drift, 1e-9);
    if matches!(kind, ScheduleKind::QuasiStatic { .. }) {
        report.below("quasi_static_balance", balance, p.tol.unwrap_or(1e-6));
    }
    Ok(report)
}
