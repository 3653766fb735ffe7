//! Decomposition of a theta-vacuum into pair sectors.
//!
//! The order-`n` sector holds the basis states with `n` pairs in total. In
//! the four-mode layout its states `|n+, n-, n-, n+>` with `n+ + n- = n` are
//! distinct on both sides of the `(+) | (-)` split, so the normalized sector
//! state has Schmidt rank `n + 1` with equal coefficients.

use num_complex::Complex64;

use super::entropy::entropy_closed_form;
use super::vacuum::{Layout, ThetaVacuum};
use super::weights::weights;
use crate::error::Result;
use crate::fock::{partial_trace, schmidt_coefficients, StateVector};
use crate::table::ResultTable;

/// Relative cut for counting Schmidt coefficients.
pub const SCHMIDT_REL_TOL: f64 = 1e-10;

fn keep_set(layout: Layout) -> Vec<usize> {
    match layout {
        Layout::Pair => vec![0],
        Layout::FourMode => vec![0, 1],
    }
}

/// Schmidt rank and entanglement entropy of a (not necessarily normalized)
/// state across `keep | rest`.
fn schmidt_summary(psi: &StateVector, keep: &[usize]) -> Result<(usize, f64)> {
    let sv = schmidt_coefficients(psi, keep)?;
    let top = sv.first().copied().unwrap_or(0.0);
    let kept: Vec<f64> = sv
        .into_iter()
        .filter(|&s| s > SCHMIDT_REL_TOL * top)
        .collect();
    let norm: f64 = kept.iter().map(|s| s * s).sum();
    let entropy = kept
        .iter()
        .map(|s| s * s / norm)
        .map(|p| -p * p.ln())
        .sum::<f64>();
    Ok((kept.len(), entropy.max(0.0)))
}

/// Per mode and order `n`: sector weight, expected `W_n`, Schmidt rank and
/// entropy of the normalized sector across the `(+) | (-)` split (`A | B`
/// for pairs). Metadata carries the total reduced entropy and its closed
/// form.
pub fn entanglement_report(vacuum: &ThetaVacuum) -> Result<ResultTable> {
    let layout = vacuum.layout();
    let keep = keep_set(layout);
    let mut table = ResultTable::new([
        "mode",
        "n",
        "sector_weight",
        "W_n",
        "schmidt_rank",
        "sector_entropy",
    ]);
    let mut total_entropy = 0.0;
    let mut closed_entropy = 0.0;
    for (k, (m, psi)) in vacuum.modes().iter().zip(vacuum.states()).enumerate() {
        let cutoff = vacuum.cutoffs()[k];
        let channels = match layout {
            Layout::Pair => vec![m.theta],
            Layout::FourMode => vec![m.theta, m.theta],
        };
        let expected = weights(&channels, cutoff)?.order_weights();
        let space = psi.space();
        let orders: Vec<Option<usize>> = (0..space.total_dim())
            .map(|i| layout.pair_order(&space.occupations(i)))
            .collect();
        for n in 0..=cutoff {
            let amps: Vec<Complex64> = psi
                .amplitudes()
                .iter()
                .zip(&orders)
                .map(|(&z, &o)| {
                    if o == Some(n) {
                        z
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
            let sector = StateVector::new(space, amps)?;
            let weight = sector.norm().powi(2);
            let (rank, entropy) = if weight > 0.0 {
                schmidt_summary(&sector, &keep)?
            } else {
                (0, 0.0)
            };
            table.push_row(vec![
                m.label.as_str().into(),
                n.into(),
                weight.into(),
                expected[n].into(),
                rank.into(),
                entropy.into(),
            ])?;
        }
        total_entropy += partial_trace(psi, &keep)?.von_neumann_entropy();
        closed_entropy += channels.len() as f64 * entropy_closed_form(m.theta);
    }
    table.set_meta("layout", layout.name());
    table.set_meta("construction", vacuum.construction().name());
    table.set_meta(
        "truncation_tail",
        vacuum.tails().into_iter().fold(0.0, f64::max),
    );
    table.set_meta("reduced_entropy", total_entropy);
    table.set_meta("reduced_entropy_closed_form", closed_entropy);
    Ok(table)
}
