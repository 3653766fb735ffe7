//! Pair-sector weights
//! `W_n = prod_k sinh^{2 n_k}(theta_k) / cosh^{2 (n_k + 1)}(theta_k)`
//! over occupation multi-indices `n = (n_k)`.

use crate::error::{Error, Result};

/// Largest number of multi-indices a distribution may enumerate.
pub const MAX_ENTRIES: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightDistribution {
    thetas: Vec<f64>,
    n_max: usize,
    weights: Vec<f64>,
    tail: f64,
}

/// Per-mode factors `tanh^{2n} / cosh^2`, `n = 0..=n_max`.
fn mode_weights(theta: f64, n_max: usize) -> Vec<f64> {
    let t2 = theta.tanh().powi(2);
    let mut w = 1.0 / theta.cosh().powi(2);
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        out.push(w);
        w *= t2;
    }
    out
}

/// Weights for every multi-index with all `n_k <= n_max`. At `theta_k = 0`
/// the mode factor is the degenerate `W_0 = 1`, `W_{n>0} = 0`.
pub fn weights(thetas: &[f64], n_max: usize) -> Result<WeightDistribution> {
    if thetas.is_empty() {
        return Err(Error::EmptySpace);
    }
    let per_mode = n_max + 1;
    let count = thetas
        .iter()
        .try_fold(1usize, |acc, _| acc.checked_mul(per_mode))
        .filter(|&c| c <= MAX_ENTRIES)
        .ok_or(Error::DimensionMismatch {
            expected: MAX_ENTRIES,
            found: usize::MAX,
        })?;
    for &t in thetas {
        if !t.is_finite() {
            return Err(Error::NonFinite {
                name: "theta",
                value: t,
            });
        }
    }
    let mut weights = vec![1.0; 1];
    for &t in thetas {
        let m = mode_weights(t, n_max);
        weights = weights
            .iter()
            .flat_map(|&w| m.iter().map(move |&x| w * x))
            .collect();
    }
    debug_assert_eq!(weights.len(), count);
    // tail = 1 - prod_k (1 - tanh^{2(n_max+1)} theta_k)
    let log_kept: f64 = thetas
        .iter()
        .map(|&t| (-crate::fock::truncation_tail(t, n_max)).ln_1p())
        .sum();
    Ok(WeightDistribution {
        thetas: thetas.to_vec(),
        n_max,
        weights,
        tail: -log_kept.exp_m1(),
    })
}

impl WeightDistribution {
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Weight discarded by the `n_max` cut, `1 - sum W_n` in exact arithmetic.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn index(&self, occupations: &[usize]) -> Option<usize> {
        if occupations.len() != self.thetas.len() || occupations.iter().any(|&n| n > self.n_max) {
            return None;
        }
        Some(
            occupations
                .iter()
                .fold(0, |acc, &n| acc * (self.n_max + 1) + n),
        )
    }

    pub fn weight(&self, occupations: &[usize]) -> Option<f64> {
        self.index(occupations).map(|i| self.weights[i])
    }

    /// `(multi-index, W_n)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let k = self.thetas.len();
        let base = self.n_max + 1;
        self.weights.iter().enumerate().map(move |(mut i, &w)| {
            let mut occ = vec![0; k];
            for slot in occ.iter_mut().rev() {
                *slot = i % base;
                i /= base;
            }
            (occ, w)
        })
    }

    /// Sum of all enumerated weights.
    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Weight of each total order `sum_k n_k = n`, `n = 0..=n_max`.
    pub fn order_weights(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n_max + 1];
        for (occ, w) in self.entries() {
            let n: usize = occ.iter().sum();
            if n <= self.n_max {
                out[n] += w;
            }
        }
        out
    }

    /// Marginal distribution of mode `k`.
    pub fn marginal(&self, k: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.n_max + 1];
        for (occ, w) in self.entries() {
            out[occ[k]] += w;
        }
        out
    }
}
