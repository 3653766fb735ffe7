//! Matrix exponential by scaling and squaring with a Taylor kernel.
//!
//! The operator is scaled by `2^-s` until its 1-norm is at most
//! [`SCALED_NORM`], the Taylor series is summed until the terms stop
//! contributing, and the result is squared `s` times. As a convergence
//! self-check the series is then continued to twice the order reached; the
//! two partial sums must agree to [`SELF_CHECK_TOL`].

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::operator::{matmul, Operator};
use crate::error::{Error, Result};

pub const SCALED_NORM: f64 = 0.5;
pub const SELF_CHECK_TOL: f64 = 1e-12;
const MAX_ORDER: usize = 60;

pub fn matrix_exp(op: &Operator) -> Result<Operator> {
    let norm = op.one_norm();
    if !norm.is_finite() {
        return Err(Error::NonFinite {
            name: "operator norm",
            value: norm,
        });
    }
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = op.matrix() * Complex64::new(2f64.powi(-squarings), 0.0);
    let mut result = taylor_kernel(&scaled)?;
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    Operator::from_matrix(op.space(), result)
}

fn taylor_kernel(x: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let n = x.nrows();
    let mut sum = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    let mut order = 0;
    while order < MAX_ORDER {
        order += 1;
        term = matmul(&term, x) * Complex64::new(1.0 / order as f64, 0.0);
        sum += &term;
        if one_norm(&term) <= f64::EPSILON * 1e-2 * one_norm(&sum) {
            break;
        }
    }
    let partial = sum.clone();
    for k in order + 1..=2 * order {
        term = matmul(&term, x) * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    let change = one_norm(&(&sum - &partial)) / one_norm(&sum).max(1.0);
    if change >= SELF_CHECK_TOL {
        return Err(Error::ExpNotConverged { change });
    }
    Ok(sum)
}

fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::space::SpaceDescriptor;

    #[test]
    fn exp_of_zero_is_identity() {
        let s = SpaceDescriptor::new([("a", 2), ("b", 2)]).unwrap();
        let e = matrix_exp(&Operator::zeros(&s)).unwrap();
        assert_eq!(e, Operator::identity(&s));
    }

    #[test]
    fn exp_of_diagonal() {
        let s = SpaceDescriptor::single("k", 4).unwrap();
        let lam = [-3.0, -0.5, 0.0, 1.25, 4.0];
        let d: Vec<Complex64> = lam.iter().map(|&l| Complex64::new(l, 0.3 * l)).collect();
        let e = matrix_exp(&Operator::diagonal(&s, &d).unwrap()).unwrap();
        for (i, z) in d.iter().enumerate() {
            let want = z.exp();
            assert!((e.get(i, i) - want).norm() <= 1e-13 * want.norm());
        }
    }
}
