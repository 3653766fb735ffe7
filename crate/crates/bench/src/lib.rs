//! Shared fixtures for the criterion benchmarks.

use num_complex::Complex64;
use qhopf::bogoliubov::{generator, pair_space};
use qhopf::Operator;

/// `i theta G` on a pair space, the argument of the vacuum exponential.
pub fn vacuum_exponent(theta: f64, cutoff: usize) -> Operator {
    let space = pair_space(cutoff).expect("valid cutoff");
    generator(&space)
        .expect("two-factor space")
        .scale(Complex64::new(0.0, theta))
}
