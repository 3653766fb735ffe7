//! Density matrices, partial traces and entanglement entropy.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::operator::{matmul, ZERO};
use super::space::{Factor, SpaceDescriptor};
use super::state::StateVector;
use crate::error::{Error, Result};

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-10;
/// Eigenvalues below this are treated as exact zeros in entropy sums.
pub const EIGEN_CLAMP: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    space: SpaceDescriptor,
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(space: &SpaceDescriptor, matrix: DMatrix<Complex64>) -> Result<Self> {
        let d = space.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.nrows(),
            });
        }
        let herm = (&matrix - matrix.adjoint())
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if herm >= HERMITICITY_TOL {
            return Err(Error::NotDensityMatrix(format!(
                "hermiticity residual {herm:e}"
            )));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::NotDensityMatrix(format!("trace {tr}")));
        }
        let dm = Self {
            space: space.clone(),
            matrix,
        };
        let min = dm
            .eigenvalues_raw()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -PSD_TOL {
            return Err(Error::NotDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(dm)
    }

    /// `|psi><psi|` of a state, normalized on the way in.
    pub fn from_pure(state: &StateVector) -> Result<Self> {
        let psi = state.normalize()?;
        let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
        Self::new(psi.space(), &v * v.adjoint())
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    fn eigenvalues_raw(&self) -> Vec<f64> {
        // Hermitian input: symmetrize away roundoff before the eigensolver.
        let h = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().collect()
    }

    /// Eigenvalues in descending order, with values below `EIGEN_CLAMP`
    /// clamped to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .eigenvalues_raw()
            .into_iter()
            .map(|l| if l < EIGEN_CLAMP { 0.0 } else { l })
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    /// `-sum l ln l` over the spectrum, with `0 ln 0 = 0`.
    pub fn von_neumann_entropy(&self) -> f64 {
        self.eigenvalues()
            .into_iter()
            .filter(|&l| l > 0.0)
            .map(|l| -l * l.ln())
            .sum()
    }

    pub fn purity(&self) -> f64 {
        matmul(&self.matrix, &self.matrix).trace().re
    }

    /// Reduced density matrix on the kept factors.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let split = Split::new(&self.space, keep)?;
        let dk = split.kept.total_dim();
        let mut out = DMatrix::from_element(dk, dk, ZERO);
        let n = self.space.total_dim();
        let idx: Vec<(usize, usize)> = (0..n).map(|i| split.locate(i)).collect();
        for c in 0..n {
            let (kc, rc) = idx[c];
            for r in 0..n {
                let (kr, rr) = idx[r];
                if rr == rc {
                    out[(kr, kc)] += self.matrix[(r, c)];
                }
            }
        }
        DensityMatrix::new(&split.kept, out)
    }
}

/// Reduced density matrix of a pure state on the kept factors.
pub fn partial_trace(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let psi = state.normalize()?;
    let split = Split::new(psi.space(), keep)?;
    let m = split.coefficients(&psi);
    DensityMatrix::new(&split.kept, matmul(&m, &m.adjoint()))
}

/// Von Neumann entropy of a density matrix.
pub fn von_neumann_entropy(dm: &DensityMatrix) -> f64 {
    dm.von_neumann_entropy()
}

/// Schmidt coefficients (singular values, descending) of a pure state across
/// the cut `keep | rest`. The state is used as given, without normalizing.
pub fn schmidt_coefficients(state: &StateVector, keep: &[usize]) -> Result<Vec<f64>> {
    let split = Split::new(state.space(), keep)?;
    let m = compact(&split.coefficients(state));
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Drops all-zero rows and columns, which carry no singular values.
fn compact(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let rows: Vec<usize> = (0..m.nrows())
        .filter(|&r| m.row(r).iter().any(|&z| z != ZERO))
        .collect();
    let cols: Vec<usize> = (0..m.ncols())
        .filter(|&c| m.column(c).iter().any(|&z| z != ZERO))
        .collect();
    if rows.is_empty() || cols.is_empty() {
        return DMatrix::from_element(1, 1, ZERO);
    }
    DMatrix::from_fn(rows.len(), cols.len(), |r, c| m[(rows[r], cols[c])])
}

/// Number of Schmidt coefficients above `rel_tol` times the largest.
pub fn schmidt_rank(state: &StateVector, keep: &[usize], rel_tol: f64) -> Result<usize> {
    let sv = schmidt_coefficients(state, keep)?;
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > rel_tol * top).count())
}

/// Bookkeeping for a bipartition of the factors.
struct Split {
    space: SpaceDescriptor,
    keep: Vec<usize>,
    rest: Vec<usize>,
    kept: SpaceDescriptor,
    rest_dim: usize,
}

impl Split {
    fn new(space: &SpaceDescriptor, keep: &[usize]) -> Result<Self> {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() || keep.len() >= space.num_factors() {
            return Err(Error::InvalidKeepSet);
        }
        for &p in &keep {
            space.check_position(p)?;
        }
        let rest: Vec<usize> = (0..space.num_factors())
            .filter(|p| !keep.contains(p))
            .collect();
        let kept_factors: Vec<Factor> = keep.iter().map(|&p| space.factors()[p].clone()).collect();
        let kept = SpaceDescriptor::from_factors(kept_factors)?;
        let rest_dim = rest.iter().map(|&p| space.factor_dim(p)).product();
        Ok(Self {
            space: space.clone(),
            keep,
            rest,
            kept,
            rest_dim,
        })
    }

    /// (kept index, rest index) of a full-space basis index.
    fn locate(&self, index: usize) -> (usize, usize) {
        let mut k = 0;
        for &p in &self.keep {
            k = k * self.space.factor_dim(p) + self.space.occupation_of(index, p);
        }
        let mut r = 0;
        for &p in &self.rest {
            r = r * self.space.factor_dim(p) + self.space.occupation_of(index, p);
        }
        (k, r)
    }

    /// Coefficient matrix `M[kept, rest]` of a pure state.
    fn coefficients(&self, psi: &StateVector) -> DMatrix<Complex64> {
        let mut m = DMatrix::from_element(self.kept.total_dim(), self.rest_dim, ZERO);
        for (i, &z) in psi.amplitudes().iter().enumerate() {
            if z != ZERO {
                let (k, r) = self.locate(i);
                m[(k, r)] = z;
            }
        }
        m
    }
}
