//! Dense operators on a truncated Fock space.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::space::SpaceDescriptor;
use super::state::StateVector;
use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub(crate) fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// `a * b` for column-major dense matrices.
///
/// Columns of `a` are accumulated only for nonzero entries of `b`; ladder
/// operators and their products are mostly zeros, so this is where almost all
/// of the time goes. Each output column is an independent sequential sum, so
/// the result does not depend on how columns are scheduled.
pub(crate) fn matmul(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (m, k) = a.shape();
    assert_eq!(k, b.nrows(), "inner dimensions differ");
    let n = b.ncols();
    let mut c = DMatrix::from_element(m, n, ZERO);
    let a_s = a.as_slice();
    let b_s = b.as_slice();
    let c_s = c.as_mut_slice();
    for j in 0..n {
        let c_col = &mut c_s[j * m..(j + 1) * m];
        for (l, &blj) in b_s[j * k..(j + 1) * k].iter().enumerate() {
            if is_zero(blj) {
                continue;
            }
            let a_col = &a_s[l * m..(l + 1) * m];
            for (ci, &ai) in c_col.iter_mut().zip(a_col) {
                *ci += ai * blj;
            }
        }
    }
    c
}

/// Complex square matrix bound to a [`SpaceDescriptor`].
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    space: SpaceDescriptor,
    matrix: DMatrix<Complex64>,
}

impl Operator {
    pub fn from_matrix(space: &SpaceDescriptor, matrix: DMatrix<Complex64>) -> Result<Self> {
        let d = space.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: if matrix.nrows() != d {
                    matrix.nrows()
                } else {
                    matrix.ncols()
                },
            });
        }
        Ok(Self {
            space: space.clone(),
            matrix,
        })
    }

    pub fn zeros(space: &SpaceDescriptor) -> Self {
        let d = space.total_dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::from_element(d, d, ZERO),
        }
    }

    pub fn identity(space: &SpaceDescriptor) -> Self {
        let d = space.total_dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::identity(d, d),
        }
    }

    pub fn from_fn(space: &SpaceDescriptor, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let d = space.total_dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::from_fn(d, d, f),
        }
    }

    pub fn diagonal(space: &SpaceDescriptor, values: &[Complex64]) -> Result<Self> {
        let d = space.total_dim();
        if values.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: values.len(),
            });
        }
        let mut op = Self::zeros(space);
        for (i, &v) in values.iter().enumerate() {
            op.matrix[(i, i)] = v;
        }
        Ok(op)
    }

    /// Annihilator `a|n> = sqrt(n)|n-1>` on the named factor, identity elsewhere.
    pub fn annihilator(space: &SpaceDescriptor, label: &str) -> Result<Self> {
        let pos = space.position(label)?;
        let local = local_annihilator(space.factors()[pos].cutoff);
        Self::embed(&local, space, pos)
    }

    pub fn creator(space: &SpaceDescriptor, label: &str) -> Result<Self> {
        Ok(Self::annihilator(space, label)?.adjoint())
    }

    /// Number operator `a^dag a`, built exactly (top level included).
    pub fn number(space: &SpaceDescriptor, label: &str) -> Result<Self> {
        let pos = space.position(label)?;
        let values: Vec<Complex64> = (0..space.total_dim())
            .map(|i| Complex64::new(space.occupation_of(i, pos) as f64, 0.0))
            .collect();
        Self::diagonal(space, &values)
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Matrix element `<bra|op|ket>` between occupation-number basis states.
    pub fn element(&self, bra: &[usize], ket: &[usize]) -> Option<Complex64> {
        Some(self.matrix[(self.space.index_of(bra)?, self.space.index_of(ket)?)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// Adjoint composed with the exchange of the two tensor factors,
    /// `Swap * op^dag * Swap`.
    ///
    /// On the doubled space this is the conjugation compatible with the
    /// deformed coproduct: it sends `a_1` to `a_2^dag` and `a_2` to `a_1^dag`.
    pub fn twisted_adjoint(&self) -> Result<Self> {
        let (d, _) = two_factor_dims(&self.space)?;
        let swap = |i: usize| (i % d) * d + i / d;
        let n = self.dim();
        let mut out = DMatrix::from_element(n, n, ZERO);
        for c in 0..n {
            for r in 0..n {
                let v = self.matrix[(r, c)];
                if !is_zero(v) {
                    // (S X^dag S)[swap(c), swap(r)] = conj(X[r, c])
                    out[(swap(c), swap(r))] = v.conj();
                }
            }
        }
        Ok(Self {
            space: self.space.clone(),
            matrix: out,
        })
    }

    /// Kronecker embedding of a single-factor operator at `position`.
    pub fn embed(op: &Operator, space: &SpaceDescriptor, position: usize) -> Result<Self> {
        Self::local_product(space, &[(position, op)])
    }

    /// Kronecker product of single-factor operators acting on distinct
    /// factors, with identities on the remaining ones.
    pub fn local_product(space: &SpaceDescriptor, terms: &[(usize, &Operator)]) -> Result<Self> {
        let nf = space.num_factors();
        let mut locals: Vec<Option<&Operator>> = vec![None; nf];
        for &(pos, op) in terms {
            space.check_position(pos)?;
            let d = space.factor_dim(pos);
            if op.dim() != d || op.space.num_factors() != 1 {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: op.dim(),
                });
            }
            if locals[pos].replace(op).is_some() {
                return Err(Error::SpaceMismatch);
            }
        }
        // Sparse list of (row, col, value) per factor; identity when absent.
        let entries: Vec<Vec<(usize, usize, Complex64)>> = (0..nf)
            .map(|p| match locals[p] {
                Some(op) => {
                    let d = op.dim();
                    let mut v = Vec::new();
                    for c in 0..d {
                        for r in 0..d {
                            let z = op.matrix[(r, c)];
                            if !is_zero(z) {
                                v.push((r, c, z));
                            }
                        }
                    }
                    v
                }
                None => (0..space.factor_dim(p)).map(|i| (i, i, ONE)).collect(),
            })
            .collect();
        let n = space.total_dim();
        let mut out = DMatrix::from_element(n, n, ZERO);
        let mut acc = vec![(0usize, 0usize, ONE)];
        for (p, list) in entries.iter().enumerate() {
            let s = space.stride(p);
            let mut next = Vec::with_capacity(acc.len() * list.len());
            for &(r0, c0, z0) in &acc {
                for &(r, c, z) in list {
                    next.push((r0 + r * s, c0 + c * s, z0 * z));
                }
            }
            acc = next;
        }
        for (r, c, z) in acc {
            out[(r, c)] = z;
        }
        Ok(Self {
            space: space.clone(),
            matrix: out,
        })
    }

    fn same_space(&self, other: &Operator) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Operator) -> Result<Self> {
        self.same_space(other)?;
        Ok(Self {
            space: self.space.clone(),
            matrix: matmul(&self.matrix, &other.matrix),
        })
    }

    pub fn plus(&self, other: &Operator) -> Result<Self> {
        self.same_space(other)?;
        Ok(Self {
            space: self.space.clone(),
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn minus(&self, other: &Operator) -> Result<Self> {
        self.same_space(other)?;
        Ok(Self {
            space: self.space.clone(),
            matrix: &self.matrix - &other.matrix,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            space: self.space.clone(),
            matrix: &self.matrix * c,
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Operator) -> Result<Self> {
        self.same_space(other)?;
        let xy = matmul(&self.matrix, &other.matrix);
        let yx = matmul(&other.matrix, &self.matrix);
        Ok(Self {
            space: self.space.clone(),
            matrix: xy - yx,
        })
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if self.space != *state.space() {
            return Err(Error::SpaceMismatch);
        }
        let n = self.dim();
        let x = state.amplitudes();
        let mut y = vec![ZERO; n];
        let m = self.matrix.as_slice();
        for (j, &xj) in x.iter().enumerate() {
            if is_zero(xj) {
                continue;
            }
            for (yi, &mij) in y.iter_mut().zip(&m[j * n..(j + 1) * n]) {
                *yi += mij * xj;
            }
        }
        StateVector::new(&self.space, y)
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Largest entry modulus restricted to the rows and columns in `indices`.
    pub fn max_abs_on(&self, indices: &[usize]) -> f64 {
        let mut m = 0.0f64;
        for &c in indices {
            for &r in indices {
                m = m.max(self.matrix[(r, c)].norm());
            }
        }
        m
    }

    /// Largest entry modulus of `self - other` on the sub-block `indices`.
    pub fn deviation_on(&self, other: &Operator, indices: &[usize]) -> Result<f64> {
        self.same_space(other)?;
        let mut m = 0.0f64;
        for &c in indices {
            for &r in indices {
                m = m.max((self.matrix[(r, c)] - other.matrix[(r, c)]).norm());
            }
        }
        Ok(m)
    }

    /// Largest entry modulus of `self - other`.
    pub fn deviation(&self, other: &Operator) -> Result<f64> {
        self.same_space(other)?;
        Ok(self
            .matrix
            .iter()
            .zip(other.matrix.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    /// Largest entry modulus of `self - self^dag`.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim();
        let mut m = 0.0f64;
        for c in 0..n {
            for r in 0..=c {
                m = m.max((self.matrix[(r, c)] - self.matrix[(c, r)].conj()).norm());
            }
        }
        m
    }

    /// Induced 1-norm (largest column sum).
    pub fn one_norm(&self) -> f64 {
        self.matrix
            .column_iter()
            .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// `a` on a single factor with cutoff `n_max`.
pub fn local_annihilator(n_max: usize) -> Operator {
    let space = SpaceDescriptor::single("mode", n_max).expect("cutoff >= 1");
    let mut a = Operator::zeros(&space);
    for n in 1..=n_max {
        a.matrix[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// Factor dimension of a two-factor space with equal cutoffs.
pub(crate) fn two_factor_dims(space: &SpaceDescriptor) -> Result<(usize, usize)> {
    if space.num_factors() != 2 {
        return Err(Error::NotTwoFactor(space.num_factors()));
    }
    let (c1, c2) = (space.factors()[0].cutoff, space.factors()[1].cutoff);
    if c1 != c2 {
        return Err(Error::UnequalCutoffs(c1, c2));
    }
    Ok((c1 + 1, c2 + 1))
}

// Operator-notation conveniences. These panic when the operands live on
// different spaces; use the `Result`-returning methods when that can happen.

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.plus(rhs).expect("operator spaces differ")
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.minus(rhs).expect("operator spaces differ")
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.compose(rhs).expect("operator spaces differ")
    }
}

impl Mul<&Operator> for Complex64 {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        rhs.scale(self)
    }
}

impl Mul<&Operator> for f64 {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        rhs.scale_real(self)
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale_real(-1.0)
    }
}
