use num_complex::Complex64;

use super::operator::{is_zero, Operator, ZERO};
use super::space::SpaceDescriptor;
use crate::error::{Error, Result};

/// Normalization tolerance applied when the normalized flag is set.
pub const NORM_TOL: f64 = 1e-12;

/// Complex amplitude vector bound to a [`SpaceDescriptor`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: SpaceDescriptor,
    amplitudes: Vec<Complex64>,
    normalized: bool,
}

impl StateVector {
    pub fn new(space: &SpaceDescriptor, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.total_dim(),
                found: amplitudes.len(),
            });
        }
        Ok(Self {
            space: space.clone(),
            amplitudes,
            normalized: false,
        })
    }

    /// Occupation-number basis state.
    pub fn basis(space: &SpaceDescriptor, occupations: &[usize]) -> Result<Self> {
        let idx = space
            .index_of(occupations)
            .ok_or(Error::DimensionMismatch {
                expected: space.num_factors(),
                found: occupations.len(),
            })?;
        let mut amps = vec![ZERO; space.total_dim()];
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(Self {
            space: space.clone(),
            amplitudes: amps,
            normalized: true,
        })
    }

    /// Global Fock vacuum `|0, ..., 0>`.
    pub fn vacuum(space: &SpaceDescriptor) -> Self {
        Self::basis(space, &vec![0; space.num_factors()]).expect("vacuum index exists")
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, occupations: &[usize]) -> Option<Complex64> {
        self.space.index_of(occupations).map(|i| self.amplitudes[i])
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Marks the state as normalized after checking `|norm - 1| <= NORM_TOL`.
    pub fn assert_normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm: n });
        }
        self.normalized = true;
        Ok(self)
    }

    /// Rescaled copy with unit norm.
    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NonPositive {
                name: "state norm",
                value: n,
            });
        }
        let mut s = self.scale(Complex64::new(1.0 / n, 0.0));
        s.normalized = true;
        Ok(s)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            space: self.space.clone(),
            amplitudes: self.amplitudes.iter().map(|z| z * c).collect(),
            normalized: false,
        }
    }

    fn zip_with(
        &self,
        other: &StateVector,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self {
            space: self.space.clone(),
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            normalized: false,
        })
    }

    pub fn plus(&self, other: &StateVector) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &StateVector) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `<self|op|self>`.
    pub fn expectation(&self, op: &Operator) -> Result<Complex64> {
        self.inner(&op.apply(self)?)
    }

    /// Applies a single-factor operator to the factor at `position` without
    /// forming the full-space matrix.
    pub fn apply_local(&self, position: usize, op: &Operator) -> Result<Self> {
        self.space.check_position(position)?;
        let d = self.space.factor_dim(position);
        if op.dim() != d || op.space().num_factors() != 1 {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: op.dim(),
            });
        }
        let stride = self.space.stride(position);
        let block = stride * d;
        let mut out = vec![ZERO; self.amplitudes.len()];
        for c in 0..d {
            for r in 0..d {
                let m = op.get(r, c);
                if is_zero(m) {
                    continue;
                }
                for base in (0..self.amplitudes.len()).step_by(block) {
                    let src = &self.amplitudes[base + c * stride..base + (c + 1) * stride];
                    let dst = &mut out[base + r * stride..base + (r + 1) * stride];
                    for (o, &x) in dst.iter_mut().zip(src) {
                        *o += m * x;
                    }
                }
            }
        }
        Self::new(&self.space, out)
    }

    /// `<self|op_position|self>` for a single-factor operator.
    pub fn expectation_local(&self, position: usize, op: &Operator) -> Result<Complex64> {
        self.inner(&self.apply_local(position, op)?)
    }

    /// Tensor product `self (x) other` on the concatenated space.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let space = self.space.product(&other.space)?;
        let mut amps = Vec::with_capacity(space.total_dim());
        for &a in &self.amplitudes {
            for &b in &other.amplitudes {
                amps.push(a * b);
            }
        }
        Ok(Self {
            space,
            amplitudes: amps,
            normalized: self.normalized && other.normalized,
        })
    }
}
