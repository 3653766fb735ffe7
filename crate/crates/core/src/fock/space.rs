//! Truncated multi-mode Fock space layout.
//!
//! A space is an ordered list of bosonic factors, each truncated at an
//! occupation cutoff `n_max`. Basis states are indexed row-major over the
//! factors in declaration order: the last factor varies fastest.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub label: String,
    pub cutoff: usize,
}

impl Factor {
    pub fn dim(&self) -> usize {
        self.cutoff + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SpaceDescriptor {
    factors: Vec<Factor>,
    #[serde(skip)]
    strides: Vec<usize>,
    #[serde(skip)]
    total_dim: usize,
}

impl SpaceDescriptor {
    /// Builds a space from `(label, cutoff)` pairs.
    pub fn new<S: Into<String>>(modes: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let factors: Vec<Factor> = modes
            .into_iter()
            .map(|(label, cutoff)| Factor {
                label: label.into(),
                cutoff,
            })
            .collect();
        Self::from_factors(factors)
    }

    pub fn from_factors(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (i, f) in factors.iter().enumerate() {
            if f.cutoff == 0 {
                return Err(Error::ZeroCutoff(f.label.clone()));
            }
            if factors[..i].iter().any(|g| g.label == f.label) {
                return Err(Error::DuplicateLabel(f.label.clone()));
            }
        }
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].dim();
        }
        let total_dim = strides[0] * factors[0].dim();
        Ok(Self {
            factors,
            strides,
            total_dim,
        })
    }

    /// Single-mode space `[(label, cutoff)]`.
    pub fn single(label: impl Into<String>, cutoff: usize) -> Result<Self> {
        Self::new([(label.into(), cutoff)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn factor_dim(&self, position: usize) -> usize {
        self.factors[position].dim()
    }

    pub fn stride(&self, position: usize) -> usize {
        self.strides[position]
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.factors
            .iter()
            .position(|f| f.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub(crate) fn check_position(&self, position: usize) -> Result<()> {
        if position < self.factors.len() {
            Ok(())
        } else {
            Err(Error::FactorOutOfRange {
                position,
                factors: self.factors.len(),
            })
        }
    }

    /// The single-factor space of the factor at `position`.
    pub fn factor_space(&self, position: usize) -> Result<SpaceDescriptor> {
        self.check_position(position)?;
        Self::from_factors(vec![self.factors[position].clone()])
    }

    /// Basis index of an occupation tuple.
    pub fn index_of(&self, occupations: &[usize]) -> Option<usize> {
        if occupations.len() != self.factors.len() {
            return None;
        }
        let mut idx = 0;
        for ((&n, f), &s) in occupations.iter().zip(&self.factors).zip(&self.strides) {
            if n > f.cutoff {
                return None;
            }
            idx += n * s;
        }
        Some(idx)
    }

    /// Occupation tuple of a basis index.
    pub fn occupations(&self, mut index: usize) -> Vec<usize> {
        let mut occ = Vec::with_capacity(self.factors.len());
        for &s in &self.strides {
            occ.push(index / s);
            index %= s;
        }
        occ
    }

    pub fn occupation_of(&self, index: usize, position: usize) -> usize {
        (index / self.strides[position]) % self.factors[position].dim()
    }

    /// Basis indices whose every occupation is at most `cutoff - margin`.
    ///
    /// Truncation corrupts ladder relations only near the top levels, so
    /// commutator identities are compared on these low sub-blocks. A margin of
    /// 2 is the "below cutoff - 1" block.
    pub fn low_indices(&self, margin: usize) -> Vec<usize> {
        self.indices_below(|f| f.cutoff.checked_sub(margin))
    }

    /// Basis indices whose every occupation is at most `max_occupation`.
    pub fn indices_with_max_occupation(&self, max_occupation: usize) -> Vec<usize> {
        self.indices_below(|_| Some(max_occupation))
    }

    fn indices_below(&self, limit: impl Fn(&Factor) -> Option<usize>) -> Vec<usize> {
        let limits: Vec<Option<usize>> = self.factors.iter().map(limit).collect();
        if limits.iter().any(Option::is_none) {
            return Vec::new();
        }
        (0..self.total_dim)
            .filter(|&i| {
                limits
                    .iter()
                    .enumerate()
                    .all(|(p, l)| self.occupation_of(i, p) <= l.unwrap())
            })
            .collect()
    }

    /// Concatenation of two spaces; labels must stay unique.
    pub fn product(&self, other: &SpaceDescriptor) -> Result<SpaceDescriptor> {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::from_factors(factors)
    }
}

impl<'de> Deserialize<'de> for SpaceDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            factors: Vec<Factor>,
        }
        let raw = Raw::deserialize(d)?;
        Self::from_factors(raw.factors).map_err(serde::de::Error::custom)
    }
}
