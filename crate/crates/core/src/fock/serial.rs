//! Flat JSON encoding of operators and states for golden files.
//!
//! ```json
//! {"space": {"factors": [{"label": "A", "cutoff": 2}]}, "data": [[re, im], ...]}
//! ```
//!
//! Operator data is row-major, `total_dim * total_dim` pairs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::operator::Operator;
use super::space::SpaceDescriptor;
use super::state::StateVector;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct Encoded {
    space: SpaceDescriptor,
    data: Vec<[f64; 2]>,
}

fn pairs<'a>(it: impl Iterator<Item = &'a Complex64>) -> Vec<[f64; 2]> {
    it.map(|z| [z.re, z.im]).collect()
}

fn ser(e: &Encoded) -> Result<String> {
    serde_json::to_string(e).map_err(|e| Error::Serialization(e.to_string()))
}

fn de(s: &str) -> Result<Encoded> {
    serde_json::from_str(s).map_err(|e| Error::Serialization(e.to_string()))
}

pub fn operator_to_json(op: &Operator) -> Result<String> {
    // nalgebra stores column-major; the transpose iterates rows first.
    ser(&Encoded {
        space: op.space().clone(),
        data: pairs(op.matrix().transpose().iter()),
    })
}

pub fn operator_from_json(s: &str) -> Result<Operator> {
    let e = de(s)?;
    let d = e.space.total_dim();
    if e.data.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: e.data.len(),
        });
    }
    let m = DMatrix::from_row_iterator(d, d, e.data.iter().map(|p| Complex64::new(p[0], p[1])));
    Operator::from_matrix(&e.space, m)
}

pub fn state_to_json(state: &StateVector) -> Result<String> {
    ser(&Encoded {
        space: state.space().clone(),
        data: pairs(state.amplitudes().iter()),
    })
}

pub fn state_from_json(s: &str) -> Result<StateVector> {
    let e = de(s)?;
    StateVector::new(
        &e.space,
        e.data.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
    )
}
