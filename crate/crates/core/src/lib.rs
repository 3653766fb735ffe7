//! Numerical realization of the deformed Hopf-algebra structure of bosonic
//! fields on truncated Fock spaces.
//!
//! * [`fock`]: spaces, dense operators, states, partial traces, `exp`.
//! * [`hopf`]: `h(1)`, `h_q(1)`, q-numbers, primitive and deformed coproducts.
//! * [`bogoliubov`]: Bogoliubov pairs `A(theta)`, `B(theta)` from deformed
//!   coproducts, their generator and theta translations.
//! * [`thermofield`]: theta-vacua, entropy operator, free energy, pair weights
//!   and entanglement reports.
//! * [`dissipation`]: time-dependent theta, heat term and evolution traces.
//! * [`table`]: tabular results with CSV and JSON writers.
//!
//! Units have `hbar = 1` throughout.

pub mod bogoliubov;
pub mod dissipation;
mod error;
pub mod fock;
pub mod hopf;
pub mod table;
pub mod thermofield;

pub use error::{Error, Result};
pub use fock::{DensityMatrix, Operator, SpaceDescriptor, StateVector};
pub use table::{ResultTable, Value};
