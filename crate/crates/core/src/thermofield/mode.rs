use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One field mode: label, frequency `omega > 0` and deformation angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    pub label: String,
    pub omega: f64,
    pub theta: f64,
}

impl ModeSpec {
    pub fn new(label: impl Into<String>, omega: f64, theta: f64) -> Result<Self> {
        let mode = Self {
            label: label.into(),
            omega,
            theta,
        };
        mode.validate()?;
        Ok(mode)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.theta.is_finite() {
            return Err(Error::NonFinite {
                name: "theta",
                value: self.theta,
            });
        }
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::NonPositive {
                name: "omega",
                value: self.omega,
            });
        }
        Ok(())
    }

    /// `K` identical modes labelled `k0 .. k{K-1}`.
    pub fn uniform(count: usize, omega: f64, theta: f64) -> Result<Vec<Self>> {
        (0..count)
            .map(|i| Self::new(format!("k{i}"), omega, theta))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_must_be_positive() {
        assert!(ModeSpec::new("k", 0.0, 0.1).is_err());
        assert!(ModeSpec::new("k", 1.0, f64::NAN).is_err());
        assert_eq!(ModeSpec::uniform(3, 1.0, 0.2).unwrap()[2].label, "k2");
    }
}
