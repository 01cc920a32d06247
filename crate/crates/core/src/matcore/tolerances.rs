use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by every decision procedure.
///
/// `tol_herm`, `tol_psd`, `tol_inv` and `tol_eq` are relative; `tol_spec` is a
/// distance in the complex plane; `guard` widens each threshold into a band
/// whose interior is reported as indeterminate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub tol_herm: f64,
    pub tol_psd: f64,
    pub tol_inv: f64,
    pub tol_spec: f64,
    pub tol_eq: f64,
    pub guard: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_herm: 1e-10,
            tol_psd: 1e-9,
            tol_inv: 1e-10,
            tol_spec: 1e-7,
            tol_eq: 1e-9,
            guard: 10.0,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 6] = ["tol_herm", "tol_psd", "tol_inv", "tol_spec", "tol_eq", "guard"];

    /// Zero is accepted so that a threshold can be switched off for fault injection.
    pub fn validate(&self) -> Result<()> {
        for (key, value) in Self::KEYS.iter().zip(self.values()) {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidTolerance(format!("{key} = {value} must be finite and >= 0")));
            }
        }
        if self.guard < 1.0 {
            return Err(Error::InvalidTolerance(format!("guard = {} must be >= 1", self.guard)));
        }
        Ok(())
    }

    fn values(&self) -> [f64; 6] {
        [self.tol_herm, self.tol_psd, self.tol_inv, self.tol_spec, self.tol_eq, self.guard]
    }

    /// Applies a `KEY=VALUE` override.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = match key {
            "tol_herm" => &mut self.tol_herm,
            "tol_psd" => &mut self.tol_psd,
            "tol_inv" => &mut self.tol_inv,
            "tol_spec" => &mut self.tol_spec,
            "tol_eq" => &mut self.tol_eq,
            "guard" => &mut self.guard,
            other => return Err(Error::InvalidTolerance(format!("unknown key {other:?}"))),
        };
        *slot = value;
        self.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        Tolerances::default().validate().unwrap();
    }

    #[test]
    fn overrides() {
        let mut t = Tolerances::default();
        t.set("tol_psd", 0.0).unwrap();
        assert_eq!(t.tol_psd, 0.0);
        assert!(t.set("guard", 0.5).is_err());
        assert!(t.set("tol_bogus", 1.0).is_err());
        let mut t = Tolerances::default();
        assert!(t.set("tol_eq", -1.0).is_err());
    }
}
