use serde::{Deserialize, Serialize};

use super::Potential;
use crate::error::{Error, Result};
use crate::units::{amu_to_me, cm_to_hartree, HARTREE_TO_CM};

/// V(R) = −depth + ½k(R − R_e)², with k fixed by the harmonic constant.
///
/// Mostly a test fixture: every level is known in closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicWell {
    pub depth: f64,
    pub re: f64,
    pub we: f64,
    pub reduced_mass: f64,
}

impl HarmonicWell {
    pub fn new(depth: f64, re: f64, we: f64, mu: f64) -> Result<Self> {
        for (name, x) in [("depth", depth), ("re", re), ("we", we), ("reduced mass", mu)] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::Domain(format!("harmonic {name} must be positive, got {x}")));
            }
        }
        Ok(HarmonicWell { depth, re, we, reduced_mass: mu })
    }

    /// Force constant in cm⁻¹/a₀².
    pub fn force_constant(&self) -> f64 {
        let w = cm_to_hartree(self.we);
        amu_to_me(self.reduced_mass) * w * w * HARTREE_TO_CM
    }

    /// E_v = −depth + ω_e (v + ½).
    pub fn level(&self, v: u32) -> f64 {
        -self.depth + self.we * (f64::from(v) + 0.5)
    }
}

impl Potential for HarmonicWell {
    fn value(&self, r: f64) -> f64 {
        let x = r - self.re;
        -self.depth + 0.5 * self.force_constant() * x * x
    }

    fn search_range(&self) -> (f64, f64) {
        let half = (4.0 * self.depth / self.force_constant()).sqrt();
        ((self.re - half).max(0.1 * self.re), self.re + half)
    }
}
