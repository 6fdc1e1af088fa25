use serde::{Deserialize, Serialize};

use super::Potential;
use crate::error::{Error, Result};
use crate::units::{amu_to_me, cm_to_hartree};

/// V(R) = D_e (1 − e^{−a(R−R_e)})² − D_e.
///
/// The range parameter `a` follows from ω_e, D_e and the reduced mass and is
/// never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorsePotential {
    pub de: f64,
    pub re: f64,
    pub we: f64,
    pub reduced_mass: f64,
}

impl MorsePotential {
    /// Depth and harmonic constant in cm⁻¹, `re` in a₀, `mu` in u.
    pub fn new(de: f64, re: f64, we: f64, mu: f64) -> Result<Self> {
        for (name, x) in [("de", de), ("re", re), ("we", we), ("reduced mass", mu)] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::Domain(format!("Morse {name} must be positive, got {x}")));
            }
        }
        Ok(MorsePotential { de, re, we, reduced_mass: mu })
    }

    /// a = ω_e √(μ / 2D_e), in a₀⁻¹.
    pub fn range_parameter(&self) -> f64 {
        let we = cm_to_hartree(self.we);
        let de = cm_to_hartree(self.de);
        we * (amu_to_me(self.reduced_mass) / (2.0 * de)).sqrt()
    }

    /// ω_e x_e = ω_e² / 4D_e.
    pub fn anharmonicity(&self) -> f64 {
        self.we * self.we / (4.0 * self.de)
    }
}

impl Potential for MorsePotential {
    fn value(&self, r: f64) -> f64 {
        if r == self.re {
            return -self.de;
        }
        let x = 1.0 - (-self.range_parameter() * (r - self.re)).exp();
        self.de * x * x - self.de
    }

    fn search_range(&self) -> (f64, f64) {
        (0.5 * self.re, 4.0 * self.re)
    }
}

/// Closed-form Morse term values E_v = −D_e + ω_e(v+½) − ω_e x_e (v+½)²
/// for every bound level, v = 0 ..= ⌊2D_e/ω_e − ½⌋.
pub fn morse_levels_analytic(p: &MorsePotential, v_max_request: Option<u32>) -> Vec<(u32, f64)> {
    let lambda = 2.0 * p.de / p.we;
    let wexe = p.anharmonicity();
    let mut levels = Vec::new();
    let mut v = 0u32;
    loop {
        let x = f64::from(v) + 0.5;
        if x >= lambda || v_max_request.is_some_and(|m| v > m) {
            break;
        }
        let e = -p.de + p.we * x - wexe * x * x;
        if e >= 0.0 {
            break;
        }
        levels.push((v, e));
        v += 1;
    }
    levels
}
