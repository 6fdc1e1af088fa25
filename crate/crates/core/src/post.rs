//! Post-processing of electronic-structure energy scans: counterpoise
//! correction of interaction energies and finite-field dipole moments.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::hartree_to_cm;

/// One geometry of a counterpoise scan. Energies in hartree, R in a₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterpoiseRow {
    pub r: f64,
    pub e_dimer: f64,
    pub e_a_ghost: f64,
    pub e_b_ghost: f64,
}

/// V(R) = E_AB(R) − E_A(R) − E_B(R) with both monomers in the dimer basis,
/// returned as (R, V in cm⁻¹).
pub fn counterpoise_correct(rows: &[CounterpoiseRow]) -> Result<Vec<(f64, f64)>> {
    for (i, row) in rows.iter().enumerate() {
        if ![row.r, row.e_dimer, row.e_a_ghost, row.e_b_ghost].iter().all(|x| x.is_finite()) {
            return Err(Error::data("non-finite value in counterpoise row", Some(i)));
        }
        if i > 0 && row.r <= rows[i - 1].r {
            return Err(Error::data(
                format!("R must be strictly increasing ({} after {})", row.r, rows[i - 1].r),
                Some(i),
            ));
        }
    }
    Ok(rows
        .iter()
        .map(|row| (row.r, hartree_to_cm(row.e_dimer - row.e_a_ghost - row.e_b_ghost)))
        .collect())
}

/// Energies (hartree) of a molecule in a uniform field at multiples of
/// `field_step`. Keys are the multiples: "-2", "-1", "1", "2" are required,
/// "0", "-4" and "4" are optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldEnergyScan {
    pub field_step: f64,
    pub energies: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteFieldDipole {
    /// −dE/dF in atomic units
    pub dipole: f64,
    /// |d(F) − d(2F)|/15
    pub richardson_error: f64,
    /// Whether the estimate used the four-point formula at 2F (needs ±4F)
    /// or the two-point central difference.
    pub richardson_four_point: bool,
}

impl FieldEnergyScan {
    /// Scan with the four required energies E(−2F), E(−F), E(F), E(2F).
    pub fn new(field_step: f64, stencil: [f64; 4]) -> Self {
        let energies = ["-2", "-1", "1", "2"].iter().map(|k| k.to_string()).zip(stencil).collect();
        FieldEnergyScan { field_step, energies }
    }

    pub fn with_energy(mut self, multiple: i32, energy: f64) -> Self {
        self.energies.insert(multiple.to_string(), energy);
        self
    }

    fn energy(&self, multiple: i32) -> Option<f64> {
        self.energies.get(&multiple.to_string()).copied()
    }

    fn require(&self, multiple: i32) -> Result<f64> {
        let e = self
            .energy(multiple)
            .ok_or_else(|| Error::data(format!("field scan is missing the energy at {multiple}F"), None))?;
        if !e.is_finite() {
            return Err(Error::data(format!("non-finite energy at {multiple}F"), None));
        }
        Ok(e)
    }

    fn validate(&self) -> Result<()> {
        if !(self.field_step > 0.0) || !self.field_step.is_finite() {
            return Err(Error::Domain(format!("field_step must be positive, got {}", self.field_step)));
        }
        for key in self.energies.keys() {
            if !matches!(key.as_str(), "-4" | "-2" | "-1" | "0" | "1" | "2" | "4") {
                return Err(Error::data(format!("unexpected field multiple '{key}'"), None));
            }
        }
        if self.energy(4).is_some() != self.energy(-4).is_some() {
            return Err(Error::data("energies at -4F and 4F must be given together", None));
        }
        Ok(())
    }
}

/// −[E(−2h) − 8E(−h) + 8E(h) − E(2h)]/(12h)
fn four_point(em2: f64, em1: f64, ep1: f64, ep2: f64, h: f64) -> f64 {
    -(em2 - 8.0 * em1 + 8.0 * ep1 - ep2) / (12.0 * h)
}

/// Permanent dipole −dE/dF from the symmetric four-point stencil.
pub fn finite_field_dipole(scan: &FieldEnergyScan) -> Result<FiniteFieldDipole> {
    scan.validate()?;
    let f = scan.field_step;
    let (em2, em1, ep1, ep2) = (scan.require(-2)?, scan.require(-1)?, scan.require(1)?, scan.require(2)?);
    let dipole = four_point(em2, em1, ep1, ep2, f);
    let (coarse, fine, four) = match (scan.energy(-4), scan.energy(4)) {
        (Some(em4), Some(ep4)) => (four_point(em4, em2, ep2, ep4, 2.0 * f), dipole, true),
        _ => (-(ep2 - em2) / (4.0 * f), -(ep1 - em1) / (2.0 * f), false),
    };
    Ok(FiniteFieldDipole { dipole, richardson_error: (fine - coarse).abs() / 15.0, richardson_four_point: four })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan_of(e: impl Fn(f64) -> f64, f: f64) -> FieldEnergyScan {
        FieldEnergyScan::new(f, [e(-2.0 * f), e(-f), e(f), e(2.0 * f)])
    }

    #[test]
    fn counterpoise_single_row() {
        let rows = [CounterpoiseRow { r: 6.0, e_dimer: -1.0, e_a_ghost: -0.4, e_b_ghost: -0.55 }];
        let v = counterpoise_correct(&rows).unwrap();
        assert!((v[0].1 - -10973.73).abs() < 0.01);
        assert!((v[0].1 - hartree_to_cm(-0.05)).abs() < 1e-9);
    }

    #[test]
    fn counterpoise_rejects_unordered() {
        let row = |r| CounterpoiseRow { r, e_dimer: -1.0, e_a_ghost: -0.5, e_b_ghost: -0.5 };
        let err = counterpoise_correct(&[row(5.0), row(6.0), row(6.0)]).unwrap_err();
        assert!(matches!(err, Error::Data { index: Some(2), .. }));
        assert!(counterpoise_correct(&[row(f64::NAN)]).is_err());
    }

    #[test]
    fn quadratic_scan_is_exact() {
        let d = finite_field_dipole(&scan_of(|f| 1.0 - 0.5 * f + 0.1 * f * f, 1e-3)).unwrap();
        assert!((d.dipole - 0.5).abs() < 1e-12 * 0.5);
        assert!(!d.richardson_four_point);
    }

    #[test]
    fn even_energy_gives_zero() {
        let d = finite_field_dipole(&scan_of(|f| -3.0 + 0.2 * f * f - 7.0 * f.powi(4), 1e-2)).unwrap();
        assert_eq!(d.dipole, 0.0);
    }

    #[test]
    fn quintic_error_term() {
        let f = 1e-2;
        let d = finite_field_dipole(&scan_of(|x| -0.3 * x + 1e-2 * x.powi(5), f)).unwrap();
        // analytic stencil error for c·x⁵ is −4c·f⁴ on −dE/dF
        let expected = 0.3 + 4.0 * 1e-2 * f.powi(4);
        assert!((d.dipole - expected).abs() < 1e-15);
    }

    #[test]
    fn four_point_richardson_uses_wider_points() {
        let e = |x: f64| 0.7 * x + 2.0 * x.powi(5);
        let f = 1e-2;
        let scan = scan_of(e, f).with_energy(-4, e(-4.0 * f)).with_energy(4, e(4.0 * f)).with_energy(0, 0.0);
        let d = finite_field_dipole(&scan).unwrap();
        assert!(d.richardson_four_point);
        // errors scale as F⁴: d(2F) − d(F) = −4c·15F⁴
        assert!((d.richardson_error - 4.0 * 2.0 * f.powi(4)).abs() < 1e-12);
    }

    #[test]
    fn invalid_scans() {
        let mut s = scan_of(|f| f, 1e-3);
        s.field_step = 0.0;
        assert!(matches!(finite_field_dipole(&s), Err(Error::Domain(_))));
        let mut s = scan_of(|f| f, 1e-3);
        s.energies.remove("2");
        assert!(matches!(finite_field_dipole(&s), Err(Error::Data { .. })));
        let s = scan_of(|f| f, 1e-3).with_energy(4, 0.0);
        assert!(finite_field_dipole(&s).is_err());
    }
}
