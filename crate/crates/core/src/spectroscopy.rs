//! Spectroscopic constants from curves and level tables, and comparison
//! of computed levels with reference data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{find_minimum, harmonic_frequency, rotational_constant, MolecularConstants, Potential};
use crate::properties::{dipole_at_re, vibrational_average, PropertyCurve};
use crate::solver::{auto_solve, LevelTable};
use crate::units::DiatomSystem;

/// Highest v used by default when fitting ω_e and ω_e x_e.
pub const DEFAULT_FIT_V_MAX: u32 = 3;

/// Least-squares fit of E_v = c₀ + ω_e(v+½) − ω_e x_e(v+½)² over
/// v = 0 ..= `v_fit_max`. Returns (ω_e, ω_e x_e).
pub fn fit_level_constants(levels: &LevelTable, v_fit_max: Option<u32>) -> Result<(f64, f64)> {
    if levels.len() < 3 {
        return Err(Error::Analysis(format!("need at least 3 levels for a fit, got {}", levels.len())));
    }
    let v_max = v_fit_max.unwrap_or(DEFAULT_FIT_V_MAX);
    let points: Vec<(f64, f64)> = (0..=v_max)
        .map(|v| {
            levels
                .state(v)
                .map(|s| (f64::from(v) + 0.5, s.energy))
                .ok_or_else(|| Error::Analysis(format!("level v = {v} missing from table")))
        })
        .collect::<Result<_>>()?;
    if points.len() < 3 {
        return Err(Error::Analysis("a quadratic fit needs v_fit_max >= 2".into()));
    }
    let [_, linear, quadratic] = quadratic_least_squares(&points);
    Ok((linear, -quadratic))
}

/// Coefficients [a, b, c] of a + b·x + c·x² minimizing the squared residual.
fn quadratic_least_squares(points: &[(f64, f64)]) -> [f64; 3] {
    // centring keeps the normal equations well conditioned
    let xm = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
    let mut m = [[0.0f64; 4]; 3];
    for &(x, y) in points {
        let t = x - xm;
        let basis = [1.0, t, t * t];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += basis[i] * basis[j];
            }
            m[i][3] += basis[i] * y;
        }
    }
    for col in 0..3 {
        let pivot = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        m.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..4 {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    let (a, b, c) = (m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]);
    // undo the shift t = x − xm
    [a - b * xm + c * xm * xm, b - 2.0 * c * xm, c]
}

/// Everything in [`MolecularConstants`] that follows from the curve, plus
/// the dipole entries when a dipole curve is given.
pub fn constants_from_potential(
    p: &dyn Potential,
    sys: &DiatomSystem,
    dipole: Option<&PropertyCurve>,
) -> Result<MolecularConstants> {
    let (re, vmin) = find_minimum(p)?;
    let de = -vmin;
    let we = harmonic_frequency(p, re, sys.reduced_mass)?;
    let be = rotational_constant(re, sys.reduced_mass)?;
    let (grid, levels) = auto_solve(p, sys)?;
    if levels.is_empty() {
        return Err(Error::Analysis("curve supports no bound levels".into()));
    }
    let fit_max = DEFAULT_FIT_V_MAX.min(levels.len() as u32 - 1);
    let wexe = if levels.len() >= 3 { fit_level_constants(&levels, Some(fit_max))?.1 } else { 0.0 };
    let (de_dipole, d_avg_v0) = match dipole {
        Some(d) => (Some(dipole_at_re(d, re)?), Some(vibrational_average(d, &levels.states[0], &grid)?)),
        None => (None, None),
    };
    Ok(MolecularConstants { re, we, wexe, be, de, d0: levels.d0, de_dipole, d_avg_v0 })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelDeviation {
    pub v: u32,
    pub computed: f64,
    pub reference: f64,
    /// computed − reference, cm⁻¹
    pub difference: f64,
}

/// Deviation of E_v − E_{v−1} between two tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingDeviation {
    pub v: u32,
    pub computed: f64,
    pub reference: f64,
    pub difference: f64,
}

/// Level-by-level comparison of two tables, aligned on v.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub levels: Vec<LevelDeviation>,
    pub spacings: Vec<SpacingDeviation>,
    pub max_abs_deviation: f64,
    pub mean_abs_deviation: f64,
    pub mean_deviation: f64,
    pub computed_count: usize,
    pub reference_count: usize,
    /// computed − reference
    pub count_difference: i64,
    /// Known problems with the reference data itself.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

pub fn compare_levels(computed: &LevelTable, reference: &LevelTable) -> ComparisonReport {
    let levels: Vec<LevelDeviation> = computed
        .states
        .iter()
        .filter_map(|c| {
            reference.state(c.v).map(|r| LevelDeviation {
                v: c.v,
                computed: c.energy,
                reference: r.energy,
                difference: c.energy - r.energy,
            })
        })
        .collect();
    let spacings = levels
        .windows(2)
        .filter(|w| w[1].v == w[0].v + 1)
        .map(|w| {
            let computed = w[1].computed - w[0].computed;
            let reference = w[1].reference - w[0].reference;
            SpacingDeviation { v: w[1].v, computed, reference, difference: computed - reference }
        })
        .collect();
    let n = levels.len().max(1) as f64;
    let max_abs_deviation = levels.iter().map(|d| d.difference.abs()).fold(0.0, f64::max);
    let mean_abs_deviation = levels.iter().map(|d| d.difference.abs()).sum::<f64>() / n;
    let mean_deviation = levels.iter().map(|d| d.difference).sum::<f64>() / n;
    ComparisonReport {
        levels,
        spacings,
        max_abs_deviation,
        mean_abs_deviation,
        mean_deviation,
        computed_count: computed.len(),
        reference_count: reference.len(),
        count_difference: computed.len() as i64 - reference.len() as i64,
        flags: Vec::new(),
    }
}

/// Flags a reference table whose ground level is incompatible with the
/// quoted well depth: the implied zero-point energy D_e + E₀ should be close
/// to ω_e/2. Tolerance is 20 % of ω_e/2.
pub fn zero_point_consistency(reference: &LevelTable, de: f64, we: f64) -> Option<String> {
    let e0 = reference.states.first()?.energy;
    let implied = de + e0;
    let harmonic = 0.5 * we;
    ((implied - harmonic).abs() > 0.2 * harmonic).then(|| {
        format!(
            "reference E0 = {e0:.2} cm-1 with D_e = {de} cm-1 implies a zero-point energy of \
             {implied:.1} cm-1, but omega_e/2 = {harmonic:.1} cm-1; the level table and the \
             constants row are inconsistent"
        )
    })
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>4} {:>14} {:>14} {:>10}", "v", "computed", "reference", "diff")?;
        for d in &self.levels {
            writeln!(f, "{:>4} {:>14.4} {:>14.4} {:>10.4}", d.v, d.computed, d.reference, d.difference)?;
        }
        writeln!(
            f,
            "levels: computed {} reference {} (difference {})",
            self.computed_count, self.reference_count, self.count_difference
        )?;
        writeln!(
            f,
            "deviation: max |d| {:.4}  mean |d| {:.4}  mean d {:.4} cm-1",
            self.max_abs_deviation, self.mean_abs_deviation, self.mean_deviation
        )?;
        if let Some(s) = self.spacings.first() {
            writeln!(
                f,
                "E1-E0: computed {:.4} reference {:.4} (difference {:.4})",
                s.computed, s.reference, s.difference
            )?;
        }
        for flag in &self.flags {
            writeln!(f, "warning: {flag}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{morse_levels_analytic, MorsePotential};

    fn system() -> DiatomSystem {
        DiatomSystem::from_labels("Li7", "Sr88", 0).unwrap()
    }

    fn table(energies: &[f64]) -> LevelTable {
        LevelTable::from_energies(system(), energies).unwrap()
    }

    #[test]
    fn fit_recovers_morse_constants() {
        let m = MorsePotential::new(2367.0, 6.7, 182.2, 6.497).unwrap();
        let e: Vec<f64> = morse_levels_analytic(&m, None).into_iter().map(|l| l.1).collect();
        let (we, wexe) = fit_level_constants(&table(&e), None).unwrap();
        assert!((we / 182.2 - 1.0).abs() < 1e-6);
        assert!((wexe / m.anharmonicity() - 1.0).abs() < 1e-6);
        let (we6, _) = fit_level_constants(&table(&e), Some(6)).unwrap();
        assert!((we6 / 182.2 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn fit_of_linear_ladder() {
        let e: Vec<f64> = (0..6).map(|v| -1000.0 + 150.0 * (f64::from(v) + 0.5)).collect();
        let (we, wexe) = fit_level_constants(&table(&e), None).unwrap();
        assert!((we - 150.0).abs() < 1e-9);
        assert!(wexe.abs() < 1e-8);
    }

    #[test]
    fn fit_needs_three_levels() {
        assert!(matches!(fit_level_constants(&table(&[-3.0, -1.0]), None), Err(Error::Analysis(_))));
        assert!(fit_level_constants(&table(&[-3.0, -2.0, -1.0]), None).is_err());
        assert!(fit_level_constants(&table(&[-3.0, -2.0, -1.0]), Some(2)).is_ok());
    }

    #[test]
    fn comparison_identity_and_shift() {
        let a = table(&[-100.0, -60.0, -30.0, -10.0]);
        let same = compare_levels(&a, &a);
        assert_eq!(same.max_abs_deviation, 0.0);
        assert!(same.levels.iter().all(|d| d.difference == 0.0));
        let b = table(&[-99.0, -59.0, -29.0]);
        let r = compare_levels(&b, &a);
        assert_eq!(r.mean_deviation, 1.0);
        assert_eq!(r.mean_abs_deviation, 1.0);
        assert_eq!(r.count_difference, -1);
        assert_eq!(r.spacings.len(), 2);
        assert!(r.to_string().contains("mean d 1.0000"));
    }

    #[test]
    fn zero_point_flag() {
        let ok = table(&[-1330.05, -1164.35, -1010.96]);
        assert!(zero_point_consistency(&ok, 1417.0, 174.4).is_none());
        let bad = table(&[-2277.12, -2103.98, -1938.15]);
        assert!(zero_point_consistency(&bad, 2289.0, 181.5).is_some());
    }
}
