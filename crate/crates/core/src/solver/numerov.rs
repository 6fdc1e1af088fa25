//! Renormalized Numerov shooting solver, used to cross-check the DVR.
//!
//! The recurrence is propagated as ratios w_{i+1}/w_i (Johnson), so no
//! overflow occurs in classically forbidden regions and negative ratios
//! count nodes directly.

use super::autogrid::well_range;
use super::hamiltonian::centrifugal;
use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::units::{cm_to_hartree, DiatomSystem};

/// Integration step in a₀.
pub const NUMEROV_STEP: f64 = 0.004;
const ENERGY_TOL_CM: f64 = 1e-6;
const NODE_BRACKET_CM: f64 = 1e-2;

/// A converged level with its wavefunction.
#[derive(Debug, Clone)]
pub struct NumerovState {
    pub energy: f64,
    pub r: Vec<f64>,
    /// Normalized so that Σψ²·h = 1.
    pub psi: Vec<f64>,
    pub step: f64,
}

struct Shooter {
    r0: f64,
    h: f64,
    /// 2μ(V + centrifugal) in atomic units.
    q0: Vec<f64>,
    two_mu: f64,
}

impl Shooter {
    fn new(p: &dyn Potential, sys: &DiatomSystem) -> Result<Self> {
        let range = well_range(p)?;
        let n = ((range.r_outer - range.r_inner) / NUMEROV_STEP).ceil() as usize + 1;
        let h = (range.r_outer - range.r_inner) / (n - 1) as f64;
        let mu = sys.reduced_mass_au();
        let q0 = (0..n)
            .map(|i| {
                let r = range.r_inner + h * i as f64;
                2.0 * mu * (cm_to_hartree(p.value(r)) + centrifugal(sys.rotational_n, mu, r))
            })
            .collect();
        Ok(Shooter { r0: range.r_inner, h, q0, two_mu: 2.0 * mu })
    }

    fn n(&self) -> usize {
        self.q0.len()
    }

    fn coefficients(&self, energy_cm: f64) -> (Vec<f64>, Vec<f64>) {
        let shift = self.two_mu * cm_to_hartree(energy_cm);
        let h2 = self.h * self.h;
        let mut u = Vec::with_capacity(self.n());
        let mut f = Vec::with_capacity(self.n());
        for &q in &self.q0 {
            let q = q - shift;
            let fi = 1.0 - h2 * q / 12.0;
            f.push(fi);
            u.push(2.0 + h2 * q / fi);
        }
        (u, f)
    }

    /// Number of eigenvalues below `energy_cm` (Dirichlet at both ends).
    fn count_below(&self, energy_cm: f64) -> usize {
        let (u, _) = self.coefficients(energy_cm);
        let mut inv = 0.0;
        let mut nodes = 0;
        for &ui in &u[1..self.n() - 1] {
            let mut ratio = ui - inv;
            if ratio == 0.0 {
                ratio = f64::MIN_POSITIVE;
            }
            if ratio < 0.0 {
                nodes += 1;
            }
            inv = 1.0 / ratio;
        }
        nodes
    }

    fn matching_index(&self, energy_cm: f64) -> usize {
        let shift = self.two_mu * cm_to_hartree(energy_cm);
        let n = self.n();
        let m = (0..n).rev().find(|&i| self.q0[i] - shift < 0.0).unwrap_or(n / 2);
        m.clamp(2, n - 4)
    }

    /// Outward and inward ratios w_{m+1}/w_m at the outer turning point.
    fn mismatch(&self, energy_cm: f64, m: usize) -> f64 {
        let (u, _) = self.coefficients(energy_cm);
        let n = self.n();
        let mut inv = 0.0;
        let mut ratio_out = 0.0;
        for &ui in &u[1..=m] {
            ratio_out = ui - inv;
            inv = 1.0 / ratio_out;
        }
        // T_i = w_i / w_{i+1}, starting from w_{n−1} = 0
        let mut t = u[n - 2];
        for i in (m..n - 3).rev() {
            t = u[i + 1] - 1.0 / t;
        }
        ratio_out - 1.0 / t
    }

    fn wavefunction(&self, energy_cm: f64) -> Vec<f64> {
        let (u, f) = self.coefficients(energy_cm);
        let n = self.n();
        let m = self.matching_index(energy_cm);
        let mut w = vec![0.0; n];
        w[1] = 1.0;
        for i in 1..=m {
            w[i + 1] = u[i] * w[i] - w[i - 1];
        }
        let mut inward = vec![0.0; n];
        inward[n - 2] = 1.0;
        for i in (m..n - 2).rev() {
            inward[i] = u[i + 1] * inward[i + 1] - inward[i + 2];
        }
        let scale = w[m] / inward[m];
        for i in m + 1..n {
            w[i] = inward[i] * scale;
        }
        let mut psi: Vec<f64> = w.iter().zip(&f).map(|(wi, fi)| wi / fi).collect();
        let norm = (psi.iter().map(|x| x * x).sum::<f64>() * self.h).sqrt();
        psi.iter_mut().for_each(|x| *x /= norm);
        if psi.iter().find(|x| x.abs() > 1e-8).is_some_and(|x| *x < 0.0) {
            psi.iter_mut().for_each(|x| *x = -*x);
        }
        psi
    }

    fn eigenvalue(&self, v: usize, floor_cm: f64) -> Result<f64> {
        let available = self.count_below(0.0);
        if v >= available {
            return Err(Error::NotFound(format!(
                "level v = {v} does not exist; the curve supports {available} bound levels"
            )));
        }
        let (mut lo, mut hi) = (floor_cm, 0.0);
        while hi - lo > NODE_BRACKET_CM {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) <= v {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let m = self.matching_index(0.5 * (lo + hi));
        let (f_lo, f_hi) = (self.mismatch(lo, m), self.mismatch(hi, m));
        let use_matching = f_lo.is_finite() && f_hi.is_finite() && f_lo * f_hi < 0.0;
        let mut f_lo = f_lo;
        while hi - lo > ENERGY_TOL_CM {
            let mid = 0.5 * (lo + hi);
            let lower = if use_matching {
                let f_mid = self.mismatch(mid, m);
                let same = f_mid * f_lo > 0.0;
                if same {
                    f_lo = f_mid;
                }
                same
            } else {
                self.count_below(mid) <= v
            };
            if lower {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

fn floor_energy(p: &dyn Potential) -> Result<f64> {
    let range = well_range(p)?;
    Ok(-range.depth - 1.0)
}

/// Energy (cm⁻¹) of level `v_target` by Numerov shooting.
pub fn numerov_solve(p: &dyn Potential, sys: &DiatomSystem, v_target: u32) -> Result<f64> {
    let shooter = Shooter::new(p, sys)?;
    shooter.eigenvalue(v_target as usize, floor_energy(p)?)
}

/// Level `v_target` with its normalized Numerov wavefunction.
pub fn numerov_state(p: &dyn Potential, sys: &DiatomSystem, v_target: u32) -> Result<NumerovState> {
    let shooter = Shooter::new(p, sys)?;
    let energy = shooter.eigenvalue(v_target as usize, floor_energy(p)?)?;
    let psi = shooter.wavefunction(energy);
    let r = (0..shooter.n()).map(|i| shooter.r0 + shooter.h * i as f64).collect();
    Ok(NumerovState { energy, r, psi, step: shooter.h })
}

/// Number of bound levels according to the shooting solver.
pub fn numerov_level_count(p: &dyn Potential, sys: &DiatomSystem) -> Result<usize> {
    Ok(Shooter::new(p, sys)?.count_below(0.0))
}
