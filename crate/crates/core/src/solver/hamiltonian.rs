use std::f64::consts::PI;

use super::eigen::SymmetricMatrix;
use super::grid::RadialGrid;
use crate::potential::Potential;
use crate::units::{cm_to_hartree, DiatomSystem};

/// Centrifugal energy N(N+1)/(2μr²) in hartree (μ in electron masses).
#[inline]
pub(crate) fn centrifugal(rotational_n: u32, mu_au: f64, r: f64) -> f64 {
    let n = f64::from(rotational_n);
    n * (n + 1.0) / (2.0 * mu_au * r * r)
}

/// Half-line sinc-DVR Hamiltonian in hartree.
///
/// With absolute point indices i = r/Δ the kinetic matrix is
///
/// T_ii  = (1/2μΔ²)·[π²/3 − 1/(2i²)]
/// T_ii′ = (1/2μΔ²)·(−1)^{i−i′}·[2/(i−i′)² − 2/(i+i′)²]
///
/// and the potential plus centrifugal energy is diagonal.
pub fn build_hamiltonian(p: &dyn Potential, sys: &DiatomSystem, grid: &RadialGrid) -> SymmetricMatrix {
    let n = grid.n_points;
    let mu = sys.reduced_mass_au();
    let prefactor = 1.0 / (2.0 * mu * grid.spacing * grid.spacing);
    let mut h = SymmetricMatrix::zeros(n);
    let base = grid.first_index as f64;
    for k in 0..n {
        let i = base + k as f64;
        let r = grid.r(k);
        let v = cm_to_hartree(p.value(r));
        let diag = prefactor * (PI * PI / 3.0 - 1.0 / (2.0 * i * i));
        h.set(k, k, diag + v + centrifugal(sys.rotational_n, mu, r));
        for l in 0..k {
            let j = base + l as f64;
            let diff = (k - l) as f64;
            let sum = i + j;
            let sign = if (k - l) % 2 == 0 { 1.0 } else { -1.0 };
            let t = prefactor * sign * (2.0 / (diff * diff) - 2.0 / (sum * sum));
            h.set(k, l, t);
            h.set(l, k, t);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::FnPotential;

    fn system(n: u32) -> DiatomSystem {
        DiatomSystem::from_labels("Li7", "Mg24", n).unwrap()
    }

    #[test]
    fn exactly_symmetric() {
        let grid = RadialGrid::new(2.0, 20.0, 300).unwrap();
        let p = FnPotential::new(|r: f64| 100.0 * (r - 6.0).powi(2) - 500.0, (2.0, 20.0));
        let h = build_hamiltonian(&p, &system(3), &grid);
        for i in 0..h.dim() {
            for j in 0..i {
                assert_eq!(h.get(i, j), h.get(j, i));
            }
        }
    }

    #[test]
    fn rotationless_has_no_centrifugal_term() {
        let grid = RadialGrid::new(2.0, 20.0, 300).unwrap();
        let zero = FnPotential::new(|_| 0.0, (2.0, 20.0));
        let h0 = build_hamiltonian(&zero, &system(0), &grid);
        let h2 = build_hamiltonian(&zero, &system(2), &grid);
        let mu = system(0).reduced_mass_au();
        for k in 0..grid.n_points {
            let r = grid.r(k);
            assert_eq!(centrifugal(0, mu, r), 0.0);
            let expect = 6.0 / (2.0 * mu * r * r);
            assert!((h2.get(k, k) - h0.get(k, k) - expect).abs() < 1e-15);
        }
    }
}
