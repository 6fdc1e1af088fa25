use serde::{Deserialize, Serialize};

use super::eigen::{eigen_below, SymmetricMatrix};
use super::grid::RadialGrid;
use crate::error::{Error, Result};
use crate::units::{hartree_to_cm, DiatomSystem};

/// Amplitudes below this fraction of the largest one are ignored when
/// counting nodes and fixing the overall sign.
const SIGNIFICANT: f64 = 1e-6;

/// One bound rovibrational level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    /// Vibrational quantum number, equal to the node count.
    pub v: u32,
    pub n_rot: u32,
    /// Energy in cm⁻¹ below the dissociation asymptote (negative).
    pub energy: f64,
    /// Unit-norm DVR amplitudes on the grid. Empty for reference tables.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub amplitudes: Vec<f64>,
}

/// All bound levels of one system, ordered by v.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelTable {
    pub system: DiatomSystem,
    pub states: Vec<BoundState>,
    /// D₀ = −E₀, cm⁻¹. Zero for an empty table.
    pub d0: f64,
    /// Grid the amplitudes live on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<RadialGrid>,
}

impl LevelTable {
    /// Table without wavefunctions, e.g. published term values. Energies
    /// must be negative and strictly increasing.
    pub fn from_energies(system: DiatomSystem, energies: &[f64]) -> Result<Self> {
        for (i, e) in energies.iter().enumerate() {
            if !(*e < 0.0) {
                return Err(Error::data(format!("level energy {e} is not bound"), Some(i)));
            }
        }
        for (i, w) in energies.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::data("level energies must increase with v", Some(i + 1)));
            }
        }
        let n_rot = system.rotational_n;
        let states = energies
            .iter()
            .enumerate()
            .map(|(v, &energy)| BoundState { v: v as u32, n_rot, energy, amplitudes: Vec::new() })
            .collect();
        Ok(Self::assemble(system, states, None))
    }

    fn assemble(system: DiatomSystem, states: Vec<BoundState>, grid: Option<RadialGrid>) -> Self {
        let d0 = states.first().map_or(0.0, |s| -s.energy);
        LevelTable { system, states, d0, grid }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.energy).collect()
    }

    pub fn state(&self, v: u32) -> Option<&BoundState> {
        self.states.iter().find(|s| s.v == v)
    }
}

/// Number of sign changes among the significant amplitudes.
pub fn count_nodes(amplitudes: &[f64]) -> u32 {
    let peak = amplitudes.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cut = SIGNIFICANT * peak;
    let mut last_sign = 0.0;
    let mut nodes = 0;
    for &a in amplitudes {
        if a.abs() <= cut {
            continue;
        }
        let s = a.signum();
        if last_sign != 0.0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}

/// Diagonalize a DVR Hamiltonian (hartree) and keep every level below the
/// asymptote.
pub fn solve_bound_states(h: SymmetricMatrix, grid: &RadialGrid, sys: &DiatomSystem) -> Result<LevelTable> {
    if h.dim() != grid.n_points {
        return Err(Error::Config(format!(
            "Hamiltonian dimension {} does not match grid size {}",
            h.dim(),
            grid.n_points
        )));
    }
    let eig = eigen_below(h, 0.0)?;
    let mut states = Vec::with_capacity(eig.vectors.len());
    for (order, (idx, mut amps)) in eig.vectors.into_iter().enumerate() {
        let norm = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        let peak = amps.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if let Some(first) = amps.iter().find(|a| a.abs() > SIGNIFICANT * peak) {
            if *first < 0.0 {
                amps.iter_mut().for_each(|a| *a = -*a);
            }
        }
        let v = count_nodes(&amps);
        if v as usize != order {
            return Err(Error::numerical(
                format!(
                    "level {order} at {:.6} cm-1 has {v} nodes; grid too coarse or range too short",
                    hartree_to_cm(eig.values[idx])
                ),
                0,
            ));
        }
        states.push(BoundState { v, n_rot: sys.rotational_n, energy: hartree_to_cm(eig.values[idx]), amplitudes: amps });
    }
    Ok(LevelTable::assemble(sys.clone(), states, Some(grid.clone())))
}
