//! Shared inputs for the solver benchmarks.

use diatom_core::solver::{initial_grid, RadialGrid};
use diatom_core::{get_preset, DiatomSystem, MorsePotential};

/// Morse curve, system and grid of `n_points` for a named preset.
pub fn preset_case(name: &str, n_points: usize) -> (MorsePotential, DiatomSystem, RadialGrid) {
    let preset = get_preset(name).expect("known preset");
    let morse = preset.morse();
    let grid = initial_grid(&morse, n_points).expect("grid for a bound curve");
    (morse, preset.system, grid)
}
