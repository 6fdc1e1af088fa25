//! Radial Schrödinger equation: sinc-DVR Hamiltonian, dense
//! diagonalization, grid selection and an independent Numerov solver.

mod autogrid;
pub mod eigen;
mod grid;
mod hamiltonian;
mod levels;
mod numerov;

pub use autogrid::{
    auto_grid, auto_solve, initial_grid, solve_on_initial_grid, well_range, WellRange, INITIAL_POINTS,
    WALL_FACTOR,
};
pub use eigen::SymmetricMatrix;
pub use grid::{RadialGrid, MIN_GRID_POINTS};
pub use hamiltonian::build_hamiltonian;
pub use levels::{count_nodes, solve_bound_states, BoundState, LevelTable};
pub use numerov::{numerov_level_count, numerov_solve, numerov_state, NumerovState, NUMEROV_STEP};
