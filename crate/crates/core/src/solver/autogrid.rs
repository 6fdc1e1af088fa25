use super::grid::RadialGrid;
use super::hamiltonian::build_hamiltonian;
use super::levels::{solve_bound_states, LevelTable};
use crate::error::{Error, Result};
use crate::potential::{find_minimum, Potential};
use crate::units::DiatomSystem;

/// Grid ends sit where the curve reaches this multiple of D_e above the
/// asymptote.
pub const WALL_FACTOR: f64 = 2.0;
pub const INITIAL_POINTS: usize = 2001;
const MIN_OUTER: f64 = 30.0;
const TOLERANCE_CM: f64 = 1e-3;
const MAX_REFINEMENTS: usize = 5;

/// Radial interval enclosing the well: inner wall at V = 2·D_e, outer end
/// at max(4·R_e, 30 a₀) unless the curve climbs back to 2·D_e first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellRange {
    pub re: f64,
    pub depth: f64,
    pub r_inner: f64,
    pub r_outer: f64,
    /// True when the outer end is a wall rather than the asymptotic region.
    pub closed: bool,
}

fn bisect_crossing(p: &dyn Potential, level: f64, mut below: f64, mut above: f64) -> f64 {
    // V(below) < level <= V(above); the bracket may be in either order
    for _ in 0..200 {
        let mid = 0.5 * (below + above);
        if p.value(mid) < level {
            below = mid;
        } else {
            above = mid;
        }
        if (above - below).abs() < 1e-10 {
            break;
        }
    }
    above
}

pub fn well_range(p: &dyn Potential) -> Result<WellRange> {
    let (re, vmin) = find_minimum(p)?;
    let depth = -vmin;
    let level = WALL_FACTOR * depth;

    let mut r_wall = 0.5 * re;
    while p.value(r_wall) < level {
        r_wall *= 0.5;
        if r_wall < 1e-3 {
            return Err(Error::Analysis(format!(
                "inner wall never rises to {level:.3} cm-1; cannot place the grid origin"
            )));
        }
    }
    let r_inner = bisect_crossing(p, level, re, r_wall);

    let mut r_outer = (4.0 * re).max(MIN_OUTER);
    let mut closed = false;
    let step = 0.01 * re;
    let mut r = re;
    while r < r_outer {
        let next = (r + step).min(r_outer);
        if p.value(next) >= level {
            r_outer = bisect_crossing(p, level, r, next);
            closed = true;
            break;
        }
        r = next;
    }
    Ok(WellRange { re, depth, r_inner, r_outer, closed })
}

/// Starting grid: [V = 2·D_e wall, max(4·R_e, 30 a₀)] with `n_points`.
pub fn initial_grid(p: &dyn Potential, n_points: usize) -> Result<RadialGrid> {
    let range = well_range(p)?;
    RadialGrid::new(range.r_inner, range.r_outer, n_points)
}

fn converged(a: &LevelTable, b: &LevelTable) -> bool {
    match (a.states.first(), b.states.first(), a.states.last(), b.states.last()) {
        (Some(a0), Some(b0), Some(at), Some(bt)) => {
            a.len() == b.len()
                && (a0.energy - b0.energy).abs() < TOLERANCE_CM
                && (at.energy - bt.energy).abs() < TOLERANCE_CM
        }
        (None, None, _, _) => true,
        _ => false,
    }
}

/// Grid whose lowest and highest levels move by less than 1e-3 cm⁻¹ when
/// the outer end is doubled, together with the levels solved on it.
///
/// Each refinement doubles r_max at fixed point count, so agreement between
/// consecutive grids certifies both the range and the resolution.
pub fn auto_solve(p: &dyn Potential, sys: &DiatomSystem) -> Result<(RadialGrid, LevelTable)> {
    let range = well_range(p)?;
    let mut grid = RadialGrid::new(range.r_inner, range.r_outer, INITIAL_POINTS)?;
    let mut table = solve_bound_states(build_hamiltonian(p, sys, &grid), &grid, sys)?;
    for _ in 0..MAX_REFINEMENTS {
        let next = RadialGrid::new(range.r_inner, 2.0 * grid.r_max, INITIAL_POINTS)?;
        let next_table = solve_bound_states(build_hamiltonian(p, sys, &next), &next, sys)?;
        if converged(&table, &next_table) {
            return Ok((grid, table));
        }
        grid = next;
        table = next_table;
    }
    Err(Error::numerical(
        format!("levels did not settle to {TOLERANCE_CM} cm-1 while extending the grid"),
        MAX_REFINEMENTS,
    ))
}

pub fn auto_grid(p: &dyn Potential, sys: &DiatomSystem) -> Result<RadialGrid> {
    auto_solve(p, sys).map(|(g, _)| g)
}

/// Bound levels on the starting grid, without the convergence loop.
pub fn solve_on_initial_grid(p: &dyn Potential, sys: &DiatomSystem, n_points: usize) -> Result<LevelTable> {
    let grid = initial_grid(p, n_points)?;
    solve_bound_states(build_hamiltonian(p, sys, &grid), &grid, sys)
}
