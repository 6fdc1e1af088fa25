use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest grid accepted by the solver.
pub const MIN_GRID_POINTS: usize = 200;

/// Uniform radial grid r_k = (first_index + k)·spacing.
///
/// The half-line DVR uses absolute point indices, so r_min is always an
/// integer multiple of the spacing. [`RadialGrid::new`] keeps `r_max` and
/// `n_points` as requested and moves `r_min` down to the nearest
/// commensurate value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
    pub spacing: f64,
    pub first_index: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_min > 0.0) {
            return Err(Error::Domain(format!("grid origin must be positive, got r_min = {r_min}")));
        }
        if !(r_max > r_min) || !r_max.is_finite() {
            return Err(Error::Domain(format!("need r_max > r_min, got [{r_min}, {r_max}]")));
        }
        if n_points < MIN_GRID_POINTS {
            return Err(Error::Domain(format!(
                "grid needs at least {MIN_GRID_POINTS} points, got {n_points}"
            )));
        }
        let intervals = (n_points - 1) as f64;
        let first_index = ((r_min * intervals / (r_max - r_min)).floor() as usize).max(1);
        let spacing = r_max / (first_index + n_points - 1) as f64;
        Ok(RadialGrid {
            r_min: first_index as f64 * spacing,
            r_max,
            n_points,
            spacing,
            first_index,
        })
    }

    #[inline]
    pub fn r(&self, k: usize) -> f64 {
        (self.first_index + k) as f64 * self.spacing
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|k| self.r(k))
    }

    /// Same range with a different number of points.
    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        RadialGrid::new(self.r_min, self.r_max, n_points)
    }
}
