use serde::{Deserialize, Serialize};

use super::{CubicSpline, Potential};
use crate::error::{Error, Result};

/// How the long-range tail beyond the last data point is fixed. In every
/// case the free coefficients follow from value and slope continuity at
/// the last point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TailPolicy {
    /// −C6/R⁶ − C8/R⁸, both coefficients from continuity.
    #[default]
    Dispersion,
    /// −C6/R⁶ − C8/R⁸ − C10/R¹⁰ with a known C6 (cm⁻¹·a₀⁶); C8 and C10
    /// from continuity.
    FixedC6 { c6: f64 },
}

/// Long-range dispersion coefficients (cm⁻¹ a₀ⁿ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionTail {
    pub c6: f64,
    pub c8: f64,
    pub c10: f64,
}

impl DispersionTail {
    fn value(&self, r: f64) -> f64 {
        let r2 = 1.0 / (r * r);
        let r6 = r2 * r2 * r2;
        -r6 * (self.c6 + r2 * (self.c8 + r2 * self.c10))
    }
}

/// Short-range wall A·e^{−bR}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentialWall {
    pub amplitude: f64,
    pub decay: f64,
}

/// Pointwise curve: natural cubic spline on the data, exponential wall
/// below the first point, dispersion tail above the last.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    spline: CubicSpline,
    pub tail: DispersionTail,
    pub wall: ExponentialWall,
}

pub const MIN_POINTS: usize = 8;

impl TabulatedPotential {
    /// Points are (R in a₀, V in cm⁻¹), ordered by R.
    pub fn new(points: &[(f64, f64)], policy: TailPolicy) -> Result<Self> {
        if points.len() < MIN_POINTS {
            return Err(Error::data(
                format!("need at least {MIN_POINTS} points, got {}", points.len()),
                None,
            ));
        }
        for (i, w) in points.windows(2).enumerate() {
            if !(w[1].0 > w[0].0) {
                return Err(Error::data("R values must be strictly increasing", Some(i + 1)));
            }
        }
        let last = points.len() - 1;
        let (r_last, v_last) = points[last];
        if !(v_last < 0.0) {
            return Err(Error::data(
                format!("last point must lie below the asymptote, V = {v_last}"),
                Some(last),
            ));
        }
        let depth = -points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        if v_last.abs() >= 0.05 * depth {
            return Err(Error::data(
                format!(
                    "last point V = {v_last} is not near-asymptotic (|V| must be < 5% of depth {depth})"
                ),
                Some(last),
            ));
        }

        let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().copied().unzip();
        let spline = CubicSpline::natural(&xs, &ys)?;

        let (_, slope_last) = spline.eval_with_derivative(r_last);
        let tail = fit_tail(r_last, v_last, slope_last, policy);

        let (r0, v0) = points[0];
        let (_, slope0) = spline.eval_with_derivative(r0);
        if !(v0 > 0.0 && slope0 < 0.0) {
            return Err(Error::data(
                format!("first point must be on a repulsive wall (V = {v0}, dV/dR = {slope0})"),
                Some(0),
            ));
        }
        let decay = -slope0 / v0;
        let wall = ExponentialWall { amplitude: v0 * (decay * r0).exp(), decay };

        Ok(TabulatedPotential { spline, tail, wall })
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (x, y) = self.spline.knots();
        x.iter().copied().zip(y.iter().copied())
    }

    pub fn first_r(&self) -> f64 {
        self.spline.x_min()
    }

    pub fn last_r(&self) -> f64 {
        self.spline.x_max()
    }
}

fn fit_tail(r: f64, v: f64, slope: f64, policy: TailPolicy) -> DispersionTail {
    // With u_n = C_n / R^n:  V = −Σu_n,  R·V' = Σ n·u_n.
    let rv = r * slope;
    match policy {
        TailPolicy::Dispersion => {
            let u8 = (rv + 6.0 * v) / 2.0;
            let u6 = -v - u8;
            DispersionTail { c6: u6 * r.powi(6), c8: u8 * r.powi(8), c10: 0.0 }
        }
        TailPolicy::FixedC6 { c6 } => {
            let u6 = c6 / r.powi(6);
            // u8 + u10 = −V − u6 ; 8u8 + 10u10 = R·V' − 6u6
            let s = -v - u6;
            let t = rv - 6.0 * u6;
            let u10 = (t - 8.0 * s) / 2.0;
            let u8 = s - u10;
            DispersionTail { c6, c8: u8 * r.powi(8), c10: u10 * r.powi(10) }
        }
    }
}

impl Potential for TabulatedPotential {
    fn value(&self, r: f64) -> f64 {
        if r < self.spline.x_min() {
            self.wall.amplitude * (-self.wall.decay * r).exp()
        } else if r > self.spline.x_max() {
            self.tail.value(r)
        } else {
            self.spline.eval(r)
        }
    }

    fn search_range(&self) -> (f64, f64) {
        (self.spline.x_min(), self.spline.x_max())
    }
}
