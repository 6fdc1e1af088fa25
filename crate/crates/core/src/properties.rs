//! R-dependent molecular properties (permanent dipole moment) and their
//! vibrational averages.

use crate::error::{Error, Result};
use crate::potential::CubicSpline;
use crate::solver::{BoundState, RadialGrid};

/// Sign convention attached to every dipole curve.
pub const SIGN_CONVENTION: &str = "positive = charge transfer from Li toward partner atom";

/// Weight below which grid points do not contribute to an average.
const WEIGHT_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Tabulated { spline: CubicSpline, extrapolate: bool },
    /// Σ c_k (R − R_ref)^k
    Polynomial { r_ref: f64, coefficients: Vec<f64> },
}

/// A scalar property d(R) in atomic units.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyCurve {
    shape: Shape,
    pub sign_convention: String,
}

impl PropertyCurve {
    /// Spline through (R in a₀, value) points, held constant beyond both
    /// ends of the data.
    pub fn tabulated(points: &[(f64, f64)]) -> Result<Self> {
        let (x, y): (Vec<f64>, Vec<f64>) = points.iter().copied().unzip();
        Ok(PropertyCurve {
            shape: Shape::Tabulated { spline: CubicSpline::natural(&x, &y)?, extrapolate: true },
            sign_convention: SIGN_CONVENTION.to_string(),
        })
    }

    /// Like [`PropertyCurve::tabulated`] but undefined outside the data.
    pub fn tabulated_strict(points: &[(f64, f64)]) -> Result<Self> {
        let mut curve = Self::tabulated(points)?;
        if let Shape::Tabulated { extrapolate, .. } = &mut curve.shape {
            *extrapolate = false;
        }
        Ok(curve)
    }

    pub fn polynomial(r_ref: f64, coefficients: Vec<f64>) -> Self {
        PropertyCurve {
            shape: Shape::Polynomial { r_ref, coefficients },
            sign_convention: SIGN_CONVENTION.to_string(),
        }
    }

    pub fn constant(value: f64) -> Self {
        Self::polynomial(0.0, vec![value])
    }

    /// Value at R, or `None` where the curve is not defined.
    pub fn value(&self, r: f64) -> Option<f64> {
        let v = match &self.shape {
            Shape::Tabulated { spline, extrapolate } => {
                if r < spline.x_min() || r > spline.x_max() {
                    if !extrapolate {
                        return None;
                    }
                    spline.eval(r.clamp(spline.x_min(), spline.x_max()))
                } else {
                    spline.eval(r)
                }
            }
            Shape::Polynomial { r_ref, coefficients } => {
                let x = r - r_ref;
                coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c)
            }
        };
        v.is_finite().then_some(v)
    }

    /// Range covered by data, if the curve is tabulated.
    pub fn data_range(&self) -> Option<(f64, f64)> {
        match &self.shape {
            Shape::Tabulated { spline, .. } => Some((spline.x_min(), spline.x_max())),
            Shape::Polynomial { .. } => None,
        }
    }
}

/// ⟨d⟩ = Σ ψᵢ² d(rᵢ), the DVR quadrature of the expectation value.
pub fn vibrational_average(d: &PropertyCurve, state: &BoundState, grid: &RadialGrid) -> Result<f64> {
    if state.amplitudes.len() != grid.n_points {
        return Err(Error::data(
            format!(
                "state has {} amplitudes but the grid has {} points",
                state.amplitudes.len(),
                grid.n_points
            ),
            None,
        ));
    }
    let mut sum = 0.0;
    let mut weight = 0.0;
    for (k, a) in state.amplitudes.iter().enumerate() {
        let w = a * a;
        if w <= WEIGHT_CUTOFF {
            continue;
        }
        let r = grid.r(k);
        let value = d.value(r).ok_or_else(|| {
            Error::data(format!("property undefined at R = {r:.4} a0 where the state has weight {w:.2e}"), Some(k))
        })?;
        sum += w * value;
        weight += w;
    }
    if weight == 0.0 {
        return Err(Error::data("state has no weight on the grid", None));
    }
    Ok(sum / weight)
}

/// d(R_e). For tabulated curves R_e must lie inside the data.
pub fn dipole_at_re(d: &PropertyCurve, re: f64) -> Result<f64> {
    if let Some((lo, hi)) = d.data_range() {
        if re < lo || re > hi {
            return Err(Error::data(format!("R_e = {re} outside dipole data [{lo}, {hi}]"), None));
        }
    }
    d.value(re).ok_or_else(|| Error::data(format!("dipole undefined at R_e = {re}"), None))
}
