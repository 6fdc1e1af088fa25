//! Potential energy curves V(R).
//!
//! All curves are measured in cm⁻¹ relative to the separated-atom
//! asymptote, as functions of the internuclear distance in a₀.

mod analysis;
mod harmonic;
mod morse;
mod spline;
mod tabulated;

use serde::{Deserialize, Serialize};

pub use analysis::{find_minimum, harmonic_frequency, rotational_constant, second_derivative};
pub use harmonic::HarmonicWell;
pub use morse::{morse_levels_analytic, MorsePotential};
pub use spline::CubicSpline;
pub use tabulated::{TabulatedPotential, TailPolicy};

/// A radial potential energy curve.
pub trait Potential: Send + Sync {
    /// V(R) in cm⁻¹, R in a₀.
    fn value(&self, r: f64) -> f64;

    /// Interval (a₀) in which a search for the well minimum makes sense.
    fn search_range(&self) -> (f64, f64);
}

impl<P: Potential + ?Sized> Potential for &P {
    fn value(&self, r: f64) -> f64 {
        (**self).value(r)
    }
    fn search_range(&self) -> (f64, f64) {
        (**self).search_range()
    }
}

impl<P: Potential + ?Sized> Potential for Box<P> {
    fn value(&self, r: f64) -> f64 {
        (**self).value(r)
    }
    fn search_range(&self) -> (f64, f64) {
        (**self).search_range()
    }
}

/// Adapter turning a closure into a [`Potential`].
pub struct FnPotential<F> {
    f: F,
    range: (f64, f64),
}

impl<F: Fn(f64) -> f64 + Send + Sync> FnPotential<F> {
    pub fn new(f: F, range: (f64, f64)) -> Self {
        FnPotential { f, range }
    }
}

impl<F: Fn(f64) -> f64 + Send + Sync> Potential for FnPotential<F> {
    fn value(&self, r: f64) -> f64 {
        (self.f)(r)
    }
    fn search_range(&self) -> (f64, f64) {
        self.range
    }
}

/// Spectroscopic summary of one electronic state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MolecularConstants {
    /// Equilibrium separation, a₀.
    pub re: f64,
    /// Harmonic constant ω_e, cm⁻¹.
    pub we: f64,
    /// First anharmonicity ω_e x_e, cm⁻¹.
    pub wexe: f64,
    /// Rotational constant B_e, cm⁻¹.
    pub be: f64,
    /// Well depth D_e, cm⁻¹.
    pub de: f64,
    /// Dissociation energy from v = 0, cm⁻¹.
    pub d0: f64,
    /// Dipole moment at R_e, atomic units.
    pub de_dipole: Option<f64>,
    /// Dipole moment averaged over v = 0, atomic units.
    pub d_avg_v0: Option<f64>,
}
