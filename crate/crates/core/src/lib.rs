//! Bound rovibrational levels, spectroscopic constants and vibrationally
//! averaged properties of diatomic molecules.
//!
//! The radial problem is discretized with the half-line sinc DVR and
//! diagonalized densely; a Numerov shooting solver provides an independent
//! check. Energies are in cm⁻¹, distances in a₀ and masses in u at every
//! public interface.

pub mod error;
pub mod io;
pub mod post;
pub mod potential;
pub mod properties;
pub mod reference;
pub mod solver;
pub mod spectroscopy;
pub mod units;

pub use error::{Error, Result};
pub use potential::{MolecularConstants, MorsePotential, Potential, TabulatedPotential};
pub use properties::PropertyCurve;
pub use reference::{get_preset, list_presets, MoleculePreset};
pub use solver::{BoundState, LevelTable, RadialGrid};
pub use units::{DiatomSystem, IsotopeSpecies};
