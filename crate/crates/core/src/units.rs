//! Physical constants, unit conversion and isotope data.
//!
//! Hamiltonians are assembled in atomic units (hartree, bohr, electron
//! mass). Every public interface takes and returns cm⁻¹ for energies, a₀
//! for lengths and unified atomic mass units for masses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1 hartree expressed in cm⁻¹ (CODATA 2018).
pub const HARTREE_TO_CM: f64 = 219474.6313632;

/// Bohr radius in nm, as quoted alongside the molecular constants.
pub const BOHR_TO_NM: f64 = 0.0529177;

/// Unified atomic mass unit in electron masses (CODATA 2018).
pub const AMU_TO_ME: f64 = 1822.888486;

#[inline]
pub fn cm_to_hartree(e: f64) -> f64 {
    e / HARTREE_TO_CM
}

#[inline]
pub fn hartree_to_cm(e: f64) -> f64 {
    e * HARTREE_TO_CM
}

#[inline]
pub fn amu_to_me(m: f64) -> f64 {
    m * AMU_TO_ME
}

/// Units accepted by [`convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unit {
    Hartree,
    Wavenumber,
    Bohr,
    Nanometer,
    Dalton,
    ElectronMass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dimension {
    Energy,
    Length,
    Mass,
}

impl Unit {
    fn dimension(self) -> Dimension {
        match self {
            Unit::Hartree | Unit::Wavenumber => Dimension::Energy,
            Unit::Bohr | Unit::Nanometer => Dimension::Length,
            Unit::Dalton | Unit::ElectronMass => Dimension::Mass,
        }
    }

    /// Size of one of this unit in the atomic unit of its dimension.
    fn in_atomic_units(self) -> f64 {
        match self {
            Unit::Hartree | Unit::Bohr | Unit::ElectronMass => 1.0,
            Unit::Wavenumber => 1.0 / HARTREE_TO_CM,
            Unit::Nanometer => 1.0 / BOHR_TO_NM,
            Unit::Dalton => AMU_TO_ME,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Unit::Hartree => "hartree",
            Unit::Wavenumber => "cm-1",
            Unit::Bohr => "bohr",
            Unit::Nanometer => "nm",
            Unit::Dalton => "u",
            Unit::ElectronMass => "electron-mass",
        };
        f.write_str(s)
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hartree" | "eh" => Ok(Unit::Hartree),
            "cm-1" | "cm^-1" | "cm⁻¹" | "wavenumber" => Ok(Unit::Wavenumber),
            "bohr" | "a0" | "a₀" => Ok(Unit::Bohr),
            "nm" => Ok(Unit::Nanometer),
            "u" | "amu" | "da" | "dalton" => Ok(Unit::Dalton),
            "electron-mass" | "me" => Ok(Unit::ElectronMass),
            other => Err(Error::Config(format!("unknown unit `{other}`"))),
        }
    }
}

/// Multiplicative conversion between two units of the same dimension.
pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64> {
    if from.dimension() != to.dimension() {
        return Err(Error::Config(format!("cannot convert {from} to {to}")));
    }
    if from == to {
        return Ok(value);
    }
    // Direct factors for the common pairs keep the documented constants exact.
    Ok(match (from, to) {
        (Unit::Hartree, Unit::Wavenumber) => value * HARTREE_TO_CM,
        (Unit::Wavenumber, Unit::Hartree) => value / HARTREE_TO_CM,
        (Unit::Bohr, Unit::Nanometer) => value * BOHR_TO_NM,
        (Unit::Nanometer, Unit::Bohr) => value / BOHR_TO_NM,
        (Unit::Dalton, Unit::ElectronMass) => value * AMU_TO_ME,
        (Unit::ElectronMass, Unit::Dalton) => value / AMU_TO_ME,
        _ => value * from.in_atomic_units() / to.in_atomic_units(),
    })
}

/// Like [`convert`] but with units given by name.
pub fn convert_named(value: f64, from: &str, to: &str) -> Result<f64> {
    convert(value, from.parse()?, to.parse()?)
}

/// Two-body reduced mass m_a·m_b/(m_a + m_b).
pub fn reduced_mass(m_a: f64, m_b: f64) -> Result<f64> {
    if !(m_a > 0.0 && m_b > 0.0) || !m_a.is_finite() || !m_b.is_finite() {
        return Err(Error::Domain(format!("masses must be positive, got {m_a} and {m_b}")));
    }
    Ok(m_a * m_b / (m_a + m_b))
}

/// A single isotope with its atomic (not nuclear) mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsotopeSpecies {
    pub element_symbol: String,
    pub mass_number: u32,
    /// Atomic mass in u.
    pub mass: f64,
}

impl IsotopeSpecies {
    pub fn new(element_symbol: &str, mass_number: u32, mass: f64) -> Result<Self> {
        if !(mass > 0.0) {
            return Err(Error::Domain(format!("isotope mass must be positive, got {mass}")));
        }
        let a = f64::from(mass_number);
        if (mass - a).abs() > 0.2 * a {
            return Err(Error::Domain(format!(
                "mass {mass} u is implausible for mass number {mass_number}"
            )));
        }
        Ok(IsotopeSpecies { element_symbol: element_symbol.to_string(), mass_number, mass })
    }

    /// Look up one of the embedded isotopes by label such as `Li7`, `7Li`
    /// or `Sr-88`.
    pub fn lookup(label: &str) -> Result<Self> {
        let cleaned: String = label.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        let symbol: String = cleaned.chars().filter(|c| c.is_ascii_alphabetic()).collect();
        let digits: String = cleaned.chars().filter(|c| c.is_ascii_digit()).collect();
        let a: u32 = digits
            .parse()
            .map_err(|_| Error::NotFound(format!("isotope `{label}` has no mass number")))?;
        ISOTOPE_MASSES
            .iter()
            .find(|(s, n, _)| s.eq_ignore_ascii_case(&symbol) && *n == a)
            .map(|&(s, n, m)| IsotopeSpecies { element_symbol: s.to_string(), mass_number: n, mass: m })
            .ok_or_else(|| {
                let known: Vec<String> =
                    ISOTOPE_MASSES.iter().map(|(s, n, _)| format!("{n}{s}")).collect();
                Error::NotFound(format!("isotope `{label}`; known: {}", known.join(", ")))
            })
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.mass_number, self.element_symbol)
    }
}

/// Atomic masses (u) from the AME2020 evaluation, rounded to 1e-6 u or better.
pub const ISOTOPE_MASSES: &[(&str, u32, f64)] = &[
    ("Li", 7, 7.016_003_4),
    ("Be", 9, 9.012_183_1),
    ("Mg", 24, 23.985_041_7),
    ("Ca", 40, 39.962_590_9),
    ("Sr", 88, 87.905_612_5),
    ("Yb", 172, 171.936_385_9),
];

/// Two atoms and the rotational quantum number N of the radial problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiatomSystem {
    pub atom_a: IsotopeSpecies,
    pub atom_b: IsotopeSpecies,
    /// Reduced mass in u.
    pub reduced_mass: f64,
    pub rotational_n: u32,
}

impl DiatomSystem {
    pub fn new(atom_a: IsotopeSpecies, atom_b: IsotopeSpecies, rotational_n: u32) -> Result<Self> {
        let reduced_mass = reduced_mass(atom_a.mass, atom_b.mass)?;
        Ok(DiatomSystem { atom_a, atom_b, reduced_mass, rotational_n })
    }

    /// System from embedded isotope labels, e.g. `("Li7", "Sr88")`.
    pub fn from_labels(a: &str, b: &str, rotational_n: u32) -> Result<Self> {
        Self::new(IsotopeSpecies::lookup(a)?, IsotopeSpecies::lookup(b)?, rotational_n)
    }

    /// System built from bare masses in u, for user-supplied curves.
    pub fn from_masses(m_a: f64, m_b: f64, rotational_n: u32) -> Result<Self> {
        let atom = |m: f64, tag: &str| -> Result<IsotopeSpecies> {
            if !(m > 0.0) {
                return Err(Error::Domain(format!("mass must be positive, got {m}")));
            }
            Ok(IsotopeSpecies {
                element_symbol: tag.to_string(),
                mass_number: m.round().max(1.0) as u32,
                mass: m,
            })
        };
        Self::new(atom(m_a, "A")?, atom(m_b, "B")?, rotational_n)
    }

    pub fn with_rotation(&self, rotational_n: u32) -> Self {
        DiatomSystem { rotational_n, ..self.clone() }
    }

    /// Reduced mass in electron masses.
    pub fn reduced_mass_au(&self) -> f64 {
        amu_to_me(self.reduced_mass)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.atom_a.label(), self.atom_b.label())
    }
}
