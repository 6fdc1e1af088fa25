//! Published level tables and molecular constants for the five Li-group II
//! molecules, and the Morse presets built from them.
//!
//! The data lives in `data/reference.json`, with every number kept as the
//! printed string so trailing zeros survive. Set `DIATOM_DATA_DIR` to load
//! a `reference.json` from another directory instead of the embedded copy.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{rotational_constant, MolecularConstants, MorsePotential};
use crate::solver::LevelTable;
use crate::spectroscopy::zero_point_consistency;
use crate::units::DiatomSystem;

pub const EMBEDDED_REFERENCE: &str = include_str!("../data/reference.json");
pub const DATA_DIR_ENV: &str = "DIATOM_DATA_DIR";

const PRESET_NAMES: [&str; 5] = ["LiBe", "LiMg", "LiCa", "LiSr", "LiYb"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceData {
    pub format_version: u32,
    pub units: BTreeMap<String, String>,
    pub molecules: Vec<MoleculeRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoleculeRecord {
    pub name: String,
    pub atoms: [String; 2],
    pub level_table: LevelTableRecord,
    pub constants: Vec<ConstantsRow>,
    /// Index into `constants` of the row used for the Morse preset.
    pub model_row: usize,
    /// Values quoted in the text and figure captions.
    pub quoted: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelTableRecord {
    pub method: String,
    pub rotational_n: u32,
    pub energies: Vec<String>,
}

/// One row of the constants table. Values may carry an uncertainty in
/// parentheses, e.g. "6.3415(5)".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsRow {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    pub re: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub we: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub de: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_e: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConstantsRow {
    pub fn label(&self) -> String {
        match &self.basis {
            Some(b) => format!("{}/{}", self.method, b),
            None => self.method.clone(),
        }
    }
}

/// Numeric value of a printed entry, dropping any "(uncertainty)" suffix.
pub fn parse_printed(s: &str) -> Result<f64> {
    let core = s.split('(').next().unwrap_or(s).trim();
    core.parse().map_err(|_| Error::Config(format!("malformed reference value '{s}'")))
}

fn parse_reference(text: &str, origin: &str) -> Result<ReferenceData> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("{origin}: {e}")))
}

/// The reference data: `$DIATOM_DATA_DIR/reference.json` when the variable
/// is set, the embedded copy otherwise.
pub fn load_reference() -> Result<ReferenceData> {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) if !dir.is_empty() => {
            let path = PathBuf::from(dir).join("reference.json");
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            parse_reference(&text, &path.display().to_string())
        }
        _ => Ok(embedded_reference().clone()),
    }
}

pub fn embedded_reference() -> &'static ReferenceData {
    static DATA: OnceLock<ReferenceData> = OnceLock::new();
    DATA.get_or_init(|| parse_reference(EMBEDDED_REFERENCE, "embedded reference data").expect("embedded data parses"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculePreset {
    pub name: String,
    pub system: DiatomSystem,
    /// Constants of the model row; ω_e x_e is the Morse value ω_e²/(4D_e),
    /// B_e follows from R_e and d0 is −E₀ of the reference table.
    pub constants: MolecularConstants,
    pub method_label: String,
    pub reference_levels: LevelTable,
    pub record: MoleculeRecord,
}

impl MoleculePreset {
    fn from_record(record: MoleculeRecord) -> Result<Self> {
        let system = DiatomSystem::from_labels(&record.atoms[0], &record.atoms[1], record.level_table.rotational_n)?;
        let energies = record.level_table.energies.iter().map(|e| parse_printed(e)).collect::<Result<Vec<_>>>()?;
        let reference_levels = LevelTable::from_energies(system.clone(), &energies)?;
        let row = record
            .constants
            .get(record.model_row)
            .ok_or_else(|| Error::Config(format!("{}: model row {} missing", record.name, record.model_row)))?;
        let need = |v: &Option<String>, what: &str| {
            v.as_deref()
                .ok_or_else(|| Error::Config(format!("{}: model row lacks {what}", record.name)))
                .and_then(parse_printed)
        };
        let re = parse_printed(&row.re)?;
        let we = need(&row.we, "omega_e")?;
        let de = need(&row.de, "D_e")?;
        let de_dipole = row.d_e.as_deref().map(parse_printed).transpose()?;
        let d_avg_v0 = record.quoted.get("d_avg_v0").map(|s| parse_printed(s)).transpose()?;
        let constants = MolecularConstants {
            re,
            we,
            wexe: we * we / (4.0 * de),
            be: rotational_constant(re, system.reduced_mass)?,
            de,
            d0: reference_levels.d0,
            de_dipole,
            d_avg_v0,
        };
        Ok(MoleculePreset {
            name: record.name.clone(),
            system,
            constants,
            method_label: row.label(),
            reference_levels,
            record,
        })
    }

    /// Morse curve through the model row's R_e, ω_e and D_e.
    pub fn morse(&self) -> MorsePotential {
        let c = &self.constants;
        MorsePotential::new(c.de, c.re, c.we, self.system.reduced_mass).expect("preset constants are valid")
    }

    /// D₀ quoted in the text, if any.
    pub fn quoted_d0(&self) -> Option<f64> {
        self.quoted("d0")
    }

    pub fn quoted(&self, key: &str) -> Option<f64> {
        self.record.quoted.get(key).and_then(|s| parse_printed(s).ok())
    }

    /// Warnings about the level table itself: a ground level that does not
    /// fit the model row's well depth and frequency.
    pub fn consistency_flags(&self) -> Vec<String> {
        zero_point_consistency(&self.reference_levels, self.constants.de, self.constants.we)
            .into_iter()
            .collect()
    }
}

/// Names of the presets in publication order.
pub fn list_presets() -> Vec<&'static str> {
    PRESET_NAMES.to_vec()
}

pub fn get_preset(name: &str) -> Result<MoleculePreset> {
    let data = load_reference()?;
    let record = data
        .molecules
        .into_iter()
        .find(|m| m.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::NotFound(format!("no preset '{name}'; valid names: {}", PRESET_NAMES.join(", "))))?;
    MoleculePreset::from_record(record)
}
