//! Resolution of command inputs: a JSON config document, overridden by
//! command-line flags.
//!
//! ```json
//! {
//!   "masses_u": ["Li7", 87.9056125],
//!   "potential": {"type": "tabulated", "file": "curve.dat"},
//!   "grid": {"r_min": 4.0, "r_max": 40.0, "n_points": 2001},
//!   "rotational_n": 0,
//!   "dipole": "dipole.dat"
//! }
//! ```
//!
//! Potential types: `preset` (`name`), `morse` (`params`: `de`, `re`, `we`)
//! and `tabulated` (`file`, optional `tail`). Relative paths are taken from
//! the directory of the config file.

use std::path::{Path, PathBuf};

use diatom_core::io::{read_curve, read_text};
use diatom_core::potential::TailPolicy;
use diatom_core::units::ISOTOPE_MASSES;
use diatom_core::{
    get_preset, DiatomSystem, Error, IsotopeSpecies, MoleculePreset, MorsePotential, Potential, PropertyCurve, Result,
    TabulatedPotential,
};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub masses_u: Option<[MassSpec; 2]>,
    #[serde(default)]
    pub potential: Option<PotentialSpec>,
    #[serde(default)]
    pub grid: GridOverride,
    #[serde(default)]
    pub rotational_n: Option<u32>,
    #[serde(default)]
    pub dipole: Option<PathBuf>,
}

/// A mass in u or an isotope label such as "Li7".
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MassSpec {
    Value(f64),
    Label(String),
}

impl MassSpec {
    pub fn parse(s: &str) -> MassSpec {
        s.parse().map(MassSpec::Value).unwrap_or_else(|_| MassSpec::Label(s.to_string()))
    }

    fn species(&self) -> Result<IsotopeSpecies> {
        match self {
            MassSpec::Label(l) => IsotopeSpecies::lookup(l),
            MassSpec::Value(m) => {
                if !(*m > 0.0) {
                    return Err(Error::Domain(format!("mass must be positive, got {m}")));
                }
                let known = ISOTOPE_MASSES.iter().find(|(_, _, mass)| (mass - m).abs() < 1e-3);
                match known {
                    Some(&(symbol, a, _)) => IsotopeSpecies::new(symbol, a, *m),
                    None => IsotopeSpecies::new("X", m.round().max(1.0) as u32, *m),
                }
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    Preset { name: String },
    Morse { params: MorseParams },
    Tabulated {
        file: PathBuf,
        #[serde(default)]
        tail: TailPolicy,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseParams {
    pub de: f64,
    pub re: f64,
    pub we: f64,
}

#[derive(Debug, Default, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverride {
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub n_points: Option<usize>,
}

impl GridOverride {
    pub fn is_empty(&self) -> bool {
        self.r_min.is_none() && self.r_max.is_none() && self.n_points.is_none()
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub config: Option<PathBuf>,
    pub preset: Option<String>,
    pub potential: Option<PathBuf>,
    pub mass_a: Option<String>,
    pub mass_b: Option<String>,
    pub rotational_n: Option<u32>,
    pub grid: GridOverride,
    pub dipole: Option<PathBuf>,
}

pub struct Inputs {
    pub potential: Box<dyn Potential>,
    pub system: DiatomSystem,
    pub preset: Option<MoleculePreset>,
    pub grid: GridOverride,
    pub dipole: Option<PropertyCurve>,
    pub label: String,
}

fn load_config(path: &Path) -> Result<ConfigFile> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: format!("{}: {e}", path.display()),
    })
}

fn relative_to(base: Option<&Path>, p: PathBuf) -> PathBuf {
    match base.and_then(Path::parent) {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p,
    }
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, column, message } => {
            Error::Parse { line, column, message: format!("{}: {message}", path.display()) }
        }
        Error::Data { message, index } => Error::Data { message: format!("{}: {message}", path.display()), index },
        other => other,
    })
}

pub fn read_tabulated(path: &Path, tail: TailPolicy) -> Result<TabulatedPotential> {
    let points = with_path(path, read_curve(path))?;
    with_path(path, TabulatedPotential::new(&points, tail))
}

pub fn read_dipole(path: &Path) -> Result<PropertyCurve> {
    let points = with_path(path, read_curve(path))?;
    with_path(path, PropertyCurve::tabulated(&points))
}

pub fn resolve(o: Overrides) -> Result<Inputs> {
    let config_path = o.config.clone();
    let cfg = match &config_path {
        Some(p) => load_config(p)?,
        None => ConfigFile::default(),
    };
    let base = config_path.as_deref();

    let spec = match (o.preset, o.potential) {
        (Some(_), Some(_)) => return Err(Error::Config("give either --preset or --potential, not both".into())),
        (Some(name), None) => PotentialSpec::Preset { name },
        (None, Some(file)) => PotentialSpec::Tabulated { file, tail: TailPolicy::default() },
        (None, None) => match cfg.potential {
            Some(PotentialSpec::Tabulated { file, tail }) => PotentialSpec::Tabulated { file: relative_to(base, file), tail },
            Some(other) => other,
            None => return Err(Error::Config("no potential: use --preset, --potential or a config file".into())),
        },
    };

    let preset = match &spec {
        PotentialSpec::Preset { name } => Some(get_preset(name)?),
        _ => None,
    };

    let mass_a = o.mass_a.as_deref().map(MassSpec::parse).or_else(|| cfg.masses_u.clone().map(|m| m[0].clone()));
    let mass_b = o.mass_b.as_deref().map(MassSpec::parse).or_else(|| cfg.masses_u.clone().map(|m| m[1].clone()));
    let rotational_n = o.rotational_n.or(cfg.rotational_n).unwrap_or(0);
    let system = match (mass_a, mass_b, &preset) {
        (Some(a), Some(b), _) => DiatomSystem::new(a.species()?, b.species()?, rotational_n)?,
        (None, None, Some(p)) => p.system.with_rotation(rotational_n),
        (Some(a), None, Some(p)) => DiatomSystem::new(a.species()?, p.system.atom_b.clone(), rotational_n)?,
        (None, Some(b), Some(p)) => DiatomSystem::new(p.system.atom_a.clone(), b.species()?, rotational_n)?,
        _ => return Err(Error::Config("both masses are required (--mass-a and --mass-b, or masses_u)".into())),
    };

    let (potential, label): (Box<dyn Potential>, String) = match spec {
        PotentialSpec::Preset { .. } => {
            let p = preset.as_ref().expect("preset resolved");
            (Box::new(p.morse()), format!("{} Morse ({})", p.name, p.method_label))
        }
        PotentialSpec::Morse { params } => (
            Box::new(MorsePotential::new(params.de, params.re, params.we, system.reduced_mass)?),
            format!("Morse (D_e {}, R_e {}, omega_e {})", params.de, params.re, params.we),
        ),
        PotentialSpec::Tabulated { file, tail } => {
            let t = read_tabulated(&file, tail)?;
            (Box::new(t), file.display().to_string())
        }
    };

    let grid = GridOverride {
        r_min: o.grid.r_min.or(cfg.grid.r_min),
        r_max: o.grid.r_max.or(cfg.grid.r_max),
        n_points: o.grid.n_points.or(cfg.grid.n_points),
    };
    let dipole_path = o.dipole.or_else(|| cfg.dipole.map(|d| relative_to(base, d)));
    let dipole = dipole_path.as_deref().map(read_dipole).transpose()?;

    Ok(Inputs { potential, system, preset, grid, dipole, label })
}
