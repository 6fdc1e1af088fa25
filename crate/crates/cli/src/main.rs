//! `diatom`: bound levels, spectroscopic constants and scan post-processing
//! for diatomic molecules.

mod config;
mod output;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diatom_core::io::{format_curve, parse_counterpoise, parse_field_scan, read_text};
use diatom_core::post::{counterpoise_correct, finite_field_dipole};
use diatom_core::potential::find_minimum;
use diatom_core::reference::{embedded_reference, load_reference};
use diatom_core::solver::{auto_solve, build_hamiltonian, solve_bound_states, well_range};
use diatom_core::spectroscopy::{compare_levels, constants_from_potential};
use diatom_core::units::{AMU_TO_ME, BOHR_TO_NM, HARTREE_TO_CM, ISOTOPE_MASSES};
use diatom_core::{list_presets, Error, LevelTable, RadialGrid, Result};
use serde_json::json;

use config::{GridOverride, Inputs, Overrides};

/// Points of the solver grid when only the range is overridden.
const DEFAULT_POINTS: usize = 2001;
/// Intervals in emitted plot curves.
const PLOT_INTERVALS: usize = 600;

#[derive(Parser)]
#[command(name = "diatom", version, about = "Bound levels and molecular constants of diatomic molecules")]
struct Cli {
    /// Suppress warnings and progress messages.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for all bound vibrational levels of one rotational state.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = LevelFormat::Csv)]
        format: LevelFormat,
        /// Compare with the published level table of the preset.
        #[arg(long)]
        compare: bool,
    },
    /// Spectroscopic constants of a curve.
    Constants {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
    /// Post-process electronic-structure energy scans.
    #[command(subcommand)]
    Post(PostCommand),
    /// Write two-column plot files.
    Plotdata {
        #[arg(value_enum)]
        what: PlotKind,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Embedded reference data.
    #[command(subcommand)]
    Presets(PresetsCommand),
    /// Print the unit conversion constants and isotope masses as JSON.
    ConstantsDump,
}

#[derive(Subcommand)]
enum PostCommand {
    /// Counterpoise-corrected interaction curve from rows of
    /// R, E_dimer, E_A(ghost), E_B(ghost) (hartree).
    Cp {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = CurveFormat::Text)]
        format: CurveFormat,
    },
    /// Dipole moment from energies in ±F, ±2F fields.
    Ffield {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
}

#[derive(Subcommand)]
enum PresetsCommand {
    List,
    Export {
        name: String,
        #[arg(long, value_enum, default_value_t = ExportTable::Levels)]
        table: ExportTable,
        #[arg(long, value_enum, default_value_t = ExportFormat::Csv)]
        format: ExportFormat,
    },
}

#[derive(Args, Default)]
struct InputArgs {
    /// JSON config document; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// One of the built-in molecules (Morse model).
    #[arg(long)]
    preset: Option<String>,
    /// Two-column curve file: R (bohr), V (cm-1).
    #[arg(long)]
    potential: Option<PathBuf>,
    /// Mass of atom A in u, or an isotope label such as Li7.
    #[arg(long)]
    mass_a: Option<String>,
    /// Mass of atom B in u, or an isotope label.
    #[arg(long)]
    mass_b: Option<String>,
    #[arg(long)]
    rotational_n: Option<u32>,
    /// Two-column dipole curve: R (bohr), d (a.u.).
    #[arg(long)]
    dipole: Option<PathBuf>,
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
}

impl InputArgs {
    fn resolve(self) -> Result<Inputs> {
        config::resolve(Overrides {
            config: self.config,
            preset: self.preset,
            potential: self.potential,
            mass_a: self.mass_a,
            mass_b: self.mass_b,
            rotational_n: self.rotational_n,
            grid: GridOverride { r_min: self.r_min, r_max: self.r_max, n_points: self.points },
            dipole: self.dipole,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelFormat {
    Csv,
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportTable {
    Levels,
    Constants,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    Potential,
    Dipole,
}

struct Diagnostics {
    quiet: bool,
}

impl Diagnostics {
    fn warn(&self, msg: &str) {
        if !self.quiet {
            eprintln!("warning: {msg}");
        }
    }

    fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Numerical { .. } | Error::Analysis(_) => 3,
        _ => 2,
    }
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

/// Levels on the requested grid, or on the automatically converged one.
/// A curve without a well has no levels.
fn solve_levels(inputs: &Inputs, diag: &Diagnostics) -> Result<(Option<RadialGrid>, LevelTable)> {
    let p = inputs.potential.as_ref();
    if let Err(Error::Analysis(msg)) = find_minimum(p) {
        diag.warn(&format!("no bound states ({msg})"));
        return Ok((None, LevelTable::from_energies(inputs.system.clone(), &[])?));
    }
    let (grid, table) = if inputs.grid.is_empty() {
        auto_solve(p, &inputs.system)?
    } else {
        let g = inputs.grid;
        let (r_min, r_max) = match (g.r_min, g.r_max) {
            (Some(a), Some(b)) => (a, b),
            (a, b) => {
                let range = well_range(p)?;
                (a.unwrap_or(range.r_inner), b.unwrap_or(range.r_outer))
            }
        };
        let grid = RadialGrid::new(r_min, r_max, g.n_points.unwrap_or(DEFAULT_POINTS))?;
        let table = solve_bound_states(build_hamiltonian(p, &inputs.system, &grid), &grid, &inputs.system)?;
        (grid, table)
    };
    if table.is_empty() {
        diag.warn("no bound states");
    }
    Ok((Some(grid), table))
}

fn cmd_solve(input: InputArgs, format: LevelFormat, compare: bool, diag: &Diagnostics) -> Result<String> {
    let inputs = input.resolve()?;
    let (grid, table) = solve_levels(&inputs, diag)?;
    let report = if compare {
        let preset = inputs
            .preset
            .as_ref()
            .ok_or_else(|| Error::Config("--compare needs --preset (the reference table)".into()))?;
        let mut report = compare_levels(&table, &preset.reference_levels);
        report.flags = preset.consistency_flags();
        for flag in &report.flags {
            diag.warn(flag);
        }
        Some(report)
    } else {
        None
    };
    Ok(match format {
        LevelFormat::Csv => {
            let mut out = output::levels_csv(&table);
            if let Some(r) = &report {
                out.push('\n');
                out.push_str(&output::comparison_csv(r));
            }
            out
        }
        LevelFormat::Table => {
            let mut out = output::levels_table(&table, &inputs.label, grid.as_ref());
            if let Some(r) = &report {
                let name = &inputs.preset.as_ref().expect("checked above").name;
                out.push_str(&format!("\ncomparison with the published {name} table\n{r}"));
            }
            out
        }
        LevelFormat::Json => to_json(&output::levels_json(&table, &inputs.label, grid.as_ref(), report.as_ref())),
    })
}

fn cmd_constants(input: InputArgs, format: ReportFormat) -> Result<String> {
    let inputs = input.resolve()?;
    let c = constants_from_potential(inputs.potential.as_ref(), &inputs.system, inputs.dipole.as_ref())?;
    Ok(match format {
        ReportFormat::Table => output::constants_table(&c, &format!("{} {}", inputs.system.label(), inputs.label)),
        ReportFormat::Json => to_json(&c),
    })
}

fn cmd_post(cmd: PostCommand) -> Result<String> {
    match cmd {
        PostCommand::Cp { file, format } => {
            let rows = parse_counterpoise(&read_text(&file)?)?;
            let curve = counterpoise_correct(&rows)?;
            Ok(match format {
                CurveFormat::Text => format_curve(&curve, Some("R (bohr)  V (cm-1), counterpoise corrected")),
                CurveFormat::Csv => output::curve_csv(&curve, "r_bohr,v_cm"),
                CurveFormat::Json => {
                    let pairs: Vec<[f64; 2]> = curve.iter().map(|&(r, v)| [r, v]).collect();
                    to_json(&pairs)
                }
            })
        }
        PostCommand::Ffield { file, format } => {
            let scan = parse_field_scan(&read_text(&file)?)?;
            let d = finite_field_dipole(&scan)?;
            Ok(match format {
                ReportFormat::Json => to_json(&d),
                ReportFormat::Table => format!(
                    "dipole: {:.12} a.u.\nrichardson error estimate: {:.3e} a.u. ({})\n",
                    d.dipole,
                    d.richardson_error,
                    if d.richardson_four_point { "four-point at 2F" } else { "central differences" }
                ),
            })
        }
    }
}

fn sample(f: impl Fn(f64) -> Option<f64>, lo: f64, hi: f64, extra: Option<(f64, f64)>) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = (0..=PLOT_INTERVALS)
        .map(|k| lo + (hi - lo) * k as f64 / PLOT_INTERVALS as f64)
        .filter_map(|r| f(r).map(|v| (r, v)))
        .collect();
    if let Some(p) = extra {
        pts.retain(|q| q.0 != p.0);
        let at = pts.partition_point(|q| q.0 < p.0);
        pts.insert(at, p);
    }
    pts
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn cmd_plotdata(what: PlotKind, input: InputArgs, out_dir: &Path, diag: &Diagnostics) -> Result<String> {
    let inputs = input.resolve()?;
    let p = inputs.potential.as_ref();
    let (re, vmin) = find_minimum(p)?;
    let range = well_range(p)?;
    fs::create_dir_all(out_dir).map_err(|e| Error::Io(format!("{}: {e}", out_dir.display())))?;
    let (name, curve, header) = match what {
        PlotKind::Potential => {
            let hi = range.r_outer.min(4.0 * re).max(re);
            let curve = sample(|r| Some(p.value(r)), range.r_inner, hi, Some((re, vmin)));
            ("potential", curve, format!("{}\nR (bohr)  V (cm-1)", inputs.label))
        }
        PlotKind::Dipole => {
            let d = inputs
                .dipole
                .as_ref()
                .ok_or_else(|| Error::Config("the dipole panel needs a dipole curve (--dipole FILE)".into()))?;
            let (lo, hi) = d.data_range().unwrap_or((range.r_inner, range.r_outer));
            let at_re = d.value(re).map(|v| (re, v));
            ("dipole", sample(|r| d.value(r), lo, hi, at_re), "R (bohr)  d (a.u.)".to_string())
        }
    };
    let data_path = out_dir.join(format!("{name}.dat"));
    let marker_path = out_dir.join(format!("{name}_re.dat"));
    write_file(&data_path, &format_curve(&curve, Some(&header)))?;
    write_file(&marker_path, &format!("{re:.16e}\n"))?;
    diag.note(&format!("wrote {} and {}", data_path.display(), marker_path.display()));
    Ok(String::new())
}

fn cmd_presets(cmd: PresetsCommand) -> Result<String> {
    match cmd {
        PresetsCommand::List => Ok(list_presets().iter().map(|n| format!("{n}\n")).collect()),
        PresetsCommand::Export { name, table, format } => {
            let data = load_reference()?;
            let record = data
                .molecules
                .into_iter()
                .find(|m| m.name.eq_ignore_ascii_case(&name))
                .ok_or_else(|| {
                    Error::NotFound(format!("no preset '{name}'; valid names: {}", list_presets().join(", ")))
                })?;
            Ok(match (table, format) {
                (ExportTable::Levels, ExportFormat::Csv) => output::reference_levels_csv(&record),
                (ExportTable::Constants, ExportFormat::Csv) => output::reference_constants_csv(&record),
                (ExportTable::Levels, ExportFormat::Json) => to_json(&json!({
                    "name": record.name,
                    "method": record.level_table.method,
                    "rotational_n": record.level_table.rotational_n,
                    "energies": record.level_table.energies,
                })),
                (ExportTable::Constants, ExportFormat::Json) => to_json(&json!({
                    "name": record.name,
                    "model_row": record.model_row,
                    "constants": record.constants,
                    "quoted": record.quoted,
                    "notes": record.notes,
                })),
            })
        }
    }
}

fn cmd_constants_dump() -> String {
    let isotopes: Vec<_> = ISOTOPE_MASSES
        .iter()
        .map(|(s, a, m)| json!({"label": format!("{a}{s}"), "mass_u": m}))
        .collect();
    to_json(&json!({
        "hartree_to_cm": HARTREE_TO_CM,
        "bohr_to_nm": BOHR_TO_NM,
        "amu_to_me": AMU_TO_ME,
        "isotopes": isotopes,
        "reference_format_version": embedded_reference().format_version,
    }))
}

fn run(cli: Cli) -> Result<String> {
    let diag = Diagnostics { quiet: cli.quiet };
    match cli.command {
        Command::Solve { input, format, compare } => cmd_solve(input, format, compare, &diag),
        Command::Constants { input, format } => cmd_constants(input, format),
        Command::Post(cmd) => cmd_post(cmd),
        Command::Plotdata { what, input, out_dir } => cmd_plotdata(what, input, &out_dir, &diag),
        Command::Presets(cmd) => cmd_presets(cmd),
        Command::ConstantsDump => Ok(cmd_constants_dump()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
