//! Text renderings of command results. Everything here is a pure function
//! of its inputs so repeated runs give identical bytes.

use std::fmt::Write as _;

use diatom_core::reference::MoleculeRecord;
use diatom_core::spectroscopy::ComparisonReport;
use diatom_core::{LevelTable, MolecularConstants, RadialGrid};
use serde_json::{json, Value};

pub fn levels_csv(table: &LevelTable) -> String {
    let mut out = String::from("v,energy_cm\n");
    for s in &table.states {
        let _ = writeln!(out, "{},{:.6}", s.v, s.energy);
    }
    out
}

pub fn comparison_csv(report: &ComparisonReport) -> String {
    let mut out = String::from("v,computed_cm,reference_cm,difference_cm\n");
    for d in &report.levels {
        let _ = writeln!(out, "{},{:.6},{:.2},{:.6}", d.v, d.computed, d.reference, d.difference);
    }
    out
}

pub fn levels_table(table: &LevelTable, label: &str, grid: Option<&RadialGrid>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}  N = {}  {}", table.system.label(), table.system.rotational_n, label);
    let _ = writeln!(out, "{:>4} {:>16}", "v", "E (cm-1)");
    for s in &table.states {
        let _ = writeln!(out, "{:>4} {:>16.4}", s.v, s.energy);
    }
    let _ = writeln!(out, "levels: {}", table.len());
    if !table.is_empty() {
        let _ = writeln!(out, "D0: {:.4} cm-1", table.d0);
    }
    if let Some(g) = grid {
        let _ = writeln!(out, "grid: [{:.6}, {:.6}] a0, {} points, spacing {:.6} a0", g.r_min, g.r_max, g.n_points, g.spacing);
    }
    out
}

pub fn levels_json(
    table: &LevelTable,
    label: &str,
    grid: Option<&RadialGrid>,
    comparison: Option<&ComparisonReport>,
) -> Value {
    let levels: Vec<Value> = table.states.iter().map(|s| json!({"v": s.v, "energy": s.energy})).collect();
    let mut doc = json!({
        "system": table.system.label(),
        "reduced_mass_u": table.system.reduced_mass,
        "rotational_n": table.system.rotational_n,
        "potential": label,
        "level_count": table.len(),
        "d0": table.d0,
        "levels": levels,
    });
    if let Some(g) = grid {
        doc["grid"] = json!({"r_min": g.r_min, "r_max": g.r_max, "n_points": g.n_points, "spacing": g.spacing});
    }
    if let Some(c) = comparison {
        doc["comparison"] = serde_json::to_value(c).expect("report serializes");
    }
    doc
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.digits$}"))
}

pub fn constants_table(c: &MolecularConstants, label: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {label}");
    let rows = [
        ("R_e (a0)", format!("{:.4}", c.re)),
        ("omega_e (cm-1)", format!("{:.2}", c.we)),
        ("omega_e x_e (cm-1)", format!("{:.4}", c.wexe)),
        ("B_e (cm-1)", format!("{:.5}", c.be)),
        ("D_e (cm-1)", format!("{:.2}", c.de)),
        ("D_0 (cm-1)", format!("{:.2}", c.d0)),
        ("d_e (a.u.)", opt(c.de_dipole, 4)),
        ("<d>_0 (a.u.)", opt(c.d_avg_v0, 4)),
    ];
    for (name, value) in rows {
        let _ = writeln!(out, "{name:<20} {value:>12}");
    }
    out
}

pub fn curve_csv(points: &[(f64, f64)], header: &str) -> String {
    let mut out = format!("{header}\n");
    for (r, v) in points {
        let _ = writeln!(out, "{r:.16e},{v:.16e}");
    }
    out
}

pub fn reference_levels_csv(record: &MoleculeRecord) -> String {
    let mut out = String::from("v,energy_cm\n");
    for (v, e) in record.level_table.energies.iter().enumerate() {
        let _ = writeln!(out, "{v},{e}");
    }
    out
}

pub fn reference_constants_csv(record: &MoleculeRecord) -> String {
    let mut out = String::from("method,basis,re,we,de,d_e\n");
    for row in &record.constants {
        let field = |v: &Option<String>| v.clone().unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            row.method,
            field(&row.basis),
            row.re,
            field(&row.we),
            field(&row.de),
            field(&row.d_e)
        );
    }
    out
}
