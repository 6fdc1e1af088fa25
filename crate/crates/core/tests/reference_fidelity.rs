//! The embedded tables against an independent transcription of the
//! published values, plus the committed checksum of the data file.

use diatom_core::reference::{embedded_reference, EMBEDDED_REFERENCE};
use diatom_core::*;
use sha2::{Digest, Sha256};

const TABLES: [(&str, &[&str]); 5] = [
    ("LiBe", &[
        "-2254.29", "-1954.76", "-1669.25", "-1407.21", "-1167.64", "-951.37", "-760.21", "-594.38", "-453.64",
        "-337.24", "-243.42", "-169.45", "-112.19", "-68.88", "-37.48", "-16.55", "-4.86", "-0.50",
    ]),
    ("LiMg", &[
        "-1330.05", "-1164.35", "-1010.96", "-870.00", "-741.52", "-625.41", "-521.43", "-429.16", "-348.00",
        "-277.27", "-216.21", "-164.06", "-120.16", "-83.91", "-54.87", "-32.62", "-16.78", "-6.89", "-1.75",
        "-0.12",
    ]),
    ("LiCa", &[
        "-2428.02", "-2232.09", "-2042.75", "-1861.87", "-1688.77", "-1524.31", "-1368.30", "-1221.05",
        "-1082.74", "-953.39", "-833.10", "-721.92", "-619.79", "-526.60", "-442.18", "-366.32", "-298.77",
        "-239.22", "-187.31", "-142.70", "-105.03", "-73.95", "-49.08", "-30.02", "-16.33", "-7.41", "-2.47",
        "-0.42",
    ]),
    ("LiSr", &[
        "-2275.59", "-2099.56", "-1931.06", "-1769.35", "-1614.41", "-1466.66", "-1326.14", "-1192.91",
        "-1067.12", "-948.89", "-838.24", "-735.17", "-639.65", "-551.65", "-471.08", "-397.78", "-331.60",
        "-272.33", "-219.76", "-173.66", "-133.76", "-99.83", "-71.56", "-48.65", "-30.80", "-17.64", "-8.73",
        "-3.42", "-0.86", "-0.04",
    ]),
    ("LiYb", &[
        "-2277.12", "-2103.98", "-1938.15", "-1778.86", "-1626.11", "-1480.30", "-1341.45", "-1209.63",
        "-1084.99", "-967.64", "-857.62", "-754.90", "-659.49", "-571.36", "-490.44", "-416.57", "-349.63",
        "-289.41", "-235.73", "-188.38", "-147.10", "-111.67", "-81.82", "-57.26", "-37.70", "-22.84", "-12.36",
        "-5.66", "-1.94", "-0.36", "-0.005",
    ]),
];

/// (molecule, method label, R_e, ω_e, D_e, d_e)
const CONSTANTS: [(&str, &str, &str, &str, &str, &str); 12] = [
    ("LiBe", "UCCSD(T)/aug-cc-pV5Z-DK", "4.873", "299.5", "2406", "1.41"),
    ("LiMg", "RCCSD(T)/aug-cc-pCVQZ", "5.86", "174.4", "1417", "0.32"),
    ("LiMg", "UCCSD(T)/aug-cc-pV5Z-DK", "5.87", "206.1", "1432", "0.44"),
    ("LiCa", "UCCSD(T)/def2-QZVPP", "6.410", "196.0", "2320", "0.438"),
    ("LiCa", "UCCSD(T)/aug-cc-pCVQZ", "6.358", "205.5", "2460", "0.456"),
    ("LiCa", "UCCSDT/aug-cc-pCVQZ", "6.357", "207.1", "2607", "0.440"),
    ("LiSr", "UCCSD(T)/def2-QZVPP", "6.766", "167.0", "2165", "0.109"),
    ("LiSr", "UCCSD(T)/basis of Lim", "6.712", "183.0", "2302", "0.117"),
    ("LiSr", "UCCSD(T)/aug-cc-pCV5Z", "6.700", "182.2", "2367", "0.112"),
    ("LiSr", "UCCSDT/basis of Lim", "6.711", "184.2", "2401", "0.096"),
    ("LiYb", "UCCSD(T)/basis of Cao", "6.710", "181.5", "2289", "0.011"),
    ("LiCa", "Experiment", "6.3415(5)", "195.2", "2607.8(100)", ""),
];

#[test]
fn checksum_matches_committed_value() {
    let committed = include_str!("../data/reference.json.sha256");
    let expected = committed.split_whitespace().next().unwrap();
    let actual: String = Sha256::digest(EMBEDDED_REFERENCE.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(actual, expected);
}

#[test]
fn level_tables_digit_for_digit() {
    let data = embedded_reference();
    for (name, energies) in TABLES {
        let record = data.molecules.iter().find(|m| m.name == name).unwrap();
        assert_eq!(record.level_table.energies, energies, "{name}");
        assert_eq!(record.level_table.rotational_n, 0);
    }
    let libe = &data.molecules[0].level_table.energies;
    assert_eq!(libe[17], "-0.50");
    assert_eq!(data.molecules[4].level_table.energies[30], "-0.005");
}

#[test]
fn constants_rows_digit_for_digit() {
    let data = embedded_reference();
    for (name, label, re, we, de, d) in CONSTANTS {
        let record = data.molecules.iter().find(|m| m.name == name).unwrap();
        let row = record.constants.iter().find(|r| r.label() == label).unwrap_or_else(|| panic!("{label}"));
        assert_eq!(row.re, re);
        assert_eq!(row.we.as_deref(), Some(we));
        assert_eq!(row.de.as_deref(), Some(de));
        assert_eq!(row.d_e.as_deref().unwrap_or(""), d);
    }
}

#[test]
fn quoted_values() {
    let q = |name: &str, key: &str| get_preset(name).unwrap().quoted(key);
    assert_eq!(q("LiBe", "d0"), Some(2254.29));
    assert_eq!(q("LiMg", "d0"), Some(1330.05));
    assert_eq!(q("LiSr", "d0"), Some(2275.59));
    assert_eq!(q("LiBe", "d_avg_v0"), Some(1.372));
    assert_eq!(q("LiMg", "d_avg_v0"), Some(0.413));
    assert_eq!(q("LiCa", "d_avg_v0"), Some(0.437));
    assert_eq!(q("LiSr", "d_avg_v0"), Some(0.111));
    assert_eq!(q("LiYb", "d_avg_v0"), None);
    assert_eq!(q("LiCa", "d_e"), Some(0.044));
    assert_eq!(get_preset("LiCa").unwrap().constants.de_dipole, Some(0.440));
}

#[test]
fn preset_systems_and_labels() {
    let expected = [
        ("LiBe", "9Be", "UCCSD(T)/aug-cc-pV5Z-DK", 3.944_895),
        ("LiMg", "24Mg", "RCCSD(T)/aug-cc-pCVQZ", 5.428_18),
        ("LiCa", "40Ca", "UCCSDT/aug-cc-pCVQZ", 5.968_2),
        ("LiSr", "88Sr", "UCCSD(T)/aug-cc-pCV5Z", 6.497_425),
        ("LiYb", "172Yb", "UCCSD(T)/basis of Cao", 6.740_93),
    ];
    for (name, partner, label, mu) in expected {
        let p = get_preset(name).unwrap();
        assert_eq!(p.system.atom_b.label(), partner);
        assert_eq!(p.method_label, label);
        assert!((p.system.reduced_mass - mu).abs() < 1e-4, "{name}: {}", p.system.reduced_mass);
    }
}
