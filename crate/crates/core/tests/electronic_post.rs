use diatom_core::io::{format_curve, parse_curve};
use diatom_core::post::*;
use diatom_core::potential::TailPolicy;
use diatom_core::units::{cm_to_hartree, HARTREE_TO_CM};
use diatom_core::*;
use proptest::prelude::*;

const E_LI: f64 = -7.432_726_9;
const E_PARTNER: f64 = -1.5;

fn morse_rows(m: &MorsePotential) -> Vec<CounterpoiseRow> {
    (0..120)
        .map(|k| 3.5 + 0.2 * f64::from(k))
        .map(|r| CounterpoiseRow {
            r,
            e_dimer: E_LI + E_PARTNER + cm_to_hartree(m.value(r)),
            e_a_ghost: E_LI,
            e_b_ghost: E_PARTNER,
        })
        .collect()
}

#[test]
fn counterpoise_recovers_generating_curve() {
    let m = get_preset("LiMg").unwrap().morse();
    let curve = counterpoise_correct(&morse_rows(&m)).unwrap();
    for (r, v) in &curve {
        assert!((v - m.value(*r)).abs() < 1e-9, "R = {r}");
    }
}

#[test]
fn counterpoise_non_interacting_limit_is_zero() {
    let rows: Vec<CounterpoiseRow> = (0..10)
        .map(|k| {
            let (a, b) = (-7.43 - 1e-3 * f64::from(k), -199.6 + 1e-4 * f64::from(k));
            CounterpoiseRow { r: 4.0 + f64::from(k), e_dimer: a + b, e_a_ghost: a, e_b_ghost: b }
        })
        .collect();
    assert!(counterpoise_correct(&rows).unwrap().iter().all(|p| p.1 == 0.0));
}

#[test]
fn corrected_curve_survives_file_round_trip() {
    let m = get_preset("LiMg").unwrap().morse();
    let curve = counterpoise_correct(&morse_rows(&m)).unwrap();
    let back = parse_curve(&format_curve(&curve, None)).unwrap();
    assert_eq!(back, curve);
    let t = TabulatedPotential::new(&back, TailPolicy::Dispersion).unwrap();
    for &(r, v) in &curve {
        assert_eq!(t.value(r), v);
    }
}

proptest! {
    #[test]
    fn counterpoise_is_linear(
        rows in prop::collection::vec((-10.0..0.0f64, -10.0..0.0f64, -10.0..0.0f64), 1..8),
        scale in -3.0..3.0f64,
    ) {
        let make = |s: f64| -> Vec<CounterpoiseRow> {
            rows.iter().enumerate().map(|(k, &(d, a, b))| CounterpoiseRow {
                r: 3.0 + k as f64, e_dimer: s * d, e_a_ghost: s * a, e_b_ghost: s * b,
            }).collect()
        };
        let base = counterpoise_correct(&make(1.0)).unwrap();
        let scaled = counterpoise_correct(&make(scale)).unwrap();
        for (x, y) in base.iter().zip(&scaled) {
            prop_assert!((y.1 - scale * x.1).abs() < 1e-9 * HARTREE_TO_CM);
        }
    }

    #[test]
    fn stencil_exact_through_quartic(
        c0 in -1.0..1.0f64,
        c1 in prop_oneof![0.1..2.0f64, -2.0..-0.1f64],
        c2 in -2.0..2.0f64, c3 in -2.0..2.0f64, c4 in -2.0..2.0f64,
        f in 1e-2..1e-1f64,
    ) {
        let e = |x: f64| c0 + x * (c1 + x * (c2 + x * (c3 + x * c4)));
        let scan = FieldEnergyScan::new(f, [e(-2.0 * f), e(-f), e(f), e(2.0 * f)]).with_energy(0, e(0.0));
        let d = finite_field_dipole(&scan).unwrap();
        prop_assert!((d.dipole + c1).abs() < 1e-12 * c1.abs(), "{} vs {}", d.dipole, -c1);
        prop_assert!(d.richardson_error.is_finite());
    }
}
