//! End-to-end checks on the bundled molecular integrals.

mod common;

use bkbench::fermion::{build_hamiltonian, fock_matrix, parse_fcidump_str, reference_energy, write_fcidump};
use bkbench::mapping::map_operator;
use bkbench::simulator::{ground_state, operator_matrix, trotter_error};
use bkbench::trotter::{plan_for, MagnitudeDirection, OrderingStrategy};
use bkbench::MappingScheme;
use common::fixture_text;

const FIXTURES: [&str; 3] = ["h2_sto3g.fcidump", "h2_631g.fcidump", "lih_sto3g.fcidump"];

#[test]
fn mapped_ground_energies_match_fci() {
    for f in FIXTURES {
        let text = fixture_text(f);
        let fci = reference_energy(&text).unwrap();
        let ints = parse_fcidump_str(&text).unwrap();
        let h = build_hamiltonian(&ints);
        let energies: Vec<f64> = MappingScheme::ALL
            .iter()
            .map(|&s| {
                let op = map_operator(&h, s).unwrap();
                let m = operator_matrix(&op).unwrap();
                assert!(m.hermiticity_defect() < 1e-12, "{f} {s}");
                ground_state(&m).unwrap().0 + ints.core_energy
            })
            .collect();
        assert!((energies[0] - fci).abs() < 1e-8, "{f}: {} vs {fci}", energies[0]);
        assert!((energies[0] - energies[1]).abs() < 1e-9, "{f}: {energies:?}");
    }
}

#[test]
fn h2_mapped_spectrum_matches_fock_oracle() {
    let ints = parse_fcidump_str(&fixture_text("h2_sto3g.fcidump")).unwrap();
    let h = build_hamiltonian(&ints);
    let fock = fock_matrix(&h, 4).unwrap();
    let oracle = {
        let e = nalgebra::SymmetricEigen::new(fock.to_dense());
        let mut v: Vec<f64> = e.eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    };
    for s in MappingScheme::ALL {
        let m = operator_matrix(&map_operator(&h, s).unwrap()).unwrap();
        let e = nalgebra::SymmetricEigen::new(m.to_dense());
        let mut v: Vec<f64> = e.eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        let worst = v.iter().zip(&oracle).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-9, "{s}: {worst}");
    }
}

#[test]
fn fcidump_round_trip() {
    for f in FIXTURES {
        let ints = parse_fcidump_str(&fixture_text(f)).unwrap();
        let mut buf = Vec::new();
        write_fcidump(&ints, &mut buf).unwrap();
        let again = parse_fcidump_str(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(again.n_spatial, ints.n_spatial);
        assert_eq!(again.n_electrons, ints.n_electrons);
        assert_eq!(again.core_energy, ints.core_energy);
        for p in 0..ints.n_spatial {
            for q in 0..ints.n_spatial {
                assert_eq!(again.one_body(p, q), ints.one_body(p, q));
                for r in 0..ints.n_spatial {
                    for s in 0..ints.n_spatial {
                        assert_eq!(again.two_body(p, q, r, s), ints.two_body(p, q, r, s));
                    }
                }
            }
        }
    }
}

/// One magnitude-ordered step at t = 1 on H2/STO-3G, frozen from a run
/// cross-checked against a scipy `expm` product.
const H2_ONE_STEP_ERROR: f64 = 0.012931377611936;

#[test]
fn h2_one_step_trotter_error_regression() {
    let text = fixture_text("h2_sto3g.fcidump");
    let ints = parse_fcidump_str(&text).unwrap();
    let h = build_hamiltonian(&ints);
    for s in MappingScheme::ALL {
        let op = map_operator(&h, s).unwrap();
        let (e, g) = ground_state(&operator_matrix(&op).unwrap()).unwrap();
        let plan = plan_for(&op, OrderingStrategy::Magnitude, MagnitudeDirection::Descending, 1, 1.0, ints.core_energy).unwrap();
        let r = trotter_error(&plan, e + ints.core_energy, &g).unwrap();
        assert!((r.error - H2_ONE_STEP_ERROR).abs() < 1e-9, "{s}: {}", r.error);
        assert!(!r.low_overlap);
        assert_eq!(r.time, 1.0);
    }
}
