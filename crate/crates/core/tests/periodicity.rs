//! τ-periodic projective stalks that certify non-piecewise-heredity.

use nakayama_core::obstructions::tau_orbit::{tau_orbit_test, OrbitConfig, TauOrbitOutcome};
use nakayama_core::{Evidence, NakayamaAlgebra};

fn alg(n: usize, rels: &[(usize, usize)]) -> NakayamaAlgebra {
    NakayamaAlgebra::from_relations(n, rels.iter().copied()).unwrap()
}

fn expect_periodic(a: &NakayamaAlgebra, start: usize, power: usize, shift: i32) {
    let cfg = OrbitConfig {
        max_steps: power + 5,
        ..OrbitConfig::default()
    };
    match tau_orbit_test(a, &[start], &cfg) {
        TauOrbitOutcome::Periodic(c) => {
            assert_eq!(
                c.evidence,
                Evidence::TauPeriodic {
                    start,
                    power,
                    shift
                },
                "{a}"
            );
            c.verify().unwrap();
        }
        TauOrbitOutcome::Inconclusive(logs) => panic!("{a}: {logs:?}"),
    }
}

#[test]
fn eleven_vertex_seeds() {
    for r in [4, 5] {
        expect_periodic(&NakayamaAlgebra::rad_power(11, r).unwrap(), 1, 15, 1);
    }
}

#[test]
fn twelve_vertex_seeds() {
    for r in [3, 6, 7] {
        expect_periodic(&NakayamaAlgebra::rad_power(12, r).unwrap(), 1, 21, 1);
    }
}

#[test]
fn nine_and_ten_vertices() {
    expect_periodic(&alg(9, &[(1, 4), (3, 6), (4, 7), (6, 9)]), 2, 4, 1);
    expect_periodic(&alg(10, &[(1, 5), (2, 7), (4, 9), (6, 10)]), 3, 7, 2);
    expect_periodic(&alg(10, &[(1, 4), (2, 6), (3, 8), (5, 9), (7, 10)]), 2, 9, 1);
    expect_periodic(&alg(10, &[(1, 6), (3, 8), (5, 10)]), 2, 9, 1);
}
