use std::f64::consts::PI;

use num_complex::Complex64;
use otp_rh::cauchy::Side;
use otp_rh::report::{write_residual_csv, RESIDUAL_CSV_HEADER};
use otp_rh::rhchain::verify::{verify_all, HARD_STAGES};
use otp_rh::rhchain::{g_branch, Leg};
use otp_rh::weights::CATALOG;
use otp_rh::{ContourConfig, Matrix2, OtpSystem, PeriodicWeight, QuadratureConfig, RhChain, SzegoData};
use proptest::prelude::*;

fn setup(spec: &str, n_max: usize) -> (PeriodicWeight, OtpSystem, SzegoData, ContourConfig) {
    let q = QuadratureConfig::default();
    let w = PeriodicWeight::parse(spec).unwrap();
    let sys = OtpSystem::build(&w, n_max, &q).unwrap();
    let sd = SzegoData::new(&w, &q).unwrap();
    let cc = ContourConfig::for_weight(&w, q);
    (w, sys, sd, cc)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jump_minus_identity_is_nilpotent(idx in 0usize..4, n in 1usize..10, s in 0.0f64..(2.0 * PI), upper in any::<bool>()) {
        let (_, _, sd, cc) = setup(CATALOG[idx], 1);
        let leg = if upper { Leg::Upper } else { Leg::Lower };
        let t = Complex64::new(s, leg.height(cc.r));
        let d = g_branch(&sd, n, t, leg).unwrap() - Matrix2::identity();
        prop_assert_eq!((d * d).norm(), 0.0);
        prop_assert!((g_branch(&sd, n, t, leg).unwrap().det() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn r_continues_across_axis_when_szego_constant_vanishes(idx in prop::sample::select(vec![0usize, 3]), n in 2usize..7, x in 0.0f64..(2.0 * PI)) {
        let (_, sys, sd, cc) = setup(CATALOG[idx], 6);
        let chain = RhChain::new(&sys, &sd, n, &cc).unwrap();
        let (above, below) = chain.r_on_axis(x).unwrap();
        prop_assert!((above - below).norm() < 1e-10);
    }

    #[test]
    fn r_axis_mismatch_is_diagonal_for_any_weight(idx in 0usize..4, n in 2usize..7, x in 0.0f64..(2.0 * PI)) {
        let (_, sys, sd, cc) = setup(CATALOG[idx], 6);
        let chain = RhChain::new(&sys, &sd, n, &cc).unwrap();
        let (above, below) = chain.r_on_axis(x).unwrap();
        let factor = Matrix2::diag(Complex64::new(1.0, 0.0), Complex64::new((-4.0 * sd.constant()).exp(), 0.0));
        prop_assert!((above - below * factor).norm() < 1e-10);
    }
}

#[test]
fn scaling_the_weight_leaves_szego_functions_and_monic_polys_unchanged() {
    let q = QuadratureConfig::default();
    for spec in CATALOG {
        let w = PeriodicWeight::parse(spec).unwrap();
        let w3 = w.scaled(3.0).unwrap();
        let sd = SzegoData::new(&w, &q).unwrap();
        let sd3 = SzegoData::new(&w3, &q).unwrap();
        assert!((sd3.constant() - sd.constant() - 0.5 * 3f64.ln()).abs() < 1e-13);
        for z in [Complex64::new(0.4, 0.3), Complex64::new(2.0, -0.2)] {
            for side in [Side::Plus, Side::Minus] {
                let a = sd.frak_d(side, z).unwrap();
                let b = sd3.frak_d(side, z).unwrap();
                assert!((a - b).norm() < 1e-12, "{spec} {side:?}");
            }
        }
        let sys = OtpSystem::build(&w, 5, &q).unwrap();
        let sys3 = OtpSystem::build(&w3, 5, &q).unwrap();
        for n in 1..=5 {
            let d = sys.monic_first(n).unwrap() - sys3.monic_first(n).unwrap();
            assert!(d.max_modulus() < 1e-12, "{spec} n={n}");
            assert!((sys3.a_const(n).unwrap() * 3.0 - sys.a_const(n).unwrap()).norm() < 1e-12);
        }
    }
}

#[test]
fn hard_stages_hold_on_scaled_weight() {
    let q = QuadratureConfig::default();
    let w = PeriodicWeight::parse("exptrig:0.3,0.1").unwrap().scaled(0.25).unwrap();
    let sys = OtpSystem::build(&w, 4, &q).unwrap();
    let sd = SzegoData::new(&w, &q).unwrap();
    let cc = ContourConfig::for_weight(&w, q);
    let chain = RhChain::new(&sys, &sd, 4, &cc).unwrap();
    let reps = verify_all(&chain).unwrap();
    for name in HARD_STAGES {
        let rep = reps.iter().find(|r| r.stage == name).unwrap();
        assert!(rep.max_jump < 1e-8, "{name}: {}", rep.max_jump);
    }
}

#[test]
fn residual_csv_has_one_row_per_sample() {
    let (_, sys, sd, cc) = setup("cos:0.5", 3);
    let chain = RhChain::new(&sys, &sd, 3, &cc).unwrap();
    let reps = verify_all(&chain).unwrap();
    let mut buf = Vec::new();
    write_residual_csv(&reps, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(RESIDUAL_CSV_HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), reps.iter().map(|r| r.samples.len()).sum::<usize>());
    assert!(rows.iter().all(|r| r.split(',').count() == 4));
    assert!(rows.iter().any(|r| r.starts_with("Y jump:growth,")));
    // same inputs, same bytes
    let mut again = Vec::new();
    write_residual_csv(&verify_all(&chain).unwrap(), &mut again).unwrap();
    assert_eq!(text.as_bytes(), &again[..]);
}
