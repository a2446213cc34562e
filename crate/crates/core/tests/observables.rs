mod support;

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use cnlight::dynamics::{integrate, make_superposition, CouplingSchedule};
use cnlight::hilbert::{AtomicConfig, BasisState};
use cnlight::observables::{
    detect_cyclic_symmetry, husimi, husimi_two_fock, linear_entropy, photon_probabilities,
    reduce_field, rotation_residual, FieldDensityMatrix, GridSpec, HusimiEvaluator,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::Rng;
use support::*;

fn random_points(rng: &mut StdRng, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| (rng.gen_range(0.0..6.0), rng.gen_range(-PI..PI)))
        .collect()
}

fn random_amps(rng: &mut StdRng, nus: &[u32]) -> Vec<(u32, Complex64)> {
    let raw: Vec<Complex64> = nus
        .iter()
        .map(|_| Complex64::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(-PI..PI)))
        .collect();
    let n = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    nus.iter().zip(raw).map(|(&nu, a)| (nu, a / n)).collect()
}

#[test]
fn one_atom_two_sector_reduction_matches_expansion() {
    let c = AtomicConfig::xi(1.0, SQRT_2).with_detunings(0.2, 0.0, 0.3);
    let s = make_superposition(1, 3, 0.7, 0.4, 1, &c).unwrap();
    let traj = integrate(&s, &c, &CouplingSchedule::bump(4.0).unwrap(), 4.0, 1e-11).unwrap();
    for snap in &traj.snapshots {
        let a = |nu, q, r| snap.amplitude(&BasisState { nu, na: 1, q, r });
        // Sector 1: |0; level 2>, |1; ground>. Sector 3: |1; level 3>, |2; level 2>, |3; ground>.
        let mut oracle = DMatrix::<Complex64>::zeros(4, 4);
        oracle[(0, 0)] = a(0, 1, 0) * a(0, 1, 0).conj();
        oracle[(1, 1)] = a(1, 1, 1).norm_sqr().into();
        oracle[(1, 1)] += a(1, 0, 0).norm_sqr();
        oracle[(2, 2)] = a(2, 1, 0).norm_sqr().into();
        oracle[(3, 3)] = a(3, 1, 1).norm_sqr().into();
        oracle[(0, 2)] = a(0, 1, 0) * a(2, 1, 0).conj();
        oracle[(2, 0)] = oracle[(0, 2)].conj();
        oracle[(1, 3)] = a(1, 1, 1) * a(3, 1, 1).conj();
        oracle[(3, 1)] = oracle[(1, 3)].conj();
        let rho = reduce_field(snap);
        assert_eq!(rho.nu_max, 3);
        assert!((&rho.rho - &oracle).iter().all(|z| z.norm() < 1e-15));
        rho.validate().unwrap();
        let sym = detect_cyclic_symmetry(&rho, 1e-10);
        assert!(sym.support_differences.iter().all(|&d| d == 2));
    }
}

#[test]
fn pure_product_has_zero_entropy() {
    let c = AtomicConfig::v(0.5, 1.5);
    let s = make_superposition(0, 6, 1.1, -0.3, 3, &c).unwrap();
    assert!(linear_entropy(&reduce_field(&s)).abs() < 1e-12);
}

#[test]
fn general_matches_closed_form_at_random_points() {
    let mut rng = rng(31);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let nu1 = rng.gen_range(0..6);
        let nu2 = nu1 + rng.gen_range(1..6);
        let theta = rng.gen_range(0.0..PI);
        let xi = rng.gen_range(-PI..PI);
        let rho = FieldDensityMatrix::pure(&[
            (nu1, Complex64::new(theta.cos(), 0.0)),
            (nu2, Complex64::from_polar(theta.sin(), xi)),
        ]);
        let eval = HusimiEvaluator::new(&rho);
        for (r, phi) in random_points(&mut rng, 1000) {
            worst = worst
                .max((eval.polar(r, phi) - husimi_two_fock(nu1, nu2, theta, xi, r, phi)).abs());
        }
    }
    assert!(worst < 1e-12, "worst {worst:e}");
}

#[test]
fn xi_rotates_rigidly() {
    let mut rng = rng(32);
    for _ in 0..1000 {
        let nu1 = rng.gen_range(0..5);
        let nu2 = nu1 + rng.gen_range(1..5);
        let (theta, xi) = (rng.gen_range(0.0..PI), rng.gen_range(-PI..PI));
        let (r, phi) = (rng.gen_range(0.0..6.0), rng.gen_range(-PI..PI));
        let rotated = husimi_two_fock(nu1, nu2, theta, xi, r, phi);
        let base = husimi_two_fock(nu1, nu2, theta, 0.0, r, phi - xi / (nu2 - nu1) as f64);
        assert!((rotated - base).abs() < 1e-12);
    }
}

#[test]
fn coherence_on_multiples_of_n_gives_exact_rotation_symmetry() {
    let mut rng = rng(33);
    let points = random_points(&mut rng, 10_000);
    for n in 2..6u32 {
        let nu0 = rng.gen_range(0..3);
        let nus: Vec<u32> = (0..3).map(|k| nu0 + n * k).collect();
        let rho = FieldDensityMatrix::pure(&random_amps(&mut rng, &nus));
        let rep = cnlight::observables::detect_cyclic_symmetry_with(&rho, 1e-10, &points);
        assert_eq!(rep.order, n);
        assert!(rep.max_residual < 1e-10, "n={n}: {:e}", rep.max_residual);
        // A finer turn is not a symmetry.
        assert!(rotation_residual(&rho, PI / n as f64, &points) > 1e-4);
    }
}

#[test]
fn grids_are_normalized_and_non_negative() {
    let mut rng = rng(34);
    let grid = GridSpec::default();
    for _ in 0..4 {
        let nus: Vec<u32> = (0..3)
            .map(|_| rng.gen_range(0..9))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let rho = FieldDensityMatrix::pure(&random_amps(&mut rng, &nus));
        let q = husimi(&rho, &grid).unwrap();
        assert!(q.min() >= 0.0);
        assert!(
            (q.normalization() - 1.0).abs() < 1e-3,
            "{:?}: {}",
            nus,
            q.normalization()
        );
    }
}

#[test]
fn vacuum_peak() {
    let q = husimi(&FieldDensityMatrix::fock(0), &GridSpec::default()).unwrap();
    let (peak, qq, pp) = q.peak();
    assert!((peak - 1.0 / PI).abs() < 1e-15 && qq.abs() < 1e-12 && pp.abs() < 1e-12);
}

#[test]
fn reduced_fields_are_valid_density_matrices() {
    let c = AtomicConfig::lambda(0.7, 1.2).with_detunings(0.1, 0.4, -0.2);
    let s = make_superposition(2, 4, FRAC_PI_4, 0.5, 2, &c).unwrap();
    let traj = integrate(&s, &c, &CouplingSchedule::bump(5.0).unwrap(), 5.0, 1e-11).unwrap();
    for snap in &traj.snapshots {
        let rho = reduce_field(snap);
        rho.validate().unwrap();
        assert!((photon_probabilities(&rho).iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let s_l = linear_entropy(&rho);
        assert!((-1e-12..=1.0 - 1.0 / rho.dim() as f64 + 1e-12).contains(&s_l));
    }
}
