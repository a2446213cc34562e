mod support;

use cnlight::dynamics::{
    integrate, integrate_with, make_superposition, CouplingSchedule, IntegratorOptions,
    SectorOperator, SystemState,
};
use cnlight::hilbert::{build_sector_basis, excitation_number, AtomicConfig, ConfigKind};
use num_complex::Complex64;
use rand::Rng;
use support::*;

#[test]
fn multi_atom_constant_coupling_matches_matrix_exponential() {
    let mut rng = rng(21);
    for kind in KINDS {
        for na in 1..4 {
            // Detunings off the closed-form condition on purpose.
            let base = random_analytic(kind, &mut rng);
            let c = AtomicConfig::new(
                kind,
                base.couplings(),
                [
                    rng.gen_range(-0.5..0.5),
                    rng.gen_range(-0.5..0.5),
                    rng.gen_range(-0.5..0.5),
                ],
            )
            .unwrap();
            let m = 2 * na + rng.gen_range(0..3);
            let basis = build_sector_basis(&c, na, m).unwrap();
            let k = rng.gen_range(0..basis.dim());
            let s = basis_ket_state(&c, na, m, k);
            let tau = rng.gen_range(1.0..8.0);
            let opts = IntegratorOptions::default().with_samples(2);
            let traj =
                integrate_with(&s, &c, &CouplingSchedule::constant(), 0.0, tau, &opts).unwrap();
            let h = SectorOperator::new(&c, &basis).hamiltonian([1.0; 3]);
            let u = expm(&(h * Complex64::new(0.0, -tau)));
            let oracle: Vec<Complex64> = (0..basis.dim()).map(|i| u[(i, k)]).collect();
            let got = sector_amps(traj.final_state(), m);
            assert!(max_diff(&got, &oracle) < 1e-8, "{kind} na={na} m={m}");
        }
    }
}

#[test]
fn sector_norms_conserved_over_long_runs() {
    let c = AtomicConfig::xi(1.0, std::f64::consts::SQRT_2).with_detunings(0.3, 0.0, 0.1);
    let s = make_superposition(2, 7, 0.6, 0.4, 2, &c).unwrap();
    let traj = integrate(&s, &c, &CouplingSchedule::constant(), 100.0, 1e-11).unwrap();
    let w0 = s.sector_weights();
    for snap in &traj.snapshots {
        for (m, w) in snap.sector_weights() {
            assert!((w - w0[&m]).abs() < 1e-9, "sector {m}: {w} vs {}", w0[&m]);
        }
    }
    assert!(traj.stats.max_norm_drift < 1e-9);
}

#[test]
fn one_atom_ladder_support_is_structural() {
    let c = AtomicConfig::xi(0.8, 1.7);
    let nu0 = 5;
    let traj = integrate(
        &SystemState::fock_ground(&c, 1, nu0).unwrap(),
        &c,
        &CouplingSchedule::bump(9.0).unwrap(),
        9.0,
        1e-11,
    )
    .unwrap();
    for snap in &traj.snapshots {
        for (ket, a) in snap.components() {
            assert!(ket.nu + 2 >= nu0 && ket.nu <= nu0 || a.norm_sqr() < 1e-12);
            assert_eq!(excitation_number(&c, &ket), nu0);
        }
    }
}

#[test]
fn bump_only_changes_coupling_area_at_resonance() {
    // With the plateau at one, the field after a full transit equals constant
    // coupling for t_tof - 1.
    let c = AtomicConfig::xi(1.0, std::f64::consts::SQRT_2);
    let s = make_superposition(1, 3, 0.5, 0.0, 1, &c).unwrap();
    let t_tof = 5.0;
    let bump = integrate(
        &s,
        &c,
        &CouplingSchedule::bump(t_tof).unwrap(),
        t_tof,
        1e-11,
    )
    .unwrap();
    let flat = integrate(&s, &c, &CouplingSchedule::constant(), t_tof - 1.0, 1e-11).unwrap();
    let a = bump.final_state().to_interaction_picture(&c, t_tof);
    let b = flat.final_state().to_interaction_picture(&c, t_tof - 1.0);
    for ((_, x), (_, y)) in a.components().zip(b.components()) {
        assert!((x - y).norm() < 1e-8);
    }
}

#[test]
fn forbidden_pair_never_couples() {
    let c = AtomicConfig::resonant(ConfigKind::V, [0.9, 1.1, 0.0]);
    let basis = build_sector_basis(&c, 2, 5).unwrap();
    let op = SectorOperator::new(&c, &basis);
    let h = op.interaction([1.0, 1.0, 1.0]);
    let only_allowed = op.interaction([1.0, 1.0, 0.0]);
    assert_eq!(h, only_allowed);
}
