#![allow(dead_code)]

use cnlight::dynamics::{Sector, SystemState};
use cnlight::hilbert::{build_sector_basis, AtomicConfig, ConfigKind};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const KINDS: [ConfigKind; 3] = [ConfigKind::Xi, ConfigKind::V, ConfigKind::Lambda];

/// `exp(a)` by scaling and squaring of a truncated Taylor series.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let norm: f64 = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.25 {
        s += 1;
    }
    let b = a / Complex64::new(2f64.powi(s), 0.0);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..40 {
        term = &term * &b / Complex64::new(k as f64, 0.0);
        sum += &term;
        if term.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-20 {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random couplings and detunings satisfying the closed-form condition of `kind`.
pub fn random_analytic(kind: ConfigKind, rng: &mut StdRng) -> AtomicConfig {
    let mut mu = [0.0; 3];
    for (k, t) in cnlight::hilbert::Transition::ALL.iter().enumerate() {
        if *t != kind.forbidden() {
            mu[k] = rng.gen_range(0.2..1.6);
        }
    }
    let d: f64 = rng.gen_range(-1.0..1.0);
    let delta = match kind {
        ConfigKind::Xi => [d, 0.0, -d],
        ConfigKind::V => [d, d, 0.0],
        ConfigKind::Lambda => [0.0, d, d],
    };
    AtomicConfig::new(kind, mu, delta).unwrap()
}

/// `|ket k of sector m>` with unit amplitude.
pub fn basis_ket_state(config: &AtomicConfig, na: u32, m: u32, k: usize) -> SystemState {
    let basis = build_sector_basis(config, na, m).unwrap();
    let mut amps = DVector::zeros(basis.dim());
    amps[k] = Complex64::new(1.0, 0.0);
    let mut s = SystemState::empty(na);
    s.sectors.insert(m, Sector { basis, amps });
    s
}

pub fn sector_amps(state: &SystemState, m: u32) -> Vec<Complex64> {
    state.sectors[&m].amps.iter().copied().collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
