//! Closed-form single-atom results: generalized Rabi frequencies, the
//! three-level step spectrum, dressed states and their field entropies, the
//! interaction-frame propagator, and the switching/balancing conditions used
//! to prepare two-photon superpositions.
//!
//! Everything here works on the ordered one-atom sector kets
//! `|1> = |M - lambda3; 1 0 0>`, `|2> = |M - lambda2; 1 1 0>`,
//! `|3> = |M; 1 1 1>`, which is also the order produced by
//! [`build_sector_basis`](crate::hilbert::build_sector_basis) for one atom.

use std::f64::consts::PI;

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{AtomicConfig, BasisState, ConfigKind};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Generalized Rabi frequency `Omega_X` of the sector with `m` excitations.
pub fn rabi_frequency(config: &AtomicConfig, m: u32) -> Result<f64> {
    // Xi at M = 1 is allowed: the sqrt(M - 1) mu23 weight simply vanishes.
    if m < 1 {
        return Err(Error::SectorTooSmall { m, min: 1 });
    }
    let m = m as f64;
    let sq = match config.kind() {
        ConfigKind::Xi => m * config.mu12().powi(2) + (m - 1.0) * config.mu23().powi(2),
        ConfigKind::V => m * (config.mu12().powi(2) + config.mu13().powi(2)),
        ConfigKind::Lambda => m * (config.mu13().powi(2) + config.mu23().powi(2)),
    };
    Ok(sq.sqrt())
}

/// One three-level step of the dressed spectrum, energies in units of `hbar Omega`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepSpectrum {
    pub m: u32,
    pub omega_x: f64,
    /// `sqrt((delta_x / 2)^2 + omega_x^2)`.
    pub cal_e: f64,
    pub delta_x: f64,
    pub e_plus: f64,
    pub e_zero: f64,
    pub e_minus: f64,
}

impl StepSpectrum {
    pub fn energy(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.e_plus,
            Branch::Zero => self.e_zero,
            Branch::Minus => self.e_minus,
        }
    }
}

pub fn step_spectrum(config: &AtomicConfig, m: u32) -> Result<StepSpectrum> {
    config.require_analytic()?;
    let omega_x = rabi_frequency(config, m)?;
    let delta_x = config.delta_x();
    let cal_e = ((delta_x / 2.0).powi(2) + omega_x.powi(2)).sqrt();
    let mf = m as f64;
    // The V dark state lives on the two detuned kets and picks up delta12.
    let e_zero = match config.kind() {
        ConfigKind::V => mf + delta_x,
        ConfigKind::Xi | ConfigKind::Lambda => mf,
    };
    Ok(StepSpectrum {
        m,
        omega_x,
        cal_e,
        delta_x,
        e_plus: mf + delta_x / 2.0 + cal_e,
        e_zero,
        e_minus: mf + delta_x / 2.0 - cal_e,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Zero,
    Minus,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::Plus, Branch::Zero, Branch::Minus];

    pub fn name(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Zero => "zero",
            Branch::Minus => "minus",
        }
    }

    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Zero => 0.0,
            Branch::Minus => -1.0,
        }
    }
}

/// A dressed (atom-field) eigenstate of one sector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DressedState {
    pub branch: Branch,
    pub energy: f64,
    /// Amplitudes over the ordered one-atom kets `|1>, |2>, |3>`.
    pub amps: [Complex64; 3],
}

/// The three formal one-atom kets of sector `m`. For the Xi configuration at
/// `m = 1` the first ket would need a negative photon number and is `None`.
pub fn one_atom_kets(config: &AtomicConfig, m: u32) -> [Option<BasisState>; 3] {
    let (l2, l3) = config.lambdas();
    let ket = |drop: u32, q, r| m.checked_sub(drop).map(|nu| BasisState { nu, na: 1, q, r });
    [ket(l3, 0, 0), ket(l2, 1, 0), ket(0, 1, 1)]
}

/// Photon numbers of the three formal kets, possibly negative.
fn one_atom_photons(config: &AtomicConfig, m: u32) -> [i64; 3] {
    let (l2, l3) = config.lambdas();
    let m = m as i64;
    [m - l3 as i64, m - l2 as i64, m]
}

/// Dressed states ordered `(plus, zero, minus)`.
pub fn dressed_states(config: &AtomicConfig, m: u32) -> Result<[DressedState; 3]> {
    let spec = step_spectrum(config, m)?;
    if spec.omega_x == 0.0 {
        return Err(Error::DegenerateSector { m });
    }
    let mf = m as f64;
    let d = spec.delta_x;
    let e = spec.cal_e;
    let om = spec.omega_x;
    let sm = mf.sqrt();

    let state = |branch: Branch| -> [f64; 3] {
        let s = branch.sign();
        match (config.kind(), branch) {
            (ConfigKind::Xi, Branch::Zero) => [
                -sm * config.mu12() / om,
                0.0,
                (mf - 1.0).sqrt() * config.mu23() / om,
            ],
            (ConfigKind::Xi, _) => {
                let n = e * (2.0 + s * d / e).sqrt();
                [
                    (mf - 1.0).sqrt() * config.mu23() / n,
                    -(d / 2.0 + s * e) / n,
                    sm * config.mu12() / n,
                ]
            }
            (ConfigKind::Lambda, Branch::Zero) => {
                let n = config.mu13().hypot(config.mu23());
                [0.0, -config.mu13() / n, config.mu23() / n]
            }
            (ConfigKind::Lambda, _) => {
                let n = e * (2.0 + s * d / e).sqrt();
                [
                    -(d / 2.0 + s * e) / n,
                    sm * config.mu23() / n,
                    sm * config.mu13() / n,
                ]
            }
            (ConfigKind::V, Branch::Zero) => {
                let n = config.mu12().hypot(config.mu13());
                [-config.mu12() / n, config.mu13() / n, 0.0]
            }
            (ConfigKind::V, _) => {
                let n = e * (2.0 - s * d / e).sqrt();
                [
                    -s * sm * config.mu13() / n,
                    -s * sm * config.mu12() / n,
                    (e - s * d / 2.0) / n,
                ]
            }
        }
    };

    Ok(Branch::ALL.map(|branch| {
        let a = state(branch);
        DressedState {
            branch,
            energy: spec.energy(branch),
            amps: a.map(c),
        }
    }))
}

/// Closed-form linear entropy `1 - Tr(rho_F^2)` of a dressed state's field.
pub fn dressed_linear_entropy(config: &AtomicConfig, branch: Branch, m: u32) -> Result<f64> {
    let spec = step_spectrum(config, m)?;
    if spec.omega_x == 0.0 {
        return Err(Error::DegenerateSector { m });
    }
    let mf = m as f64;
    let d = spec.delta_x;
    let e = spec.cal_e;
    let s = branch.sign();
    let value = match (config.kind(), branch) {
        (ConfigKind::Xi, Branch::Zero) => {
            let a = mf * config.mu12().powi(2);
            let b = (mf - 1.0) * config.mu23().powi(2);
            2.0 * a * b / (a + b).powi(2)
        }
        (ConfigKind::Xi, _) => {
            let num = (mf - 1.0).powi(2) * config.mu23().powi(4)
                + mf.powi(2) * config.mu12().powi(4)
                + (d / 2.0 + s * e).powi(4);
            1.0 - num / (e.powi(4) * (2.0 + s * d / e).powi(2))
        }
        (ConfigKind::V | ConfigKind::Lambda, Branch::Zero) => 0.0,
        (ConfigKind::V, _) => {
            let num = spec.omega_x.powi(4) + (-s * d / 2.0 + e).powi(4);
            1.0 - num / (e.powi(4) * (2.0 - s * d / e).powi(2))
        }
        // V expression with delta12 -> -delta13.
        (ConfigKind::Lambda, _) => {
            let num = spec.omega_x.powi(4) + (s * d / 2.0 + e).powi(4);
            1.0 - num / (e.powi(4) * (2.0 + s * d / e).powi(2))
        }
    };
    Ok(value)
}

/// Field linear entropy of a one-atom sector state given by its amplitudes
/// over the three kets. The matter labels of the kets are distinct, so the
/// reduced field is diagonal; kets sharing a photon number add up.
pub fn one_atom_field_entropy(config: &AtomicConfig, m: u32, amps: &[Complex64; 3]) -> f64 {
    let nus = one_atom_photons(config, m);
    let mut weights: Vec<(i64, f64)> = Vec::with_capacity(3);
    for (nu, a) in nus.iter().zip(amps) {
        match weights.iter_mut().find(|(n, _)| n == nu) {
            Some((_, w)) => *w += a.norm_sqr(),
            None => weights.push((*nu, a.norm_sqr())),
        }
    }
    1.0 - weights.iter().map(|(_, w)| w * w).sum::<f64>()
}

/// Interaction-frame propagator of one sector: the full propagator is
/// `exp(-i M tau) * u`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropagatorMatrix {
    pub m: u32,
    pub tau: f64,
    pub u: Matrix3<Complex64>,
}

impl PropagatorMatrix {
    /// Propagator including the global `exp(-i M tau)` phase.
    pub fn full(&self) -> Matrix3<Complex64> {
        self.u * (-I * (self.m as f64) * self.tau).exp()
    }

    /// `max |(U^dagger U - 1)_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.u.adjoint() * self.u - Matrix3::identity();
        d.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub fn propagator(config: &AtomicConfig, m: u32, tau: f64) -> Result<PropagatorMatrix> {
    let spec = step_spectrum(config, m)?;
    if spec.omega_x == 0.0 {
        return Err(Error::DegenerateSector { m });
    }
    let mf = m as f64;
    let d = spec.delta_x;
    let e = spec.cal_e;
    let om2 = spec.omega_x.powi(2);
    let (sin, cos) = (e * tau).sin_cos();
    let half = (-I * d * tau / 2.0).exp();
    // Bright-state amplitudes: `plus` for a ket at zero detuning, `minus`
    // for the ket carrying the detuning.
    let plus = (c(cos) + I * d * sin / (2.0 * e)) * half;
    let minus = (c(cos) - I * d * sin / (2.0 * e)) * half;
    let flip = |g: f64| I * g * sin / e * half;

    let mut u = Matrix3::<Complex64>::zeros();
    match config.kind() {
        ConfigKind::Xi => {
            let a = (mf - 1.0) * config.mu23().powi(2);
            let b = mf * config.mu12().powi(2);
            u[(0, 0)] = (c(b) + a * plus) / om2;
            u[(0, 1)] = flip((mf - 1.0).sqrt() * config.mu23());
            u[(0, 2)] =
                (mf * (mf - 1.0)).sqrt() * config.mu12() * config.mu23() / om2 * (plus - 1.0);
            u[(1, 1)] = minus;
            u[(1, 2)] = flip(mf.sqrt() * config.mu12());
            u[(2, 2)] = (c(a) + b * plus) / om2;
        }
        ConfigKind::Lambda => {
            let (m13, m23) = (config.mu13(), config.mu23());
            u[(0, 0)] = minus;
            u[(0, 1)] = flip(mf.sqrt() * m23);
            u[(0, 2)] = flip(mf.sqrt() * m13);
            u[(1, 1)] = mf / om2 * (c(m13 * m13) + m23 * m23 * plus);
            u[(1, 2)] = -mf * m13 * m23 / om2 * (1.0 - plus);
            u[(2, 2)] = mf / om2 * (c(m23 * m23) + m13 * m13 * plus);
        }
        ConfigKind::V => {
            let (m12, m13) = (config.mu12(), config.mu13());
            let dark = (-I * d * tau).exp();
            u[(0, 0)] = mf / om2 * (m12 * m12 * dark + m13 * m13 * minus);
            u[(0, 1)] = -mf * m12 * m13 / om2 * (dark - minus);
            u[(0, 2)] = flip(mf.sqrt() * m13);
            u[(1, 1)] = mf / om2 * (m13 * m13 * dark + m12 * m12 * minus);
            u[(1, 2)] = flip(mf.sqrt() * m12);
            u[(2, 2)] = plus;
        }
    }
    // The generator is real symmetric, so the propagator is symmetric.
    for i in 0..3 {
        for j in 0..i {
            u[(i, j)] = u[(j, i)];
        }
    }
    Ok(PropagatorMatrix { m, tau, u })
}

/// Amplitudes `(U13, U23, U33)` at time `tau` of an atom that entered in its
/// ground state with `nu0` photons, on the kets `|nu0 - lambda3; 100>`,
/// `|nu0 - lambda2; 110>`, `|nu0; 111>` (interaction frame).
pub fn evolve_ground_analytic(config: &AtomicConfig, nu0: u32, tau: f64) -> Result<[Complex64; 3]> {
    let l3 = config.lambdas().1;
    if nu0 < l3 {
        return Err(Error::SectorTooSmall { m: nu0, min: l3 });
    }
    let p = propagator(config, nu0, tau)?;
    Ok([p.u[(0, 2)], p.u[(1, 2)], p.u[(2, 2)]])
}

/// `n pi / E_Xi`: the n-th time at which the `nu0 - 1` photon amplitude of
/// a ladder atom entering in its ground state vanishes.
pub fn switching_time(config: &AtomicConfig, nu0: u32, n: u32) -> Result<f64> {
    if config.kind() != ConfigKind::Xi {
        return Err(Error::WrongConfiguration {
            expected: "xi",
            got: config.kind().name(),
        });
    }
    if n < 1 {
        return Err(Error::InvalidArgument(
            "switching index n must be >= 1".into(),
        ));
    }
    let spec = step_spectrum(config, nu0)?;
    if spec.cal_e == 0.0 {
        return Err(Error::DegenerateSector { m: nu0 });
    }
    Ok(n as f64 * PI / spec.cal_e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Resonant `mu12` giving equal `nu0 - 2` and `nu0` photon probabilities at
/// the first switching time.
pub fn balanced_coupling(nu0: u32, mu23: f64, sign: Sign) -> Result<f64> {
    if nu0 < 2 {
        return Err(Error::SectorTooSmall { m: nu0, min: 2 });
    }
    if mu23.is_nan() || mu23 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "mu23 must be positive, got {mu23}"
        )));
    }
    let s = match sign {
        Sign::Plus => 1.0,
        Sign::Minus => -1.0,
    };
    let n = nu0 as f64;
    Ok((2f64.sqrt() + s) * ((n - 1.0) / n).sqrt() * mu23)
}

/// `LHS - RHS` of the off-resonant balance condition
/// `cos(delta12 pi / sqrt(4 nu0 (mu12^2 + mu23^2) + delta12^2 - 4 mu23^2))
///   = (nu0 mu12^2 - (nu0 - 1) mu23^2)^2 / (4 nu0 (nu0 - 1) mu12^2 mu23^2)`.
pub fn balanced_detuning_residual(nu0: u32, mu12: f64, mu23: f64, delta12: f64) -> Result<f64> {
    if nu0 < 2 {
        return Err(Error::SectorTooSmall { m: nu0, min: 2 });
    }
    let n = nu0 as f64;
    let (a, b) = (mu12 * mu12, mu23 * mu23);
    let radicand = 4.0 * n * (a + b) + delta12 * delta12 - 4.0 * b;
    if radicand.is_nan() || radicand <= 0.0 {
        return Err(Error::Domain(format!("non-positive radicand {radicand}")));
    }
    let denom = 4.0 * n * (n - 1.0) * a * b;
    if denom == 0.0 {
        return Err(Error::Domain(
            "balance condition needs nonzero mu12 and mu23".into(),
        ));
    }
    let lhs = (delta12 * PI / radicand.sqrt()).cos();
    let rhs = (n * a - (n - 1.0) * b).powi(2) / denom;
    Ok(lhs - rhs)
}
