use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{build_sector_basis, AtomicConfig, BasisState, SectorBasis};

use super::operator::diagonal_energy;

/// Amplitudes of one excitation sector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    pub basis: SectorBasis,
    pub amps: DVector<Complex64>,
}

impl Sector {
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Atom-field state as a superposition over excitation sectors.
/// Amplitudes are Schroedinger-picture coefficients on the basis kets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemState {
    pub na: u32,
    pub sectors: BTreeMap<u32, Sector>,
}

impl SystemState {
    pub fn empty(na: u32) -> Self {
        Self {
            na,
            sectors: BTreeMap::new(),
        }
    }

    /// `sum_nu c_nu |nu> (x) |N_a N_a N_a>` for the given photon amplitudes.
    pub fn ground_product(
        config: &AtomicConfig,
        na: u32,
        field: &[(u32, Complex64)],
    ) -> Result<Self> {
        let mut state = Self::empty(na);
        for &(nu, amp) in field {
            // All atoms in level 1: the sector label equals the photon number.
            let basis = build_sector_basis(config, na, nu)?;
            let idx = basis
                .ground_index()
                .expect("ground ket is always in its sector");
            let sector = state.sectors.entry(nu).or_insert_with(|| Sector {
                amps: DVector::zeros(basis.dim()),
                basis,
            });
            sector.amps[idx] += amp;
        }
        Ok(state)
    }

    pub fn fock_ground(config: &AtomicConfig, na: u32, nu: u32) -> Result<Self> {
        Self::ground_product(config, na, &[(nu, Complex64::new(1.0, 0.0))])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.sectors.values().map(Sector::norm_sqr).sum()
    }

    /// Probability carried by each excitation sector.
    pub fn sector_weights(&self) -> BTreeMap<u32, f64> {
        self.sectors
            .iter()
            .map(|(m, s)| (*m, s.norm_sqr()))
            .collect()
    }

    pub fn max_m(&self) -> Option<u32> {
        self.sectors.keys().next_back().copied()
    }

    /// Every `(ket, amplitude)` pair.
    pub fn components(&self) -> impl Iterator<Item = (BasisState, Complex64)> + '_ {
        self.sectors
            .values()
            .flat_map(|s| s.basis.states.iter().copied().zip(s.amps.iter().copied()))
    }

    pub fn amplitude(&self, ket: &BasisState) -> Complex64 {
        self.components()
            .find(|(k, _)| k == ket)
            .map(|(_, a)| a)
            .unwrap_or_default()
    }

    /// Coefficients with the free evolution `exp(-i E_k t)` removed.
    pub fn to_interaction_picture(&self, config: &AtomicConfig, t: f64) -> Self {
        self.rephase(config, t)
    }

    /// Inverse of [`to_interaction_picture`](Self::to_interaction_picture).
    pub fn from_interaction_picture(&self, config: &AtomicConfig, t: f64) -> Self {
        self.rephase(config, -t)
    }

    fn rephase(&self, config: &AtomicConfig, t: f64) -> Self {
        let mut out = self.clone();
        for s in out.sectors.values_mut() {
            for (k, ket) in s.basis.states.iter().enumerate() {
                s.amps[k] *= Complex64::from_polar(1.0, diagonal_energy(ket, config) * t);
            }
        }
        out
    }
}

/// `(cos theta |nu1> + e^{i xi} sin theta |nu2>) (x) |N_a N_a N_a>`.
/// Sectors whose weight is exactly zero are omitted.
pub fn make_superposition(
    nu1: u32,
    nu2: u32,
    theta: f64,
    xi: f64,
    na: u32,
    config: &AtomicConfig,
) -> Result<SystemState> {
    if nu1 == nu2 {
        return Err(Error::InvalidArgument(format!(
            "superposition needs two distinct photon numbers, got {nu1} twice"
        )));
    }
    let mut field = Vec::with_capacity(2);
    let (c, s) = (theta.cos(), theta.sin());
    if c != 0.0 {
        field.push((nu1, Complex64::new(c, 0.0)));
    }
    if s != 0.0 {
        field.push((nu2, Complex64::from_polar(s, xi)));
    }
    SystemState::ground_product(config, na, &field)
}
