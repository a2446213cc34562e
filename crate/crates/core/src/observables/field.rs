use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::SystemState;
use crate::error::{Error, Result};

/// Reduced state of the cavity mode in the Fock basis `0..=nu_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldDensityMatrix {
    pub nu_max: u32,
    pub rho: DMatrix<Complex64>,
}

impl FieldDensityMatrix {
    pub fn from_matrix(rho: DMatrix<Complex64>) -> Result<Self> {
        if rho.nrows() == 0 || rho.nrows() != rho.ncols() {
            return Err(Error::InvalidArgument(format!(
                "density matrix must be square and non-empty, got {}x{}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        Ok(Self {
            nu_max: rho.nrows() as u32 - 1,
            rho,
        })
    }

    /// `|psi><psi|` for `psi = sum_nu c_nu |nu>`.
    pub fn pure(amps: &[(u32, Complex64)]) -> Self {
        let nu_max = amps.iter().map(|(nu, _)| *nu).max().unwrap_or(0);
        let mut psi = vec![Complex64::default(); nu_max as usize + 1];
        for &(nu, a) in amps {
            psi[nu as usize] += a;
        }
        Self::from_vector(&psi)
    }

    pub fn from_vector(psi: &[Complex64]) -> Self {
        let n = psi.len().max(1);
        let rho = DMatrix::from_fn(n, n, |i, j| {
            psi.get(i).copied().unwrap_or_default() * psi.get(j).copied().unwrap_or_default().conj()
        });
        Self {
            nu_max: n as u32 - 1,
            rho,
        }
    }

    pub fn fock(nu: u32) -> Self {
        Self::pure(&[(nu, Complex64::new(1.0, 0.0))])
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|k| self.rho[(k, k)].re).sum()
    }

    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.rho[(i, j)] - self.rho[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.rho.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Check Hermiticity, unit trace and positivity.
    pub fn validate(&self) -> Result<()> {
        let h = self.hermiticity_defect();
        if h > 1e-12 {
            return Err(Error::Domain(format!(
                "density matrix not Hermitian: defect {h:e}"
            )));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "density matrix trace {tr} differs from 1"
            )));
        }
        let lmin = self.min_eigenvalue();
        if lmin < -1e-10 {
            return Err(Error::Domain(format!(
                "density matrix has eigenvalue {lmin:e}"
            )));
        }
        Ok(())
    }

    /// State vector of a pure `rho`, with the phase fixed so that the
    /// amplitude of the most populated Fock state is real and positive.
    /// Returns `None` if the linear entropy exceeds `tol`.
    pub fn pure_amplitudes(&self, tol: f64) -> Option<Vec<Complex64>> {
        if linear_entropy(self) > tol {
            return None;
        }
        let n = self.dim();
        let k = (0..n).max_by(|&a, &b| self.rho[(a, a)].re.total_cmp(&self.rho[(b, b)].re))?;
        let norm = self.rho[(k, k)].re.sqrt();
        if norm == 0.0 {
            return None;
        }
        Some((0..n).map(|nu| self.rho[(nu, k)] / norm).collect())
    }
}

/// Trace the atoms out of `state`: coherences connect photon numbers whose
/// kets carry the same atomic labels `(q, r)`, summed over sectors.
pub fn reduce_field(state: &SystemState) -> FieldDensityMatrix {
    let nu_max = state.max_m().unwrap_or(0) as usize;
    let mut by_matter: BTreeMap<(u32, u32), Vec<(usize, Complex64)>> = BTreeMap::new();
    for (ket, amp) in state.components() {
        if amp != Complex64::default() {
            by_matter
                .entry(ket.matter())
                .or_default()
                .push((ket.nu as usize, amp));
        }
    }
    let n = nu_max + 1;
    let mut rho = DMatrix::zeros(n, n);
    for comps in by_matter.values() {
        for &(nu, a) in comps {
            for &(nu2, b) in comps {
                rho[(nu, nu2)] += a * b.conj();
            }
        }
    }
    FieldDensityMatrix {
        nu_max: nu_max as u32,
        rho,
    }
}

/// Diagonal of `rho`, indexed by photon number.
pub fn photon_probabilities(rho: &FieldDensityMatrix) -> Vec<f64> {
    (0..rho.dim()).map(|k| rho.rho[(k, k)].re).collect()
}

/// `1 - Tr(rho^2)`.
pub fn linear_entropy(rho: &FieldDensityMatrix) -> f64 {
    1.0 - rho.purity()
}
