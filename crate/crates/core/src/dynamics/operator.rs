use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::hilbert::{AtomicConfig, BasisState, SectorBasis, Transition, FIELD_FREQUENCY};

use super::envelope::CouplingSchedule;

/// `<b1| H_int |b2>` for instantaneous pair couplings `mu` ordered
/// `(12, 13, 23)`, with
/// `H_int = -(1/sqrt(N_a)) sum_{i<j} mu_ij (a^dagger A_ij + a A_ji)` and
/// `A_jk = b_j^dagger b_k` acting on the level occupations `(r, q-r, N_a-q)`.
pub fn interaction_element(b1: &BasisState, b2: &BasisState, mu: [f64; 3]) -> f64 {
    if b1.na != b2.na {
        return 0.0;
    }
    let n_from = b2.populations();
    let n_to = b1.populations();
    let mut total = 0.0;
    for t in Transition::ALL {
        let g = mu[t.index()];
        if g == 0.0 {
            continue;
        }
        let (i, j) = t.levels();
        // a^dagger A_ij: emit a photon, move one atom j -> i.
        if b1.nu == b2.nu + 1
            && n_from[j] >= 1
            && n_to[i] == n_from[i] + 1
            && n_to[j] + 1 == n_from[j]
        {
            total += g * ((b2.nu + 1) as f64 * (n_from[i] + 1) as f64 * n_from[j] as f64).sqrt();
        }
        // a A_ji: absorb a photon, move one atom i -> j.
        if b1.nu + 1 == b2.nu
            && n_from[i] >= 1
            && n_to[j] == n_from[j] + 1
            && n_to[i] + 1 == n_from[i]
        {
            total += g * (b2.nu as f64 * n_from[i] as f64 * (n_from[j] + 1) as f64).sqrt();
        }
    }
    -total / (b1.na as f64).sqrt()
}

/// Diagonal (free) energy `nu Omega + omega21 (q - r) + omega31 (N_a - q)`,
/// with the lowest level at zero.
pub fn diagonal_energy(s: &BasisState, config: &AtomicConfig) -> f64 {
    s.nu as f64 * FIELD_FREQUENCY
        + config.omega21() * (s.q - s.r) as f64
        + config.omega31() * (s.na - s.q) as f64
}

/// A nonzero off-diagonal entry `row, col` of the sector interaction,
/// proportional to the coupling of `pair`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupling {
    pub row: usize,
    pub col: usize,
    pub pair: Transition,
    /// Matrix element per unit coupling.
    pub weight: f64,
}

/// Precomputed diagonal energies and coupling pattern of one sector.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorOperator {
    pub energies: Vec<f64>,
    pub couplings: Vec<Coupling>,
    /// Static couplings `mu_ij` of the configuration, ordered `(12, 13, 23)`.
    pub mu: [f64; 3],
}

impl SectorOperator {
    pub fn new(config: &AtomicConfig, basis: &SectorBasis) -> Self {
        let energies = basis.iter().map(|s| diagonal_energy(s, config)).collect();
        let mut couplings = Vec::new();
        for (row, b1) in basis.iter().enumerate() {
            for (col, b2) in basis.iter().enumerate() {
                for pair in Transition::ALL {
                    let mut unit = [0.0; 3];
                    unit[pair.index()] = 1.0;
                    let weight = interaction_element(b1, b2, unit);
                    if weight != 0.0 {
                        couplings.push(Coupling {
                            row,
                            col,
                            pair,
                            weight,
                        });
                    }
                }
            }
        }
        Self {
            energies,
            couplings,
            mu: config.couplings(),
        }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Effective pair couplings `mu_ij * factor_ij`.
    pub fn effective(&self, factors: [f64; 3]) -> [f64; 3] {
        [
            self.mu[0] * factors[0],
            self.mu[1] * factors[1],
            self.mu[2] * factors[2],
        ]
    }

    /// `H_int` with pair couplings multiplied by `factors`.
    pub fn interaction(&self, factors: [f64; 3]) -> DMatrix<f64> {
        let mu = self.effective(factors);
        let n = self.dim();
        let mut h = DMatrix::zeros(n, n);
        for c in &self.couplings {
            h[(c.row, c.col)] += c.weight * mu[c.pair.index()];
        }
        h
    }

    /// Schroedinger-picture Hamiltonian `H_D + H_int`.
    pub fn hamiltonian(&self, factors: [f64; 3]) -> DMatrix<Complex64> {
        let mut h = self.interaction(factors).map(|x| Complex64::new(x, 0.0));
        for (k, e) in self.energies.iter().enumerate() {
            h[(k, k)] += *e;
        }
        h
    }

    /// Interaction-picture generator `W(t)` with
    /// `W_kj = -i exp(-i (E_j - E_k) t) <k|H_int(t)|j>`.
    pub fn generator(&self, factors: [f64; 3], t: f64) -> DMatrix<Complex64> {
        let mu = self.effective(factors);
        let n = self.dim();
        let mut w = DMatrix::zeros(n, n);
        for c in &self.couplings {
            let h = c.weight * mu[c.pair.index()];
            let phase = -(self.energies[c.col] - self.energies[c.row]) * t;
            w[(c.row, c.col)] += Complex64::new(0.0, -1.0) * Complex64::from_polar(h, phase);
        }
        w
    }

    /// `out = W(t) phi` without materializing `W`.
    pub(crate) fn apply_generator(
        &self,
        mu: [f64; 3],
        t: f64,
        phi: &[Complex64],
        out: &mut [Complex64],
    ) {
        out.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for c in &self.couplings {
            let h = c.weight * mu[c.pair.index()];
            if h == 0.0 {
                continue;
            }
            let phase = -(self.energies[c.col] - self.energies[c.row]) * t;
            let (s, co) = phase.sin_cos();
            // -i * h * e^{i phase}
            let f = Complex64::new(h * s, -h * co);
            out[c.row] += f * phi[c.col];
        }
    }
}

/// Interaction-picture generator of a sector under a coupling schedule.
pub fn build_rhs(
    config: &AtomicConfig,
    basis: &SectorBasis,
    schedule: &CouplingSchedule,
    t: f64,
) -> DMatrix<Complex64> {
    SectorOperator::new(config, basis).generator(schedule.factors(t), t)
}
