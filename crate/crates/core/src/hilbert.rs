//! Atomic configurations, Gelfand-Tsetlin basis kets and fixed-excitation
//! sectors of the generalized Tavis-Cummings model.
//!
//! Units: hbar = 1 and the field frequency is 1, so every time is the
//! dimensionless `tau = Omega t` and every energy is in units of `hbar Omega`.
//! The lowest atomic level sits at zero energy.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field-mode frequency. Fixed to one; all times are measured in `1/Omega`.
pub const FIELD_FREQUENCY: f64 = 1.0;

/// Tolerance used when checking the solvable detuning conditions.
const CONDITION_TOL: f64 = 1e-12;

/// Level connectivity of a 3-level atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigKind {
    /// Ladder: 1-2 and 2-3 dipole-allowed.
    Xi,
    /// 1-2 and 1-3 dipole-allowed.
    V,
    /// 1-3 and 2-3 dipole-allowed.
    Lambda,
}

impl ConfigKind {
    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::Xi => "xi",
            ConfigKind::V => "v",
            ConfigKind::Lambda => "lambda",
        }
    }

    /// Weights `(lambda2, lambda3)` of the level-2 and level-3 populations in
    /// the excitation-number operator.
    pub fn lambdas(self) -> (u32, u32) {
        match self {
            ConfigKind::Xi => (1, 2),
            ConfigKind::V => (1, 1),
            ConfigKind::Lambda => (0, 1),
        }
    }

    /// The transition that carries no dipole coupling.
    pub fn forbidden(self) -> Transition {
        match self {
            ConfigKind::Xi => Transition::T13,
            ConfigKind::V => Transition::T23,
            ConfigKind::Lambda => Transition::T12,
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConfigKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xi" | "ladder" => Ok(ConfigKind::Xi),
            "v" => Ok(ConfigKind::V),
            "lambda" => Ok(ConfigKind::Lambda),
            other => Err(Error::InvalidArgument(format!(
                "unknown configuration {other:?} (expected xi, v or lambda)"
            ))),
        }
    }
}

/// A pair of atomic levels `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Transition {
    T12,
    T13,
    T23,
}

impl Transition {
    pub const ALL: [Transition; 3] = [Transition::T12, Transition::T13, Transition::T23];

    /// Zero-based level indices `(i, j)` with `i < j`.
    pub fn levels(self) -> (usize, usize) {
        match self {
            Transition::T12 => (0, 1),
            Transition::T13 => (0, 2),
            Transition::T23 => (1, 2),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Transition::T12 => 0,
            Transition::T13 => 1,
            Transition::T23 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Transition::T12 => "mu12",
            Transition::T13 => "mu13",
            Transition::T23 => "mu23",
        }
    }
}

/// Configuration, dipole couplings (units of `hbar Omega`) and detunings
/// (units of `Omega`) of the atoms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomicConfig {
    kind: ConfigKind,
    mu: [f64; 3],
    delta: [f64; 3],
}

impl AtomicConfig {
    /// Validating constructor. `mu` and `delta` are ordered `(12, 13, 23)`.
    pub fn new(kind: ConfigKind, mu: [f64; 3], delta: [f64; 3]) -> Result<Self> {
        let forbidden = kind.forbidden();
        let value = mu[forbidden.index()];
        if value != 0.0 {
            return Err(Error::ForbiddenCoupling {
                kind: kind.name(),
                pair: forbidden.name(),
                value,
            });
        }
        if let Some(bad) = mu.iter().chain(delta.iter()).find(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "couplings and detunings must be finite, got {bad}"
            )));
        }
        Ok(Self { kind, mu, delta })
    }

    pub fn xi(mu12: f64, mu23: f64) -> Self {
        Self {
            kind: ConfigKind::Xi,
            mu: [mu12, 0.0, mu23],
            delta: [0.0; 3],
        }
    }

    pub fn v(mu12: f64, mu13: f64) -> Self {
        Self {
            kind: ConfigKind::V,
            mu: [mu12, mu13, 0.0],
            delta: [0.0; 3],
        }
    }

    pub fn lambda(mu13: f64, mu23: f64) -> Self {
        Self {
            kind: ConfigKind::Lambda,
            mu: [0.0, mu13, mu23],
            delta: [0.0; 3],
        }
    }

    /// Resonant configuration with the given couplings ordered `(12, 13, 23)`;
    /// the forbidden one is zeroed.
    pub fn resonant(kind: ConfigKind, mu: [f64; 3]) -> Self {
        let mut mu = mu;
        mu[kind.forbidden().index()] = 0.0;
        Self {
            kind,
            mu,
            delta: [0.0; 3],
        }
    }

    /// Replace the detunings, ordered `(12, 13, 23)`.
    pub fn with_detunings(mut self, delta12: f64, delta13: f64, delta23: f64) -> Self {
        self.delta = [delta12, delta13, delta23];
        self
    }

    pub fn kind(&self) -> ConfigKind {
        self.kind
    }

    pub fn lambdas(&self) -> (u32, u32) {
        self.kind.lambdas()
    }

    pub fn mu(&self, t: Transition) -> f64 {
        self.mu[t.index()]
    }

    pub fn mu12(&self) -> f64 {
        self.mu[0]
    }
    pub fn mu13(&self) -> f64 {
        self.mu[1]
    }
    pub fn mu23(&self) -> f64 {
        self.mu[2]
    }
    pub fn delta12(&self) -> f64 {
        self.delta[0]
    }
    pub fn delta13(&self) -> f64 {
        self.delta[1]
    }
    pub fn delta23(&self) -> f64 {
        self.delta[2]
    }

    pub fn couplings(&self) -> [f64; 3] {
        self.mu
    }

    /// Same configuration with every coupling multiplied by `factors`
    /// (ordered `(12, 13, 23)`).
    pub fn scaled(&self, factors: [f64; 3]) -> Self {
        let mut out = *self;
        for (m, f) in out.mu.iter_mut().zip(factors) {
            *m *= f;
        }
        out
    }

    /// Level-2 energy relative to level 1.
    pub fn omega21(&self) -> f64 {
        match self.kind {
            ConfigKind::Xi | ConfigKind::V => FIELD_FREQUENCY + self.delta12(),
            // omega31 - omega32 with omega32 = Omega + delta23.
            ConfigKind::Lambda => self.delta13() - self.delta23(),
        }
    }

    /// Level-3 energy relative to level 1.
    pub fn omega31(&self) -> f64 {
        match self.kind {
            ConfigKind::Xi => 2.0 * FIELD_FREQUENCY + self.delta12() + self.delta23(),
            ConfigKind::V | ConfigKind::Lambda => FIELD_FREQUENCY + self.delta13(),
        }
    }

    /// The configuration detuning entering the step spectrum.
    pub fn delta_x(&self) -> f64 {
        match self.kind {
            ConfigKind::Xi | ConfigKind::V => self.delta12(),
            ConfigKind::Lambda => self.delta13(),
        }
    }

    fn condition_residual(&self) -> (&'static str, f64) {
        match self.kind {
            ConfigKind::Xi => ("delta12 + delta23 = 0", self.delta12() + self.delta23()),
            ConfigKind::V => ("delta12 - delta13 = 0", self.delta12() - self.delta13()),
            ConfigKind::Lambda => ("delta13 - delta23 = 0", self.delta13() - self.delta23()),
        }
    }

    /// Whether the detunings satisfy the condition under which the one-atom
    /// problem is solvable in closed form.
    pub fn is_analytic(&self) -> bool {
        self.condition_residual().1.abs() <= CONDITION_TOL
    }

    pub fn require_analytic(&self) -> Result<()> {
        let (condition, residual) = self.condition_residual();
        if residual.abs() <= CONDITION_TOL {
            Ok(())
        } else {
            Err(Error::DetuningCondition {
                kind: self.kind.name(),
                condition,
                residual,
            })
        }
    }
}

/// `|nu; N_a q r>`: Fock state times a totally symmetric U(3) state with
/// level populations `(r, q - r, N_a - q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisState {
    pub nu: u32,
    pub na: u32,
    pub q: u32,
    pub r: u32,
}

impl BasisState {
    pub fn new(nu: u32, na: u32, q: u32, r: u32) -> Result<Self> {
        if r > q || q > na {
            return Err(Error::InvalidArgument(format!(
                "Gelfand labels need 0 <= r <= q <= na, got na={na} q={q} r={r}"
            )));
        }
        Ok(Self { nu, na, q, r })
    }

    /// All atoms in the lowest level.
    pub fn ground(nu: u32, na: u32) -> Self {
        Self {
            nu,
            na,
            q: na,
            r: na,
        }
    }

    /// Populations `(n1, n2, n3)` of the three levels.
    pub fn populations(&self) -> [u32; 3] {
        [self.r, self.q - self.r, self.na - self.q]
    }

    /// The matter labels, used to match kets when tracing out the atoms.
    pub fn matter(&self) -> (u32, u32) {
        (self.q, self.r)
    }
}

/// Eigenvalue of the excitation-number operator on a basis ket.
pub fn excitation_number(config: &AtomicConfig, s: &BasisState) -> u32 {
    let (l2, l3) = config.lambdas();
    s.nu + l2 * (s.q - s.r) + l3 * (s.na - s.q)
}

/// The kets of one fixed-excitation sector, ordered lexicographically in
/// `(q, r)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorBasis {
    pub config: AtomicConfig,
    pub na: u32,
    pub m: u32,
    pub states: Vec<BasisState>,
}

impl SectorBasis {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// True when `M >= lambda3 N_a`, i.e. every Gelfand state fits.
    pub fn is_full(&self) -> bool {
        self.m >= self.config.lambdas().1 * self.na
    }

    pub fn index_of(&self, s: &BasisState) -> Option<usize> {
        self.states.iter().position(|b| b == s)
    }

    pub fn ground_index(&self) -> Option<usize> {
        self.index_of(&BasisState::ground(self.m, self.na))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BasisState> {
        self.states.iter()
    }
}

/// Full dimension `(N_a + 1)(N_a + 2)/2` of a sector with `M >= lambda3 N_a`.
pub fn full_sector_dim(na: u32) -> usize {
    let na = na as usize;
    (na + 1) * (na + 2) / 2
}

pub fn build_sector_basis(config: &AtomicConfig, na: u32, m: u32) -> Result<SectorBasis> {
    if na == 0 {
        return Err(Error::InvalidArgument("need at least one atom".into()));
    }
    let (l2, l3) = config.lambdas();
    let mut states = Vec::with_capacity(full_sector_dim(na));
    for q in 0..=na {
        for r in 0..=q {
            let nu = m as i64 - (l2 * (q - r)) as i64 - (l3 * (na - q)) as i64;
            if nu >= 0 {
                states.push(BasisState {
                    nu: nu as u32,
                    na,
                    q,
                    r,
                });
            }
        }
    }
    Ok(SectorBasis {
        config: *config,
        na,
        m,
        states,
    })
}
