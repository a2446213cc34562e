use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::field::FieldDensityMatrix;

/// Rectangular quadrature grid; `alpha = (q + i p) / sqrt(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub n_q: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub n_p: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::square(6.0, 241)
    }
}

impl GridSpec {
    pub fn square(half_width: f64, n: usize) -> Self {
        Self {
            q_min: -half_width,
            q_max: half_width,
            n_q: n,
            p_min: -half_width,
            p_max: half_width,
            n_p: n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_q < 2 || self.n_p < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 2 points per axis, got {}x{}",
                self.n_q, self.n_p
            )));
        }
        let ok = |a: f64, b: f64| a.is_finite() && b.is_finite() && a < b;
        if !ok(self.q_min, self.q_max) || !ok(self.p_min, self.p_max) {
            return Err(Error::InvalidArgument(format!(
                "grid bounds are not increasing: {self}"
            )));
        }
        Ok(())
    }

    pub fn dq(&self) -> f64 {
        (self.q_max - self.q_min) / (self.n_q - 1) as f64
    }

    pub fn dp(&self) -> f64 {
        (self.p_max - self.p_min) / (self.n_p - 1) as f64
    }

    pub fn q(&self, i: usize) -> f64 {
        if i + 1 == self.n_q {
            self.q_max
        } else {
            self.q_min + self.dq() * i as f64
        }
    }

    pub fn p(&self, j: usize) -> f64 {
        if j + 1 == self.n_p {
            self.p_max
        } else {
            self.p_min + self.dp() * j as f64
        }
    }

    pub fn alpha(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.q(i), self.p(j)) / 2f64.sqrt()
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{},{}:{}:{}",
            self.q_min, self.q_max, self.n_q, self.p_min, self.p_max, self.n_p
        )
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// `qmin:qmax:nq,pmin:pmax:np`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidArgument(format!(
                "grid '{s}' is not of the form qmin:qmax:nq,pmin:pmax:np"
            ))
        };
        let axis = |part: &str| -> Result<(f64, f64, usize)> {
            let f: Vec<&str> = part.split(':').map(str::trim).collect();
            if f.len() != 3 {
                return Err(bad());
            }
            Ok((
                f[0].parse().map_err(|_| bad())?,
                f[1].parse().map_err(|_| bad())?,
                f[2].parse().map_err(|_| bad())?,
            ))
        };
        let (qa, pa) = s.split_once(',').ok_or_else(bad)?;
        let (q_min, q_max, n_q) = axis(qa)?;
        let (p_min, p_max, n_p) = axis(pa)?;
        let g = Self {
            q_min,
            q_max,
            n_q,
            p_min,
            p_max,
            n_p,
        };
        g.validate()?;
        Ok(g)
    }
}

/// Husimi function sampled on a [`GridSpec`]; `values[(i, j)]` sits at `(q_i, p_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HusimiGrid {
    pub grid: GridSpec,
    pub values: DMatrix<f64>,
}

impl HusimiGrid {
    /// Riemann sum `sum Q dq dp / 2`.
    pub fn normalization(&self) -> f64 {
        self.values.sum() * self.grid.dq() * self.grid.dp() / 2.0
    }

    pub fn min(&self) -> f64 {
        self.values.min()
    }

    /// Largest value and its `(q, p)` location.
    pub fn peak(&self) -> (f64, f64, f64) {
        let (mut best, mut at) = (f64::NEG_INFINITY, (0, 0));
        for j in 0..self.grid.n_p {
            for i in 0..self.grid.n_q {
                if self.values[(i, j)] > best {
                    best = self.values[(i, j)];
                    at = (i, j);
                }
            }
        }
        (best, self.grid.q(at.0), self.grid.p(at.1))
    }
}

/// `ln k!` for `k = 0..n`.
fn log_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut acc = 0.0;
    for k in 0..n {
        if k > 1 {
            acc += (k as f64).ln();
        }
        out.push(acc);
    }
    out
}

/// `<nu|alpha>` for `nu = 0..n`.
fn coherent_amplitudes(n: usize, alpha: Complex64, lnfact: &[f64]) -> Vec<Complex64> {
    let r = alpha.norm();
    let phi = alpha.arg();
    (0..n)
        .map(|nu| {
            if r == 0.0 {
                return if nu == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::default()
                };
            }
            let ln_mag = nu as f64 * r.ln() - 0.5 * lnfact[nu] - 0.5 * r * r;
            Complex64::from_polar(ln_mag.exp(), nu as f64 * phi)
        })
        .collect()
}

fn q_value(rho: &FieldDensityMatrix, c: &[Complex64]) -> f64 {
    let n = rho.dim();
    let mut acc = Complex64::default();
    for (i, ci) in c.iter().enumerate().take(n) {
        if *ci == Complex64::default() {
            continue;
        }
        let row: Complex64 = c
            .iter()
            .take(n)
            .enumerate()
            .map(|(j, cj)| rho.rho[(i, j)] * cj)
            .sum();
        acc += ci.conj() * row;
    }
    (acc.re / PI).max(0.0)
}

/// `Q(alpha) = <alpha|rho|alpha> / pi`.
pub fn husimi_at(rho: &FieldDensityMatrix, alpha: Complex64) -> f64 {
    let lnf = log_factorials(rho.dim());
    q_value(rho, &coherent_amplitudes(rho.dim(), alpha, &lnf))
}

/// `Q` at `alpha = varrho e^{i phi}`.
pub fn husimi_polar(rho: &FieldDensityMatrix, varrho: f64, phi: f64) -> f64 {
    husimi_at(rho, Complex64::from_polar(varrho, phi))
}

/// Evaluator that reuses the log-factorial table across many points.
pub struct HusimiEvaluator<'a> {
    rho: &'a FieldDensityMatrix,
    lnf: Vec<f64>,
}

impl<'a> HusimiEvaluator<'a> {
    pub fn new(rho: &'a FieldDensityMatrix) -> Self {
        Self {
            rho,
            lnf: log_factorials(rho.dim()),
        }
    }

    pub fn at(&self, alpha: Complex64) -> f64 {
        q_value(
            self.rho,
            &coherent_amplitudes(self.rho.dim(), alpha, &self.lnf),
        )
    }

    pub fn polar(&self, varrho: f64, phi: f64) -> f64 {
        self.at(Complex64::from_polar(varrho, phi))
    }
}

pub fn husimi(rho: &FieldDensityMatrix, grid: &GridSpec) -> Result<HusimiGrid> {
    grid.validate()?;
    let eval = HusimiEvaluator::new(rho);
    let cols: Vec<Vec<f64>> = (0..grid.n_p)
        .into_par_iter()
        .map(|j| (0..grid.n_q).map(|i| eval.at(grid.alpha(i, j))).collect())
        .collect();
    let values = DMatrix::from_fn(grid.n_q, grid.n_p, |i, j| cols[j][i]);
    Ok(HusimiGrid {
        grid: *grid,
        values,
    })
}

/// Closed-form Husimi function of `cos(theta)|nu1> + e^{i xi} sin(theta)|nu2>`
/// at `alpha = varrho e^{i phi}`. The interference term depends on
/// `(nu2 - nu1) phi - xi`.
pub fn husimi_two_fock(nu1: u32, nu2: u32, theta: f64, xi: f64, varrho: f64, phi: f64) -> f64 {
    let lnf = log_factorials(nu1.max(nu2) as usize + 1);
    let weight = |nu: u32| -> f64 {
        if varrho == 0.0 {
            return if nu == 0 { 1.0 } else { 0.0 };
        }
        (2.0 * nu as f64 * varrho.ln() - lnf[nu as usize]).exp()
    };
    let cross = if varrho == 0.0 {
        if nu1 + nu2 == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        ((nu1 + nu2) as f64 * varrho.ln() - 0.5 * (lnf[nu1 as usize] + lnf[nu2 as usize])).exp()
    };
    let (c, s) = (theta.cos(), theta.sin());
    let dphi = (nu2 as f64 - nu1 as f64) * phi - xi;
    (-varrho * varrho).exp() / PI
        * (c * c * weight(nu1) + s * s * weight(nu2) + (2.0 * theta).sin() * cross * dphi.cos())
}
