use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_PI, PI};

use serde::{Deserialize, Serialize};

use super::field::FieldDensityMatrix;
use super::husimi::HusimiEvaluator;

pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    /// Cyclic order `n`; 0 means the Husimi function is rotation invariant.
    pub order: u32,
    /// Photon-number differences `|nu - nu'|` with coherence above tolerance.
    pub support_differences: Vec<u32>,
    /// Worst `|Q(varrho, phi + 2 pi / n) - Q(varrho, phi)|` over the sample set.
    pub max_residual: f64,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Differences `|nu - nu'| > 0` with `|rho[nu, nu']| > tol`.
pub fn coherence_support(rho: &FieldDensityMatrix, tol: f64) -> BTreeSet<u32> {
    let n = rho.dim();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if rho.rho[(i, j)].norm() > tol {
                out.insert((j - i) as u32);
            }
        }
    }
    out
}

/// Fixed polar sample set: radii in `(0, 6]`, angles over a full turn.
pub fn residual_samples() -> Vec<(f64, f64)> {
    let (nr, nphi) = (30, 64);
    let mut out = Vec::with_capacity(nr * nphi);
    for i in 1..=nr {
        let r = 6.0 * i as f64 / nr as f64;
        for k in 0..nphi {
            // Irrational offset keeps samples off the symmetry axes.
            out.push((r, 2.0 * PI * (k as f64 + FRAC_1_PI) / nphi as f64));
        }
    }
    out
}

/// Worst change of `Q` under `phi -> phi + angle` over the given `(varrho, phi)` points.
pub fn rotation_residual(rho: &FieldDensityMatrix, angle: f64, points: &[(f64, f64)]) -> f64 {
    let eval = HusimiEvaluator::new(rho);
    points
        .iter()
        .map(|&(r, phi)| (eval.polar(r, phi + angle) - eval.polar(r, phi)).abs())
        .fold(0.0, f64::max)
}

/// Rotation angle certified by a cyclic order; order 0 is tested with a generic 1 rad turn.
pub fn symmetry_angle(order: u32) -> f64 {
    if order == 0 {
        1.0
    } else {
        2.0 * PI / order as f64
    }
}

pub fn detect_cyclic_symmetry(rho: &FieldDensityMatrix, tol: f64) -> SymmetryReport {
    detect_cyclic_symmetry_with(rho, tol, &residual_samples())
}

pub fn detect_cyclic_symmetry_with(
    rho: &FieldDensityMatrix,
    tol: f64,
    points: &[(f64, f64)],
) -> SymmetryReport {
    let support = coherence_support(rho, tol);
    let order = support.iter().fold(0, |g, &d| gcd(g, d));
    SymmetryReport {
        order,
        max_residual: rotation_residual(rho, symmetry_angle(order), points),
        support_differences: support.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    #[test]
    fn diagonal_is_continuous() {
        let mut m = DMatrix::zeros(4, 4);
        m[(1, 1)] = Complex64::new(0.3, 0.0);
        m[(3, 3)] = Complex64::new(0.7, 0.0);
        let rep = detect_cyclic_symmetry(
            &FieldDensityMatrix::from_matrix(m).unwrap(),
            DEFAULT_SYMMETRY_TOL,
        );
        assert_eq!(rep.order, 0);
        assert!(rep.support_differences.is_empty());
        assert!(rep.max_residual < 1e-15);
    }

    #[test]
    fn gcd_of_support() {
        let h = Complex64::new(0.5f64.sqrt(), 0.0);
        let rho = FieldDensityMatrix::pure(&[(2, h), (7, h)]);
        let rep = detect_cyclic_symmetry(&rho, DEFAULT_SYMMETRY_TOL);
        assert_eq!((rep.order, rep.support_differences.clone()), (5, vec![5]));
        assert!(rep.max_residual < 1e-12);

        let c = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
        let rho = FieldDensityMatrix::pure(&[(0, c), (4, c), (6, c)]);
        let rep = detect_cyclic_symmetry(&rho, DEFAULT_SYMMETRY_TOL);
        assert_eq!(rep.support_differences, vec![2, 4, 6]);
        assert_eq!(rep.order, 2);
        assert!(rep.max_residual < 1e-12);
        // A 4-fold turn is not a symmetry of this state.
        assert!(rotation_residual(&rho, PI / 2.0, &residual_samples()) > 1e-3);
    }

    #[test]
    fn tolerance_thresholds_small_coherence() {
        let mut m = DMatrix::zeros(3, 3);
        m[(0, 0)] = Complex64::new(0.5, 0.0);
        m[(2, 2)] = Complex64::new(0.5, 0.0);
        m[(0, 1)] = Complex64::new(1e-12, 0.0);
        m[(1, 0)] = Complex64::new(1e-12, 0.0);
        let rho = FieldDensityMatrix::from_matrix(m).unwrap();
        assert_eq!(detect_cyclic_symmetry(&rho, 1e-10).order, 0);
        assert_eq!(detect_cyclic_symmetry(&rho, 1e-13).order, 1);
    }
}
