// Husimi function of `(|2> + |7>)/sqrt(2)` on the default quadrature grid
// and its five-fold rotation certificate.

use cnlight::observables::{
    detect_cyclic_symmetry, husimi, FieldDensityMatrix, GridSpec, SymmetryReport,
};
use num_complex::Complex64;

pub fn run() -> cnlight::Result<(f64, SymmetryReport)> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let rho = FieldDensityMatrix::pure(&[(2, h), (7, h)]);
    let q = husimi(&rho, &GridSpec::default())?;
    let (peak, qp, pp) = q.peak();
    let norm = q.normalization();
    println!(
        "grid {}: sum Q dq dp / 2 = {norm:.6}, peak {peak:.5} at ({qp:.2}, {pp:.2})",
        q.grid
    );
    let rep = detect_cyclic_symmetry(&rho, 1e-10);
    println!(
        "order {} from differences {:?}, paired-angle residual {:.2e}",
        rep.order, rep.support_differences, rep.max_residual
    );
    Ok((norm, rep))
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
