// Two ladder atoms crossing a cavity prepared in `(|1> + |5>)/sqrt(2)`:
// the four-fold symmetry of the field survives the whole transit.

use cnlight::dynamics::{integrate_with, make_superposition, CouplingSchedule, IntegratorOptions};
use cnlight::hilbert::AtomicConfig;
use cnlight::observables::{detect_cyclic_symmetry, linear_entropy, reduce_field};

pub const T_TOF: f64 = 6.0;

/// Certified order at entry, half-way and exit.
pub fn run() -> cnlight::Result<Vec<u32>> {
    let mu = std::f64::consts::FRAC_1_SQRT_2;
    let c = AtomicConfig::xi(mu, mu);
    let s = make_superposition(1, 5, std::f64::consts::FRAC_PI_4, 0.0, 2, &c)?;
    let opts = IntegratorOptions::default().with_samples(3);
    let traj = integrate_with(&s, &c, &CouplingSchedule::bump(T_TOF)?, 0.0, T_TOF, &opts)?;
    let mut orders = Vec::new();
    for (t, snap) in traj.iter() {
        let rho = reduce_field(snap);
        let rep = detect_cyclic_symmetry(&rho, 1e-10);
        let p: Vec<String> = rho_diag(&rho).iter().map(|x| format!("{x:.3}")).collect();
        println!(
            "tau = {t:.3}: order {} residual {:.1e} S_L {:.4}  P = {}",
            rep.order,
            rep.max_residual,
            linear_entropy(&rho),
            p.join(" ")
        );
        orders.push(rep.order);
    }
    Ok(orders)
}

fn rho_diag(rho: &cnlight::observables::FieldDensityMatrix) -> Vec<f64> {
    cnlight::observables::photon_probabilities(rho)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
