// Closed-form one-atom propagator against direct integration of the
// amplitude equations, for a detuned ladder atom.

use cnlight::analytic::propagator;
use cnlight::dynamics::{integrate, CouplingSchedule, SystemState};
use cnlight::hilbert::{AtomicConfig, BasisState};

/// Largest deviation between the integrated ground-state column and the closed form.
pub fn run() -> cnlight::Result<f64> {
    // Delta12 + Delta23 = 0 keeps the ladder in closed form.
    let c = AtomicConfig::xi(0.9, 1.3).with_detunings(0.4, 0.0, -0.4);
    let nu0 = 4;
    let traj = integrate(
        &SystemState::fock_ground(&c, 1, nu0)?,
        &c,
        &CouplingSchedule::constant(),
        10.0,
        1e-11,
    )?;
    let kets = [(0, 0, nu0 - 2), (1, 0, nu0 - 1), (1, 1, nu0)];
    let mut worst: f64 = 0.0;
    for (t, snap) in traj.iter() {
        let u = propagator(&c, nu0, t)?.full();
        for (k, &(q, r, nu)) in kets.iter().enumerate() {
            let a = snap.amplitude(&BasisState { nu, na: 1, q, r });
            worst = worst.max((a - u[(k, 2)]).norm());
        }
    }
    println!(
        "samples: {}  steps: {}  max |c_ODE - U_closed| = {worst:.3e}",
        traj.len(),
        traj.stats.steps
    );
    Ok(worst)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
