// Step spectrum, dressed states and their field entropies for the three
// level configurations.

use cnlight::analytic::{dressed_linear_entropy, dressed_states, step_spectrum};
use cnlight::hilbert::AtomicConfig;

pub fn run() -> cnlight::Result<()> {
    let configs = [
        AtomicConfig::xi(1.0, std::f64::consts::SQRT_2),
        AtomicConfig::v(1.0, 0.5).with_detunings(0.3, 0.3, 0.0),
        AtomicConfig::lambda(0.8, 1.2),
    ];
    let m = 3;
    for c in &configs {
        let spec = step_spectrum(c, m)?;
        println!(
            "{:>6} M={m}: E+ = {:.6}  E0 = {:.6}  E- = {:.6}  (Omega = {:.6})",
            c.kind(),
            spec.e_plus,
            spec.e_zero,
            spec.e_minus,
            spec.omega_x
        );
        for d in dressed_states(c, m)? {
            let amps: Vec<String> = d.amps.iter().map(|a| format!("{:+.4}", a.re)).collect();
            println!(
                "        {:>5}: ({})  S_L = {:.6}",
                d.branch.name(),
                amps.join(", "),
                dressed_linear_entropy(c, d.branch, m)?
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
