// Couplings that split a Fock state evenly between `nu0` and `nu0 - 2`
// photons, at resonance and with detuning.

use cnlight::analytic::{
    balanced_coupling, balanced_detuning_residual, evolve_ground_analytic, switching_time, Sign,
};
use cnlight::hilbert::AtomicConfig;

fn bisect(f: impl Fn(f64) -> cnlight::Result<f64>, mut a: f64, mut b: f64) -> cnlight::Result<f64> {
    let mut fa = f(a)?;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 || (b - a) < 1e-15 {
            return Ok(m);
        }
        if (fa < 0.0) == (fm < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// `(P(nu0 - 2), P(nu0))` at the switching time for the resonant and the detuned balance.
pub fn run() -> cnlight::Result<[(f64, f64); 2]> {
    let nu0 = 3;
    let mu23 = std::f64::consts::SQRT_2;
    let mut out = [(0.0, 0.0); 2];
    for sign in [Sign::Minus, Sign::Plus] {
        let mu12 = balanced_coupling(nu0, mu23, sign)?;
        let c = AtomicConfig::xi(mu12, mu23);
        let a = evolve_ground_analytic(&c, nu0, switching_time(&c, nu0, 1)?)?;
        println!(
            "{sign:?}: mu12 = {mu12:.6}  P(1) = {:.6}  P(2) = {:.1e}  P(3) = {:.6}",
            a[0].norm_sqr(),
            a[1].norm_sqr(),
            a[2].norm_sqr()
        );
        if sign == Sign::Minus {
            out[0] = (a[0].norm_sqr(), a[2].norm_sqr());
        }
    }

    // Off resonance the balance fixes Delta12 for a given pair of couplings.
    let (mu12, mu23) = (0.9, 1.1);
    let f = |d: f64| balanced_detuning_residual(nu0, mu12, mu23, d);
    let delta = bisect(f, 0.0, 3.0)?;
    let c = AtomicConfig::xi(mu12, mu23).with_detunings(delta, 0.0, -delta);
    let a = evolve_ground_analytic(&c, nu0, switching_time(&c, nu0, 1)?)?;
    println!(
        "detuned: mu12 = {mu12}, mu23 = {mu23}, Delta12 = {delta:.8}: P(1) = {:.8}  P(3) = {:.8}",
        a[0].norm_sqr(),
        a[2].norm_sqr()
    );
    out[1] = (a[0].norm_sqr(), a[2].norm_sqr());
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
