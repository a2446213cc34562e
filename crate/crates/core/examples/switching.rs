// Ladder atom through a three-photon cavity: the one-photon-down component
// vanishes at the switching time, and a smooth transit delays it by half a
// ramp.

use cnlight::analytic::{evolve_ground_analytic, switching_time};
use cnlight::dynamics::CouplingSchedule;
use cnlight::hilbert::AtomicConfig;
use cnlight::protocol::first_passage;

pub struct Switching {
    pub t_s: f64,
    pub p_mid_closed: f64,
    pub bump_exit: f64,
    pub p_mid_bump: f64,
}

pub fn run() -> cnlight::Result<Switching> {
    let c = AtomicConfig::xi(1.0, std::f64::consts::SQRT_2);
    let nu0 = 3;
    let t_s = switching_time(&c, nu0, 1)?;
    let p_mid_closed = evolve_ground_analytic(&c, nu0, t_s)?[1].norm_sqr();
    println!("t_s = pi/sqrt(7) = {t_s:.6}, P(2, t_s) = {p_mid_closed:.3e}");

    let r = first_passage(nu0, &c, &CouplingSchedule::bump(12.0)?)?;
    let p_mid_bump = r.min_probability.unwrap_or(f64::NAN);
    println!(
        "bump envelope: exit at {:.6} (t_s + {:.4}), P(2) = {p_mid_bump:.3e}",
        r.exit_time,
        r.exit_time - t_s
    );
    let p: Vec<String> = r.probabilities.iter().map(|x| format!("{x:.4}")).collect();
    println!("exit photon probabilities: {}", p.join(" "));
    Ok(Switching {
        t_s,
        p_mid_closed,
        bump_exit: r.exit_time,
        p_mid_bump,
    })
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
