// Equal-weight ladder cats: scan the time of flight of a second atom for
// each `(M1, M2)` pair and print the exit photon statistics.

use cnlight::protocol::{reference_cat_table, CatRow, DEFAULT_LEAKAGE_TARGET};

pub fn run() -> cnlight::Result<Vec<CatRow>> {
    let rows = reference_cat_table(DEFAULT_LEAKAGE_TARGET)?;
    println!("M1 M2 dnu  t_tof    leakage  order prepared  P(nu)");
    for r in &rows {
        let p: Vec<String> = r.probabilities.iter().map(|x| format!("{x:.4}")).collect();
        println!(
            "{:>2} {:>2} {:>3}  {:.4}  {:.5}  {:>5} {:>8}  {}",
            r.m1,
            r.m2,
            r.delta_nu,
            r.t_tof,
            r.leakage,
            r.order,
            r.prepared_order,
            p.join(" ")
        );
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
