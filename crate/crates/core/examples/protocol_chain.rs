// Two-pass protocol: a balanced ladder atom splits `|3>` into `|1>, |3>`,
// a second atom turns that into a `|0>, |3>` cat.

use cnlight::cli::default_protocol_spec;
use cnlight::protocol::{run_protocol, PassageReport};

pub fn run() -> cnlight::Result<Vec<PassageReport>> {
    let reports = run_protocol(&default_protocol_spec()?)?;
    for (k, r) in reports.iter().enumerate() {
        let p: Vec<String> = r.probabilities.iter().map(|x| format!("{x:.4}")).collect();
        println!(
            "pass {k}: exit {:.4}  P = {}  S_L = {:.4}  order {} (prepared {})  gap {:?}",
            r.exit_time,
            p.join(" "),
            r.entropy_trace.last().copied().unwrap_or(0.0),
            r.symmetry.order,
            r.prepared_symmetry.order,
            r.dominant_gap
        );
    }
    Ok(reports)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
