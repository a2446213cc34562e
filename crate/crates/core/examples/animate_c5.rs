// Husimi frames of a ladder atom inside a cavity holding `(|2> + |7>)/sqrt(2)`,
// written as numbered CSV files with a manifest.

use std::path::PathBuf;

use cnlight::cli::{export_frames, FrameSet, DEFAULT_FRAME_STEP};
use cnlight::dynamics::{integrate_with, make_superposition, CouplingSchedule, IntegratorOptions};
use cnlight::hilbert::AtomicConfig;
use cnlight::observables::GridSpec;

pub fn run_in(dir: PathBuf, frames: usize) -> cnlight::Result<FrameSet> {
    let c = AtomicConfig::xi(1.0, std::f64::consts::SQRT_2);
    let s = make_superposition(2, 7, std::f64::consts::FRAC_PI_4, 0.0, 1, &c)?;
    let t_end = frames as f64 * DEFAULT_FRAME_STEP;
    let opts = IntegratorOptions::default().with_samples(frames + 1);
    let traj = integrate_with(&s, &c, &CouplingSchedule::constant(), 0.0, t_end, &opts)?;
    let set = export_frames(&traj, &GridSpec::square(6.0, 81), 1, &dir)?;
    println!(
        "{} frames in {} (manifest {})",
        set.files.len(),
        dir.display(),
        set.manifest.display()
    );
    Ok(set)
}

pub fn run() -> cnlight::Result<FrameSet> {
    run_in(std::env::temp_dir().join("cnlight_animate_c5"), 16)
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
