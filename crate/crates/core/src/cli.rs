//! Command-line front end: subcommands, CSV/JSON export, run manifests.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{
    dressed_linear_entropy, dressed_states, propagator, step_spectrum, switching_time, Branch,
};
use crate::dynamics::{
    integrate_with, CouplingSchedule, IntegratorOptions, SystemState, Trajectory,
};
use crate::error::{Error, Result};
use crate::hilbert::{build_sector_basis, AtomicConfig, ConfigKind, Transition};
use crate::observables::{
    detect_cyclic_symmetry, husimi, linear_entropy, photon_probabilities, reduce_field,
    FieldDensityMatrix, GridSpec, HusimiGrid,
};
use crate::protocol::{
    reference_cat_table, run_protocol, ExitPolicy, PassSpec, ProtocolSpec, DEFAULT_LEAKAGE_TARGET,
};

pub const THREADS_ENV: &str = "CNLIGHT_THREADS";
/// Frame spacing of animation exports.
pub const DEFAULT_FRAME_STEP: f64 = PI / 32.0;

#[derive(Parser, Debug)]
#[command(
    name = "cnlight",
    version,
    about = "Cyclic-symmetry light states from three-level atoms in a cavity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the basis kets of one excitation sector.
    Basis(BasisArgs),
    /// Step spectrum E+, E0, E- of a one-atom sector.
    Spectrum(SectorArgs),
    /// Dressed states and their field linear entropies.
    Dressed(SectorArgs),
    /// Closed-form interaction-picture propagator of a one-atom sector.
    Propagate(PropagateArgs),
    /// Integrate the amplitude equations and export photon statistics.
    Evolve(EvolveArgs),
    /// Husimi function of a Fock superposition on a quadrature grid.
    Husimi(HusimiArgs),
    /// Cyclic-symmetry certificate of a Fock superposition.
    Symmetry(SymmetryArgs),
    /// Run a multi-pass protocol from a JSON spec (or the default two-pass cat).
    Protocol(ProtocolArgs),
    /// Reproduce the equal-weight ladder cat table.
    Table1(Table1Args),
    /// Export Husimi frames of an evolving superposition.
    Animate(AnimateArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
struct ConfigArgs {
    /// Level configuration: xi, v or lambda.
    #[arg(long, default_value = "xi")]
    config: ConfigKind,
    /// Dipole couplings; unset allowed couplings default to 1.
    #[arg(long, allow_negative_numbers = true)]
    mu12: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mu13: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mu23: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta12: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta13: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta23: f64,
}

impl ConfigArgs {
    fn build(&self) -> Result<AtomicConfig> {
        let forbidden = self.config.forbidden();
        let pick =
            |t: Transition, v: Option<f64>| v.unwrap_or(if t == forbidden { 0.0 } else { 1.0 });
        AtomicConfig::new(
            self.config,
            [
                pick(Transition::T12, self.mu12),
                pick(Transition::T13, self.mu13),
                pick(Transition::T23, self.mu23),
            ],
            [self.delta12, self.delta13, self.delta23],
        )
    }
}

#[derive(Args, Debug, Clone, Serialize)]
struct FieldArgs {
    /// First photon number.
    #[arg(long, default_value_t = 0)]
    nu1: u32,
    /// Second photon number; omit for a single Fock state.
    #[arg(long)]
    nu2: Option<u32>,
    #[arg(long, default_value_t = FRAC_PI_4, allow_negative_numbers = true)]
    theta: f64,
    /// Relative phase of the second component (radians).
    #[arg(
        long = "xi-phase",
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    xi_phase: f64,
}

impl FieldArgs {
    fn components(&self) -> Result<Vec<(u32, Complex64)>> {
        match self.nu2 {
            None => Ok(vec![(self.nu1, Complex64::new(1.0, 0.0))]),
            Some(nu2) if nu2 == self.nu1 => Err(Error::InvalidArgument(
                "--nu2 must differ from --nu1".into(),
            )),
            Some(nu2) => Ok(vec![
                (self.nu1, Complex64::new(self.theta.cos(), 0.0)),
                (nu2, Complex64::from_polar(self.theta.sin(), self.xi_phase)),
            ]),
        }
    }

    fn field(&self) -> Result<FieldDensityMatrix> {
        Ok(FieldDensityMatrix::pure(&self.components()?))
    }

    fn state(&self, config: &AtomicConfig, na: u32) -> Result<SystemState> {
        let comps: Vec<_> = self
            .components()?
            .into_iter()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .collect();
        SystemState::ground_product(config, na, &comps)
    }
}

#[derive(Args, Debug, Clone, Serialize)]
struct OutArgs {
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
struct BasisArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long, default_value_t = 1)]
    na: u32,
    #[arg(long)]
    m: u32,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
struct SectorArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long)]
    m: u32,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
struct PropagateArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long)]
    m: u32,
    #[arg(long, allow_negative_numbers = true)]
    tau: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
struct EvolveArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1)]
    na: u32,
    #[arg(long = "t-end")]
    t_end: f64,
    /// Time of flight of a bump envelope; constant coupling when omitted.
    #[arg(long)]
    tof: Option<f64>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 1e-11)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
struct HusimiArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Grid as qmin:qmax:nq,pmin:pmax:np.
    #[arg(long, default_value = "-6:6:241,-6:6:241", allow_hyphen_values = true)]
    grid: GridSpec,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
struct SymmetryArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
struct ProtocolArgs {
    /// ProtocolSpec JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Table1Args {
    #[arg(long, default_value_t = DEFAULT_LEAKAGE_TARGET)]
    target: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
struct AnimateArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1)]
    na: u32,
    #[arg(long = "t-end", default_value_t = 2.0 * PI)]
    t_end: f64,
    /// Time between frames.
    #[arg(long, default_value_t = DEFAULT_FRAME_STEP)]
    dtau: f64,
    #[arg(long)]
    tof: Option<f64>,
    #[arg(long, default_value = "-6:6:241,-6:6:241", allow_hyphen_values = true)]
    grid: GridSpec,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

/// Everything needed to replay a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub version: String,
    pub grids: Vec<GridSpec>,
    pub outputs: Vec<String>,
    pub duration_seconds: f64,
}

impl RunManifest {
    pub fn new(command: &str, parameters: serde_json::Value) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            version: env!("CARGO_PKG_VERSION").to_string(),
            grids: Vec::new(),
            outputs: Vec::new(),
            duration_seconds: 0.0,
        }
    }
}

/// Write `bytes` to a sibling temporary file, then rename it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("not a file path: {}", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", name.to_string_lossy()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// `q,p,Q` rows, `q` varying fastest.
pub fn husimi_csv(grid: &HusimiGrid) -> String {
    let mut s = String::from("q,p,Q\n");
    for j in 0..grid.grid.n_p {
        for i in 0..grid.grid.n_q {
            let _ = writeln!(
                s,
                "{},{},{}",
                num(grid.grid.q(i)),
                num(grid.grid.p(j)),
                num(grid.values[(i, j)])
            );
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameSet {
    pub files: Vec<PathBuf>,
    pub times: Vec<f64>,
    pub manifest: PathBuf,
}

/// Write the Husimi function of every `stride`-th snapshot as
/// `husimi_%05d.csv` plus a `manifest.json` into `dir`.
pub fn export_frames(
    traj: &Trajectory,
    grid: &GridSpec,
    stride: usize,
    dir: &Path,
) -> Result<FrameSet> {
    export_frames_with(
        traj,
        grid,
        stride,
        dir,
        RunManifest::new("export_frames", serde_json::Value::Null),
    )
}

fn export_frames_with(
    traj: &Trajectory,
    grid: &GridSpec,
    stride: usize,
    dir: &Path,
    mut manifest: RunManifest,
) -> Result<FrameSet> {
    if traj.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot export frames of an empty trajectory".into(),
        ));
    }
    if stride == 0 {
        return Err(Error::InvalidArgument(
            "frame stride must be at least 1".into(),
        ));
    }
    grid.validate()?;
    if !dir.is_dir() {
        fs::create_dir_all(dir)?;
    }
    let mut files = Vec::new();
    let mut times = Vec::new();
    for (frame, k) in (0..traj.len()).step_by(stride).enumerate() {
        let q = husimi(&reduce_field(&traj.snapshots[k]), grid)?;
        let path = dir.join(format!("husimi_{frame:05}.csv"));
        write_atomic(&path, husimi_csv(&q).as_bytes())?;
        files.push(path);
        times.push(traj.times[k]);
    }
    manifest.grids.push(*grid);
    manifest.outputs = files
        .iter()
        .map(|p| {
            p.file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned()
        })
        .collect();
    if manifest.parameters.is_null() {
        manifest.parameters = serde_json::json!({ "stride": stride });
    }
    if let Some(obj) = manifest.parameters.as_object_mut() {
        obj.insert("frame_times".into(), serde_json::json!(times));
    }
    let manifest_path = dir.join("manifest.json");
    write_atomic(
        &manifest_path,
        serde_json::to_string_pretty(&manifest)?.as_bytes(),
    )?;
    Ok(FrameSet {
        files,
        times,
        manifest: manifest_path,
    })
}

fn emit(out: &OutArgs, text: &str, mut manifest: RunManifest, started: Instant) -> Result<()> {
    match &out.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            write_atomic(path, text.as_bytes())?;
            manifest.outputs.push(
                path.file_name()
                    .unwrap_or_default()
                    .to_string_lossy()
                    .into_owned(),
            );
            manifest.duration_seconds = started.elapsed().as_secs_f64();
            let mpath = path.with_file_name(format!(
                "{}.manifest.json",
                path.file_name().unwrap_or_default().to_string_lossy()
            ));
            write_atomic(&mpath, serde_json::to_string_pretty(&manifest)?.as_bytes())
        }
    }
}

fn params<T: Serialize>(args: &T) -> serde_json::Value {
    serde_json::to_value(args).unwrap_or(serde_json::Value::Null)
}

fn cmd_basis(a: &BasisArgs) -> Result<String> {
    let config = a.config.build()?;
    let basis = build_sector_basis(&config, a.na, a.m)?;
    let mut s = String::from("index,nu,q,r,n1,n2,n3\n");
    for (k, ket) in basis.iter().enumerate() {
        let [n1, n2, n3] = ket.populations();
        let _ = writeln!(s, "{k},{},{},{},{n1},{n2},{n3}", ket.nu, ket.q, ket.r);
    }
    Ok(s)
}

fn cmd_spectrum(a: &SectorArgs) -> Result<String> {
    let sp = step_spectrum(&a.config.build()?, a.m)?;
    let mut s = String::from("branch,energy\n");
    for b in Branch::ALL {
        let _ = writeln!(s, "{},{}", b.name(), num(sp.energy(b)));
    }
    Ok(s)
}

fn cmd_dressed(a: &SectorArgs) -> Result<String> {
    let config = a.config.build()?;
    let states = dressed_states(&config, a.m)?;
    let mut s = String::from("branch,energy,a1_re,a1_im,a2_re,a2_im,a3_re,a3_im,linear_entropy\n");
    for d in states {
        let _ = write!(s, "{},{}", d.branch.name(), num(d.energy));
        for z in d.amps {
            let _ = write!(s, ",{},{}", num(z.re), num(z.im));
        }
        let _ = writeln!(
            s,
            ",{}",
            num(dressed_linear_entropy(&config, d.branch, a.m)?)
        );
    }
    Ok(s)
}

fn cmd_propagate(a: &PropagateArgs) -> Result<String> {
    let u = propagator(&a.config.build()?, a.m, a.tau)?.full();
    let mut s = String::from("row,col,re,im\n");
    for i in 0..3 {
        for j in 0..3 {
            let _ = writeln!(
                s,
                "{},{},{},{}",
                i + 1,
                j + 1,
                num(u[(i, j)].re),
                num(u[(i, j)].im)
            );
        }
    }
    Ok(s)
}

fn schedule_for(tof: Option<f64>) -> Result<CouplingSchedule> {
    match tof {
        Some(t) => CouplingSchedule::bump(t),
        None => Ok(CouplingSchedule::constant()),
    }
}

fn cmd_evolve(a: &EvolveArgs) -> Result<String> {
    let config = a.config.build()?;
    let initial = a.field.state(&config, a.na)?;
    let opts = IntegratorOptions::default()
        .with_tol(a.tol)
        .with_samples(a.samples);
    let traj = integrate_with(
        &initial,
        &config,
        &schedule_for(a.tof)?,
        0.0,
        a.t_end,
        &opts,
    )?;
    let nu_max = initial.max_m().unwrap_or(0) as usize;
    let mut s = String::from("t,norm,linear_entropy");
    for nu in 0..=nu_max {
        let _ = write!(s, ",p{nu}");
    }
    s.push('\n');
    for (t, snap) in traj.iter() {
        let rho = reduce_field(snap);
        let _ = write!(
            s,
            "{},{},{}",
            num(t),
            num(snap.norm_sqr()),
            num(linear_entropy(&rho))
        );
        for p in photon_probabilities(&rho) {
            let _ = write!(s, ",{}", num(p));
        }
        s.push('\n');
    }
    Ok(s)
}

fn cmd_husimi(a: &HusimiArgs) -> Result<String> {
    Ok(husimi_csv(&husimi(&a.field.field()?, &a.grid)?))
}

fn cmd_symmetry(a: &SymmetryArgs) -> Result<String> {
    let report = detect_cyclic_symmetry(&a.field.field()?, a.tol);
    Ok(serde_json::to_string_pretty(&report)? + "\n")
}

/// Default two-pass run: a balanced ladder atom splits `|3>` into `|1>, |3>`,
/// a second atom with `mu12 = 1, mu23 = sqrt(2)` turns it into a cat.
pub fn default_protocol_spec() -> Result<ProtocolSpec> {
    use crate::analytic::{balanced_coupling, Sign};
    let mu23 = std::f64::consts::SQRT_2;
    let first = AtomicConfig::xi(balanced_coupling(3, mu23, Sign::Minus)?, mu23);
    let ts = switching_time(&first, 3, 1)?;
    Ok(ProtocolSpec {
        config: first,
        nu0: 3,
        nu1: None,
        theta: 0.0,
        xi: 0.0,
        passes: vec![
            PassSpec {
                schedule: CouplingSchedule::bump(2.0 * (ts + 0.5))?,
                exit: ExitPolicy::MinimizeIntermediate,
                atoms: 1,
                config: None,
            },
            PassSpec {
                schedule: CouplingSchedule::bump(5.749)?,
                exit: ExitPolicy::OptimizeCat {
                    target: DEFAULT_LEAKAGE_TARGET,
                    window: Some((5.749 * 0.85, 5.749 * 1.15)),
                },
                atoms: 1,
                config: Some(AtomicConfig::xi(1.0, mu23)),
            },
        ],
    })
}

fn cmd_protocol(a: &ProtocolArgs) -> Result<String> {
    let spec = match &a.spec {
        Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
        None => default_protocol_spec()?,
    };
    let reports = run_protocol(&spec)?;
    Ok(
        serde_json::to_string_pretty(&serde_json::json!({ "spec": spec, "reports": reports }))?
            + "\n",
    )
}

fn cmd_table1(a: &Table1Args) -> Result<String> {
    let rows = reference_cat_table(a.target)?;
    let width = rows
        .iter()
        .map(|r| r.probabilities.len())
        .max()
        .unwrap_or(0);
    let mut s = String::from("m1,m2,delta_nu,t_tof,leakage,order,prepared_order");
    for nu in 0..width {
        let _ = write!(s, ",p{nu}");
    }
    s.push('\n');
    for r in &rows {
        let _ = write!(
            s,
            "{},{},{},{},{},{},{}",
            r.m1,
            r.m2,
            r.delta_nu,
            num(r.t_tof),
            num(r.leakage),
            r.order,
            r.prepared_order
        );
        for nu in 0..width {
            let p = r.probabilities.get(nu).copied().unwrap_or(0.0);
            let _ = write!(s, ",{}", num(p));
        }
        s.push('\n');
    }
    Ok(s)
}

fn cmd_animate(a: &AnimateArgs, started: Instant) -> Result<()> {
    if a.dtau.is_nan() || a.dtau <= 0.0 || a.t_end.is_nan() || a.t_end <= 0.0 {
        return Err(Error::InvalidArgument(
            "--dtau and --t-end must be positive".into(),
        ));
    }
    let config = a.config.build()?;
    let initial = a.field.state(&config, a.na)?;
    let frames = (a.t_end / a.dtau).floor() as usize;
    let t_end = frames.max(1) as f64 * a.dtau;
    let opts = IntegratorOptions::default().with_samples(frames.max(1) + 1);
    let traj = integrate_with(&initial, &config, &schedule_for(a.tof)?, 0.0, t_end, &opts)?;
    let mut manifest = RunManifest::new("animate", params(a));
    manifest.duration_seconds = started.elapsed().as_secs_f64();
    export_frames_with(&traj, &a.grid, 1, &a.out, manifest)?;
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        if n > 0 {
            // A second call in the same process keeps the first pool.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let started = Instant::now();
    let (name, out, text, p) = match &cli.command {
        Command::Basis(a) => ("basis", &a.out, cmd_basis(a)?, params(a)),
        Command::Spectrum(a) => ("spectrum", &a.out, cmd_spectrum(a)?, params(a)),
        Command::Dressed(a) => ("dressed", &a.out, cmd_dressed(a)?, params(a)),
        Command::Propagate(a) => ("propagate", &a.out, cmd_propagate(a)?, params(a)),
        Command::Evolve(a) => ("evolve", &a.out, cmd_evolve(a)?, params(a)),
        Command::Husimi(a) => ("husimi", &a.out, cmd_husimi(a)?, params(a)),
        Command::Symmetry(a) => ("symmetry", &a.out, cmd_symmetry(a)?, params(a)),
        Command::Protocol(a) => ("protocol", &a.out, cmd_protocol(a)?, params(a)),
        Command::Table1(a) => ("table1", &a.out, cmd_table1(a)?, params(a)),
        Command::Animate(a) => return cmd_animate(a, started),
    };
    let mut manifest = RunManifest::new(name, p);
    if let Command::Husimi(a) = &cli.command {
        manifest.grids.push(a.grid);
    }
    emit(out, &text, manifest, started)
}

/// Parse `argv` (including the program name) and run one subcommand.
/// Returns the process exit code: 0 on success, 2 for invalid input,
/// 3 for numerical or i/o failures.
pub fn run_command<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    configure_threads();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_subcommands() {
        for argv in [
            vec!["cnlight", "basis", "--m", "3"],
            vec!["cnlight", "spectrum", "--m", "3", "--mu23", "1.41421356"],
            vec!["cnlight", "dressed", "--config", "v", "--m", "2"],
            vec!["cnlight", "propagate", "--m", "3", "--tau", "0.5"],
            vec![
                "cnlight",
                "evolve",
                "--nu1",
                "1",
                "--nu2",
                "3",
                "--t-end",
                "1",
                "--delta12",
                "-0.5",
            ],
            vec!["cnlight", "husimi", "--grid", "-2:2:5,-2:2:5"],
            vec!["cnlight", "symmetry", "--nu1", "2", "--nu2", "7"],
            vec!["cnlight", "protocol"],
            vec!["cnlight", "table1"],
            vec!["cnlight", "animate", "--out", "x"],
        ] {
            Cli::try_parse_from(argv.clone()).unwrap_or_else(|e| panic!("{argv:?}: {e}"));
        }
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(
            run_command(["cnlight", "spectrum", "--m", "3", "--bogus"]),
            2
        );
        assert_eq!(run_command(["cnlight", "frobnicate"]), 2);
    }

    #[test]
    fn validation_errors_exit_two() {
        // mu13 is forbidden in the ladder configuration.
        assert_eq!(
            run_command(["cnlight", "spectrum", "--m", "3", "--mu13", "0.5"]),
            2
        );
    }

    #[test]
    fn spectrum_rows() {
        let a = SectorArgs {
            config: ConfigArgs {
                config: ConfigKind::Xi,
                mu12: Some(1.0),
                mu13: None,
                mu23: Some(std::f64::consts::SQRT_2),
                delta12: 0.0,
                delta13: 0.0,
                delta23: 0.0,
            },
            m: 3,
            out: OutArgs { out: None },
        };
        let csv = cmd_spectrum(&a).unwrap();
        let rows: Vec<f64> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        assert!((rows[0] - (3.0 + 7f64.sqrt())).abs() < 1e-7);
        assert_eq!(rows[1], 3.0);
        assert!((rows[2] - (3.0 - 7f64.sqrt())).abs() < 1e-7);
    }
}
