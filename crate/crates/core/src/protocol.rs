//! Multi-pass cavity protocol: a first ladder atom turns a Fock state into a
//! two-component superposition, later atoms reshape it into cat states with
//! a larger photon-number gap.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::switching_time;
use crate::dynamics::{
    integrate_with, CouplingSchedule, EnvelopeMode, IntegratorOptions, SystemState, Trajectory,
};
use crate::error::{Error, Result};
use crate::hilbert::{AtomicConfig, ConfigKind};
use crate::observables::{
    coherence_support, detect_cyclic_symmetry, linear_entropy, photon_probabilities, reduce_field,
    FieldDensityMatrix, SymmetryReport, DEFAULT_SYMMETRY_TOL,
};

/// Largest `P(nu0 - 1)` accepted at the first-pass exit.
pub const EXIT_THRESHOLD: f64 = 1e-3;
/// Linear entropy below which a field counts as pure.
pub const PURITY_TOL: f64 = 1e-9;
/// Populations below this are treated as numerical noise when preparing the next field.
pub const PREPARED_FLOOR: f64 = 1e-12;
pub const DEFAULT_LEAKAGE_TARGET: f64 = 0.02;
pub const DEFAULT_TOF_WINDOW: (f64, f64) = (1.0, 20.0);

const GRID_STEP: f64 = 0.01;
const GOLDEN_TOL: f64 = 1e-6;
const INTEGRATION_TOL: f64 = 1e-11;

/// How the exit time of a pass is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "policy")]
pub enum ExitPolicy {
    /// Exit where `P(nu0 - 1)` has its minimum near the first switching time.
    MinimizeIntermediate,
    /// Exit at the end of the schedule's time of flight.
    TimeOfFlight,
    /// Pick the time of flight that minimizes leakage out of the cat support.
    OptimizeCat {
        target: f64,
        window: Option<(f64, f64)>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PassSpec {
    pub schedule: CouplingSchedule,
    pub exit: ExitPolicy,
    #[serde(default = "one")]
    pub atoms: u32,
    /// Couplings for this pass; defaults to the protocol configuration.
    #[serde(default)]
    pub config: Option<AtomicConfig>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolSpec {
    pub config: AtomicConfig,
    pub nu0: u32,
    /// Second photon number of an initial superposition
    /// `cos(theta)|nu0> + e^{i xi} sin(theta)|nu1>`; `None` starts from `|nu0>`.
    #[serde(default)]
    pub nu1: Option<u32>,
    #[serde(default)]
    pub theta: f64,
    #[serde(default)]
    pub xi: f64,
    pub passes: Vec<PassSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PassageReport {
    pub exit_time: f64,
    /// Reduced field when the atom leaves.
    pub field: FieldDensityMatrix,
    /// Pure field with the same photon statistics, carrying the phase of the
    /// dominant amplitude of each photon number. Feeds the next pass.
    pub prepared: FieldDensityMatrix,
    pub probabilities: Vec<f64>,
    pub times: Vec<f64>,
    pub entropy_trace: Vec<f64>,
    pub probability_trace: Vec<Vec<f64>>,
    /// Cyclic order of the reduced field at each sample time.
    pub order_trace: Vec<u32>,
    pub symmetry: SymmetryReport,
    pub prepared_symmetry: SymmetryReport,
    /// Photon-number gap between the two most probable photon numbers.
    pub dominant_gap: Option<u32>,
    /// Superposition angles of `prepared` when it has exactly two components.
    pub theta: Option<f64>,
    pub xi: Option<f64>,
    /// `P(nu0 - 1)` at the exit of a first pass.
    pub min_probability: Option<f64>,
    pub leakage: Option<f64>,
    pub norm_drift: f64,
    pub warnings: Vec<String>,
}

impl PassageReport {
    fn from_field(field: FieldDensityMatrix) -> Self {
        let probabilities = photon_probabilities(&field);
        let symmetry = detect_cyclic_symmetry(&field, DEFAULT_SYMMETRY_TOL);
        let (theta, xi) = two_component_angles(&field);
        Self {
            exit_time: 0.0,
            prepared: field.clone(),
            prepared_symmetry: symmetry.clone(),
            dominant_gap: dominant_gap(&probabilities),
            times: vec![0.0],
            entropy_trace: vec![linear_entropy(&field)],
            probability_trace: vec![probabilities.clone()],
            order_trace: vec![symmetry.order],
            probabilities,
            symmetry,
            field,
            theta,
            xi,
            min_probability: None,
            leakage: None,
            norm_drift: 0.0,
            warnings: Vec::new(),
        }
    }

    fn from_run(traj: &Trajectory, exit: &SystemState, exit_time: f64, floor: f64) -> Self {
        let mut entropy_trace = Vec::with_capacity(traj.len());
        let mut probability_trace = Vec::with_capacity(traj.len());
        let mut order_trace = Vec::with_capacity(traj.len());
        for snap in &traj.snapshots {
            let rho = reduce_field(snap);
            entropy_trace.push(linear_entropy(&rho));
            probability_trace.push(photon_probabilities(&rho));
            order_trace.push(support_order(&rho));
        }
        let field = reduce_field(exit);
        let prepared = prepared_field(exit, floor);
        let (theta, xi) = two_component_angles(&prepared);
        Self {
            exit_time,
            probabilities: photon_probabilities(&field),
            dominant_gap: dominant_gap(&photon_probabilities(&field)),
            symmetry: detect_cyclic_symmetry(&field, DEFAULT_SYMMETRY_TOL),
            prepared_symmetry: detect_cyclic_symmetry(&prepared, DEFAULT_SYMMETRY_TOL),
            field,
            prepared,
            times: traj.times.clone(),
            entropy_trace,
            probability_trace,
            order_trace,
            theta,
            xi,
            min_probability: None,
            leakage: None,
            norm_drift: traj.stats.max_norm_drift,
            warnings: Vec::new(),
        }
    }
}

/// `|nu_a - nu_b|` for the two largest entries of `p`.
pub fn dominant_gap(p: &[f64]) -> Option<u32> {
    let mut idx: Vec<usize> = (0..p.len()).filter(|&k| p[k] > 0.0).collect();
    if idx.len() < 2 {
        return None;
    }
    idx.sort_by(|&a, &b| p[b].total_cmp(&p[a]).then(a.cmp(&b)));
    Some(idx[0].abs_diff(idx[1]) as u32)
}

fn support_order(rho: &FieldDensityMatrix) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    coherence_support(rho, DEFAULT_SYMMETRY_TOL)
        .into_iter()
        .fold(0, gcd)
}

/// Photon-number probability of `nu` in a full atom-field state.
pub fn photon_probability(state: &SystemState, nu: u32) -> f64 {
    state
        .components()
        .filter(|(k, _)| k.nu == nu)
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

/// Pure field `sum_nu sqrt(P(nu)) e^{i arg a_nu} |nu>`, where `a_nu` is the
/// largest amplitude with `nu` photons. Photon numbers with `P(nu) < floor`
/// are dropped and the rest renormalized.
pub fn prepared_field(state: &SystemState, floor: f64) -> FieldDensityMatrix {
    let n = state.max_m().unwrap_or(0) as usize + 1;
    let mut prob = vec![0.0; n];
    let mut lead = vec![Complex64::default(); n];
    for (ket, a) in state.components() {
        let nu = ket.nu as usize;
        prob[nu] += a.norm_sqr();
        if a.norm() > lead[nu].norm() {
            lead[nu] = a;
        }
    }
    let kept: f64 = prob.iter().filter(|&&p| p >= floor && p > 0.0).sum();
    let psi: Vec<Complex64> = prob
        .iter()
        .zip(&lead)
        .map(|(&p, a)| {
            if p >= floor && p > 0.0 {
                Complex64::from_polar((p / kept).sqrt(), a.arg())
            } else {
                Complex64::default()
            }
        })
        .collect();
    FieldDensityMatrix::from_vector(&psi)
}

/// `(theta, xi)` of `cos(theta)|nu1> + e^{i xi} sin(theta)|nu2>` when the
/// populated photon numbers are exactly two.
fn two_component_angles(rho: &FieldDensityMatrix) -> (Option<f64>, Option<f64>) {
    let p = photon_probabilities(rho);
    let support: Vec<usize> = (0..p.len()).filter(|&k| p[k] > 1e-12).collect();
    if support.len() != 2 {
        return (None, None);
    }
    let (a, b) = (support[0], support[1]);
    let theta = p[b].sqrt().atan2(p[a].sqrt());
    // rho[a, b] = cos(theta) sin(theta) e^{-i xi}
    let xi = if linear_entropy(rho) <= PURITY_TOL {
        Some(-rho.rho[(a, b)].arg())
    } else {
        None
    };
    (Some(theta), xi)
}

/// Golden-section minimization of `f` on `[a, b]`.
pub(crate) fn golden_min(
    mut f: impl FnMut(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

fn sampled_run(
    initial: &SystemState,
    config: &AtomicConfig,
    schedule: &CouplingSchedule,
    t_end: f64,
) -> Result<Trajectory> {
    integrate_with(
        initial,
        config,
        schedule,
        0.0,
        t_end,
        &IntegratorOptions::default().with_tol(INTEGRATION_TOL),
    )
}

fn state_at(
    from: &SystemState,
    t0: f64,
    t1: f64,
    config: &AtomicConfig,
    schedule: &CouplingSchedule,
) -> Result<SystemState> {
    if t1 <= t0 {
        return Ok(from.clone());
    }
    let opts = IntegratorOptions::default()
        .with_tol(INTEGRATION_TOL)
        .with_samples(2);
    Ok(integrate_with(from, config, schedule, t0, t1, &opts)?
        .final_state()
        .clone())
}

/// Send one ground-state ladder atom through a cavity holding `|nu0>` and
/// take it out where `P(nu0 - 1)` is smallest near the first switching time
/// (plus the entry delay of the envelope).
pub fn first_passage(
    nu0: u32,
    config: &AtomicConfig,
    schedule: &CouplingSchedule,
) -> Result<PassageReport> {
    if config.kind() != ConfigKind::Xi {
        return Err(Error::WrongConfiguration {
            expected: "xi",
            got: config.kind().name(),
        });
    }
    if nu0 < 2 {
        return Err(Error::SectorTooSmall { m: nu0, min: 2 });
    }
    let mut warnings = Vec::new();
    if nu0 == 2 {
        warnings.push("nu0 = 2: the lower component is the vacuum".to_string());
    }
    let ts = switching_time(config, nu0, 1)?;
    let initial = SystemState::fock_ground(config, 1, nu0)?;
    let p_mid = |s: &SystemState| photon_probability(s, nu0 - 1);

    let (t_exit, p_exit) = match schedule.mode {
        EnvelopeMode::Constant => {
            let s = state_at(&initial, 0.0, ts, config, schedule)?;
            (ts, p_mid(&s))
        }
        EnvelopeMode::Bump => {
            let center = ts + schedule.entry_delay();
            let lo = (center - 0.5 * ts).max(GRID_STEP);
            let hi = (center + 0.5 * ts).min(schedule.t_tof);
            if hi <= lo {
                return Err(Error::InvalidArgument(format!(
                    "time of flight {} ends before the exit search window [{lo}, {}]",
                    schedule.t_tof,
                    center + 0.5 * ts
                )));
            }
            let n = ((hi - lo) / GRID_STEP).ceil() as usize;
            let grid: Vec<f64> = (0..=n)
                .map(|k| (lo + k as f64 * GRID_STEP).min(hi))
                .collect();
            let opts = IntegratorOptions::default()
                .with_tol(INTEGRATION_TOL)
                .with_samples(2)
                .with_sample_times(grid.iter().copied());
            let coarse = integrate_with(&initial, config, schedule, 0.0, hi, &opts)?;
            let first = coarse
                .times
                .iter()
                .position(|&t| t >= lo - 1e-12)
                .expect("search grid is non-empty");
            let (k, _) = coarse
                .iter()
                .enumerate()
                .skip(first)
                .map(|(i, (_, s))| (i, p_mid(s)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("search grid is non-empty");
            let a = k.saturating_sub(1).max(first);
            let b = (k + 1).min(coarse.len() - 1);
            let (ta, sa) = (coarse.times[a], &coarse.snapshots[a]);
            let (t_best, p_best) = golden_min(
                |t| Ok(p_mid(&state_at(sa, ta, t, config, schedule)?)),
                ta,
                coarse.times[b],
                GOLDEN_TOL,
            )?;
            // A minimum pinned to the window edge is not a stopping point.
            let on_edge = k == first || k == coarse.len() - 1;
            if p_best > EXIT_THRESHOLD || on_edge {
                return Err(Error::NoMinimumFound {
                    threshold: EXIT_THRESHOLD,
                    lo,
                    hi,
                    best: p_best,
                    best_time: t_best,
                });
            }
            (t_best, p_best)
        }
    };

    let traj = sampled_run(&initial, config, schedule, t_exit)?;
    // The intermediate photon number is the one the exit is timed to remove.
    let mut report = PassageReport::from_run(&traj, traj.final_state(), t_exit, EXIT_THRESHOLD);
    report.min_probability = Some(p_exit);
    report.warnings = warnings;
    Ok(report)
}

fn product_with_field(
    field: &FieldDensityMatrix,
    config: &AtomicConfig,
    na: u32,
) -> Result<SystemState> {
    let entropy = linear_entropy(field);
    let psi = field
        .pure_amplitudes(PURITY_TOL)
        .ok_or(Error::NonPureField { entropy })?;
    let amps: Vec<(u32, Complex64)> = psi
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(nu, a)| (nu as u32, *a))
        .collect();
    SystemState::ground_product(config, na, &amps)
}

/// Send `na` ground-state atoms through a cavity holding the pure `field`
/// for the whole time of flight of `schedule`.
pub fn subsequent_passage(
    field: &FieldDensityMatrix,
    config: &AtomicConfig,
    schedule: &CouplingSchedule,
    na: u32,
) -> Result<PassageReport> {
    if schedule.mode != EnvelopeMode::Bump {
        return Err(Error::InvalidArgument(
            "subsequent passes need a finite time of flight".into(),
        ));
    }
    let initial = product_with_field(field, config, na)?;
    let traj = sampled_run(&initial, config, schedule, schedule.t_tof)?;
    Ok(PassageReport::from_run(
        &traj,
        traj.final_state(),
        schedule.t_tof,
        PREPARED_FLOOR,
    ))
}

/// Photon numbers kept by a cat built from `|m1>, |m2>` (the lower component
/// moves down by two photons, the upper one returns).
pub fn cat_support(m1: u32, m2: u32) -> (u32, u32) {
    (m1.saturating_sub(2), m2)
}

/// Population outside [`cat_support`] after exit.
pub fn cat_leakage(probabilities: &[f64], m1: u32, m2: u32) -> f64 {
    let (lo, hi) = cat_support(m1, m2);
    let keep = |nu: u32| probabilities.get(nu as usize).copied().unwrap_or(0.0);
    (1.0 - keep(lo) - keep(hi)).max(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TofSearch {
    pub t_tof: f64,
    pub leakage: f64,
    pub window: (f64, f64),
}

fn two_fock_support(field: &FieldDensityMatrix) -> Result<(u32, u32)> {
    let p = photon_probabilities(field);
    let support: Vec<u32> = (0..p.len() as u32)
        .filter(|&k| p[k as usize] > 1e-12)
        .collect();
    match support[..] {
        [m1, m2] => Ok((m1, m2)),
        _ => Err(Error::InvalidArgument(format!(
            "cat search needs a two-component field, got support {support:?}"
        ))),
    }
}

/// Scan the time of flight over `window` for the value that leaves the least
/// population outside the cat support of the two-component `field`.
pub fn find_tof_for_cat(
    field: &FieldDensityMatrix,
    config: &AtomicConfig,
    target: f64,
    window: Option<(f64, f64)>,
) -> Result<TofSearch> {
    let (m1, m2) = two_fock_support(field)?;
    let initial = product_with_field(field, config, 1)?;
    let (lo, hi) = window.unwrap_or(DEFAULT_TOF_WINDOW);
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidArgument(format!(
            "invalid time-of-flight window [{lo}, {hi}]"
        )));
    }
    let leak = |t_tof: f64| -> Result<f64> {
        let schedule = CouplingSchedule::bump(t_tof)?;
        let exit = state_at(&initial, 0.0, t_tof, config, &schedule)?;
        Ok(cat_leakage(
            &photon_probabilities(&reduce_field(&exit)),
            m1,
            m2,
        ))
    };
    let n = ((hi - lo) / GRID_STEP).ceil() as usize;
    let grid: Vec<f64> = (0..=n)
        .map(|k| (lo + k as f64 * GRID_STEP).min(hi))
        .collect();
    let values: Vec<f64> = grid.par_iter().map(|&t| leak(t)).collect::<Result<_>>()?;
    let k = (0..values.len())
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("scan grid is non-empty");
    let a = grid[k.saturating_sub(1)];
    let b = grid[(k + 1).min(grid.len() - 1)];
    let (mut t_tof, mut leakage) = (grid[k], values[k]);
    if b > a {
        let (t, l) = golden_min(leak, a, b, GOLDEN_TOL)?;
        if l < leakage {
            t_tof = t;
            leakage = l;
        }
    }
    if leakage > target {
        return Err(Error::TargetUnreachable {
            target,
            t_tof,
            leakage,
        });
    }
    Ok(TofSearch {
        t_tof,
        leakage,
        window: (lo, hi),
    })
}

/// Reference `(M1, M2, t_tof)` triples for the equal-weight ladder cats with
/// `mu12 = 1`, `mu23 = sqrt(2)` at resonance.
pub const REFERENCE_CATS: [(u32, u32, f64); 3] = [(1, 3, 5.749), (3, 5, 4.510), (1, 5, 2.685)];

/// Relative half-width of the time-of-flight search around a reference value.
pub const REFERENCE_WINDOW: f64 = 0.15;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatRow {
    pub m1: u32,
    pub m2: u32,
    /// Photon-number gap of the surviving components.
    pub delta_nu: u32,
    pub t_tof: f64,
    pub leakage: f64,
    pub probabilities: Vec<f64>,
    pub order: u32,
    pub prepared_order: u32,
}

/// Optimized single-atom cat from `(|m1> + |m2>)/sqrt(2)`, searching `t_tof`
/// within `REFERENCE_WINDOW` of `t_ref`.
pub fn cat_row(config: &AtomicConfig, m1: u32, m2: u32, t_ref: f64, target: f64) -> Result<CatRow> {
    if m1 >= m2 {
        return Err(Error::InvalidArgument(format!(
            "need M1 < M2, got ({m1}, {m2})"
        )));
    }
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let field = FieldDensityMatrix::pure(&[(m1, h), (m2, h)]);
    let window = (
        t_ref * (1.0 - REFERENCE_WINDOW),
        t_ref * (1.0 + REFERENCE_WINDOW),
    );
    let found = find_tof_for_cat(&field, config, target, Some(window))?;
    let r = subsequent_passage(&field, config, &CouplingSchedule::bump(found.t_tof)?, 1)?;
    let (lo, hi) = cat_support(m1, m2);
    Ok(CatRow {
        m1,
        m2,
        delta_nu: hi - lo,
        t_tof: found.t_tof,
        leakage: found.leakage,
        probabilities: r.probabilities,
        order: r.symmetry.order,
        prepared_order: r.prepared_symmetry.order,
    })
}

/// All rows of [`REFERENCE_CATS`].
pub fn reference_cat_table(target: f64) -> Result<Vec<CatRow>> {
    let config = AtomicConfig::xi(1.0, std::f64::consts::SQRT_2);
    REFERENCE_CATS
        .iter()
        .map(|&(m1, m2, t)| cat_row(&config, m1, m2, t, target))
        .collect()
}

/// The initial field report followed by one report per pass.
pub fn run_protocol(spec: &ProtocolSpec) -> Result<Vec<PassageReport>> {
    let field = match spec.nu1 {
        None => FieldDensityMatrix::fock(spec.nu0),
        Some(nu1) => {
            if nu1 == spec.nu0 {
                return Err(Error::InvalidArgument("nu1 must differ from nu0".into()));
            }
            FieldDensityMatrix::pure(&[
                (spec.nu0, Complex64::new(spec.theta.cos(), 0.0)),
                (nu1, Complex64::from_polar(spec.theta.sin(), spec.xi)),
            ])
        }
    };
    let mut reports = vec![PassageReport::from_field(field)];
    for pass in &spec.passes {
        let config = pass.config.as_ref().unwrap_or(&spec.config);
        let input = reports
            .last()
            .expect("initial report present")
            .prepared
            .clone();
        let report = match pass.exit {
            ExitPolicy::MinimizeIntermediate => {
                let p = photon_probabilities(&input);
                let nu0 = (0..p.len())
                    .find(|&k| (p[k] - 1.0).abs() < 1e-12)
                    .ok_or_else(|| {
                        Error::InvalidArgument("a first pass needs a Fock input field".into())
                    })?;
                if pass.atoms != 1 {
                    return Err(Error::InvalidArgument(
                        "a first pass uses a single atom".into(),
                    ));
                }
                first_passage(nu0 as u32, config, &pass.schedule)?
            }
            ExitPolicy::TimeOfFlight => {
                subsequent_passage(&input, config, &pass.schedule, pass.atoms)?
            }
            ExitPolicy::OptimizeCat { target, window } => {
                let found = find_tof_for_cat(&input, config, target, window)?;
                let schedule = CouplingSchedule::bump(found.t_tof)?
                    .with_scales(
                        pass.schedule.scale12,
                        pass.schedule.scale13,
                        pass.schedule.scale23,
                    )
                    .with_reading(pass.schedule.reading);
                let mut r = subsequent_passage(&input, config, &schedule, pass.atoms)?;
                r.leakage = Some(found.leakage);
                r
            }
        };
        reports.push(report);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{balanced_coupling, Sign};
    use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, fx) = golden_min(|x| Ok((x - 0.3).powi(2)), 0.0, 1.0, 1e-9).unwrap();
        assert!((x - 0.3).abs() < 1e-8 && fx < 1e-15);
    }

    #[test]
    fn constant_first_pass_exits_at_switching_time() {
        let c = AtomicConfig::xi(1.0, SQRT_2);
        let r = first_passage(3, &c, &CouplingSchedule::constant()).unwrap();
        assert!((r.exit_time - PI / 7f64.sqrt()).abs() < 1e-15);
        assert!(r.min_probability.unwrap() < 1e-10);
        assert!((r.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bump_first_pass_is_delayed() {
        let c = AtomicConfig::xi(1.0, SQRT_2);
        let ts = PI / 7f64.sqrt();
        let r = first_passage(3, &c, &CouplingSchedule::bump(10.0).unwrap()).unwrap();
        assert!(
            (r.exit_time - (ts + 0.5)).abs() < 0.15,
            "exit {}",
            r.exit_time
        );
        assert!(r.min_probability.unwrap() < 1e-3);
    }

    #[test]
    fn balanced_first_pass_splits_evenly() {
        let mu23 = SQRT_2;
        let mu12 = balanced_coupling(3, mu23, Sign::Minus).unwrap();
        let c = AtomicConfig::xi(mu12, mu23);
        let r = first_passage(3, &c, &CouplingSchedule::constant()).unwrap();
        assert!((r.probabilities[1] - 0.5).abs() < 1e-9 && (r.probabilities[3] - 0.5).abs() < 1e-9);
        // The departing atom stays entangled with the field.
        assert!((linear_entropy(&r.field) - 0.5).abs() < 1e-9);
        assert_eq!(r.symmetry.order, 0);
        assert!(linear_entropy(&r.prepared) < 1e-12);
        assert_eq!(r.prepared_symmetry.order, 2);
        assert!((r.theta.unwrap() - FRAC_PI_4).abs() < 1e-8);
    }

    #[test]
    fn first_pass_rejects_other_configurations() {
        let c = AtomicConfig::v(1.0, 1.0);
        assert!(matches!(
            first_passage(3, &c, &CouplingSchedule::constant()),
            Err(Error::WrongConfiguration { .. })
        ));
    }

    #[test]
    fn short_flight_leaves_field_unchanged() {
        let c = AtomicConfig::xi(1.0, SQRT_2);
        let h = Complex64::new(FRAC_PI_4.cos(), 0.0);
        let field = FieldDensityMatrix::pure(&[(1, h), (3, h)]);
        let r = subsequent_passage(&field, &c, &CouplingSchedule::bump(1e-3).unwrap(), 1).unwrap();
        assert!(
            (r.probabilities[1] - 0.5).abs() < 1e-12 && (r.probabilities[3] - 0.5).abs() < 1e-12
        );
    }

    #[test]
    fn mixed_input_rejected() {
        let c = AtomicConfig::xi(1.0, SQRT_2);
        let mut field = FieldDensityMatrix::fock(1);
        field.rho[(0, 0)] = Complex64::new(0.5, 0.0);
        field.rho[(1, 1)] = Complex64::new(0.5, 0.0);
        assert!(matches!(
            subsequent_passage(&field, &c, &CouplingSchedule::bump(5.0).unwrap(), 1),
            Err(Error::NonPureField { .. })
        ));
    }

    #[test]
    fn zero_passes_report_initial_fock() {
        let spec = ProtocolSpec {
            config: AtomicConfig::xi(1.0, SQRT_2),
            nu0: 3,
            nu1: None,
            theta: 0.0,
            xi: 0.0,
            passes: vec![],
        };
        let r = run_protocol(&spec).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].symmetry.order, 0);
        assert_eq!(r[0].probabilities[3], 1.0);
    }

    #[test]
    fn leakage_bookkeeping() {
        let p = [0.4993, 0.0007, 0.0, 0.5];
        assert!((cat_leakage(&p, 1, 3) - 0.0007).abs() < 1e-12);
        assert_eq!(cat_support(3, 5), (1, 5));
    }
}
