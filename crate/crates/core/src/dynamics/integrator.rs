//! Adaptive Dormand-Prince 5(4) integration of the interaction-picture
//! amplitude equations, one excitation sector at a time.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::AtomicConfig;

use super::envelope::CouplingSchedule;
use super::operator::SectorOperator;
use super::state::SystemState;

pub const DEFAULT_TOL: f64 = 1e-11;
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct IntegratorOptions {
    /// Absolute and relative local error tolerance per step.
    pub tol: f64,
    /// Number of uniformly spaced snapshots including both end points.
    pub samples: usize,
    /// Extra snapshot times, merged into the uniform grid.
    pub sample_times: Vec<f64>,
    pub min_step: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            samples: DEFAULT_SAMPLES,
            sample_times: Vec::new(),
            min_step: 1e-12,
        }
    }
}

impl IntegratorOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_sample_times(mut self, times: impl IntoIterator<Item = f64>) -> Self {
        self.sample_times.extend(times);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IntegratorStats {
    pub steps: u64,
    pub rejected: u64,
    /// Largest `| ||phi_M(t)||^2 - ||phi_M(0)||^2 |` over sectors and accepted steps.
    pub max_norm_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub snapshots: Vec<SystemState>,
    pub stats: IntegratorStats,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &SystemState {
        self.snapshots
            .last()
            .expect("trajectory holds at least the initial state")
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &SystemState)> {
        self.times.iter().copied().zip(self.snapshots.iter())
    }
}

/// Integrate from `t = 0` to `t_end` with the default snapshot grid.
pub fn integrate(
    initial: &SystemState,
    config: &AtomicConfig,
    schedule: &CouplingSchedule,
    t_end: f64,
    tol: f64,
) -> Result<Trajectory> {
    integrate_with(
        initial,
        config,
        schedule,
        0.0,
        t_end,
        &IntegratorOptions::default().with_tol(tol),
    )
}

/// Integrate a state given at `t_start` up to `t_end`.
pub fn integrate_with(
    initial: &SystemState,
    config: &AtomicConfig,
    schedule: &CouplingSchedule,
    t_start: f64,
    t_end: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    if !t_end.is_finite() || t_end <= t_start {
        return Err(Error::InvalidArgument(format!(
            "integration interval [{t_start}, {t_end}] is empty or not finite"
        )));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let times = sample_grid(t_start, t_end, opts);
    let phi0 = initial.to_interaction_picture(config, t_start);

    let sectors: Vec<_> = phi0.sectors.iter().collect();
    let runs: Vec<Result<(Vec<Vec<Complex64>>, IntegratorStats)>> = sectors
        .par_iter()
        .map(|(_, sector)| {
            let op = SectorOperator::new(config, &sector.basis);
            let y0: Vec<Complex64> = sector.amps.iter().copied().collect();
            integrate_sector(&op, schedule, y0, &times, opts)
        })
        .collect();

    let mut stats = IntegratorStats::default();
    let mut per_sector = Vec::with_capacity(runs.len());
    for run in runs {
        let (samples, s) = run?;
        stats.steps += s.steps;
        stats.rejected += s.rejected;
        stats.max_norm_drift = stats.max_norm_drift.max(s.max_norm_drift);
        per_sector.push(samples);
    }

    let snapshots = times
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let mut phi = phi0.clone();
            for ((_, sector), samples) in phi.sectors.iter_mut().zip(&per_sector) {
                for (a, v) in sector.amps.iter_mut().zip(&samples[i]) {
                    *a = *v;
                }
            }
            phi.from_interaction_picture(config, t)
        })
        .collect();

    Ok(Trajectory {
        times,
        snapshots,
        stats,
    })
}

fn sample_grid(t0: f64, t1: f64, opts: &IntegratorOptions) -> Vec<f64> {
    let n = opts.samples.max(2);
    let mut times: Vec<f64> = (0..n)
        .map(|k| {
            if k + 1 == n {
                t1
            } else {
                t0 + (t1 - t0) * k as f64 / (n - 1) as f64
            }
        })
        .collect();
    times.extend(
        opts.sample_times
            .iter()
            .copied()
            .filter(|t| *t > t0 && *t < t1),
    );
    times.sort_by(f64::total_cmp);
    times.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * (1.0 + b.abs()));
    times
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn integrate_sector(
    op: &SectorOperator,
    schedule: &CouplingSchedule,
    mut y: Vec<Complex64>,
    times: &[f64],
    opts: &IntegratorOptions,
) -> Result<(Vec<Vec<Complex64>>, IntegratorStats)> {
    let n = y.len();
    let mut stats = IntegratorStats::default();
    let mut out = Vec::with_capacity(times.len());
    out.push(y.clone());
    if n == 0 {
        out.resize(times.len(), Vec::new());
        return Ok((out, stats));
    }

    let rhs = |t: f64, y: &[Complex64], dy: &mut [Complex64]| {
        let mu = op.effective(schedule.factors(t));
        op.apply_generator(mu, t, y, dy);
    };

    let norm0: f64 = y.iter().map(|z| z.norm_sqr()).sum();
    let scale: f64 = op
        .couplings
        .iter()
        .map(|c| (c.weight * op.mu[c.pair.index()] * schedule.scale(c.pair)).abs())
        .fold(0.0, f64::max);
    let mut h = (0.1 / (1.0 + scale)).max(opts.min_step);

    let mut k: Vec<Vec<Complex64>> = vec![vec![Complex64::default(); n]; 7];
    let mut stage = vec![Complex64::default(); n];
    let mut y_new = vec![Complex64::default(); n];
    let mut t = times[0];
    rhs(t, &y, &mut k[0]);

    for &target in &times[1..] {
        while t < target {
            let remaining = target - t;
            let last = h >= remaining;
            let h_try = if last { remaining } else { h };

            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(s) {
                        if A[s][j] != 0.0 {
                            acc += kj[i] * (h_try * A[s][j]);
                        }
                    }
                    stage[i] = acc;
                }
                if s == 6 {
                    y_new.copy_from_slice(&stage);
                }
                let (head, tail) = k.split_at_mut(s);
                let _ = head;
                rhs(t + C[s] * h_try, &stage, &mut tail[0]);
            }

            let mut err: f64 = 0.0;
            for i in 0..n {
                let mut e = Complex64::default();
                for (s, ks) in k.iter().enumerate() {
                    if E[s] != 0.0 {
                        e += ks[i] * E[s];
                    }
                }
                let sc = opts.tol + opts.tol * y[i].norm().max(y_new[i].norm());
                err = err.max((e * h_try).norm() / sc);
            }

            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                t = if last { target } else { t + h_try };
                std::mem::swap(&mut y, &mut y_new);
                let k_last = std::mem::take(&mut k[6]);
                k[0] = k_last;
                k[6] = vec![Complex64::default(); n];
                stats.steps += 1;
                let norm: f64 = y.iter().map(|z| z.norm_sqr()).sum();
                stats.max_norm_drift = stats.max_norm_drift.max((norm - norm0).abs());
                // Keep the natural step when the accepted one was clipped.
                h = if last {
                    h.max(h_try * factor)
                } else {
                    h_try * factor
                };
            } else {
                stats.rejected += 1;
                h = h_try * factor;
                if h < opts.min_step {
                    return Err(Error::StepSizeUnderflow { t, dt: h });
                }
            }
        }
        out.push(y.clone());
    }
    Ok((out, stats))
}
