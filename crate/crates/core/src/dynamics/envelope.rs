use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::Transition;

/// `exp(-1/x)` for `x > 0`, zero otherwise.
fn flat_exp(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

/// Smooth transit envelope of an atom crossing the cavity in time `t_tof`.
///
/// Numerator `exp(-t_tof / (t (t_tof - t)))` over the two ramp normalizers
/// `exp(-1/t) + exp(-1/(1-t))` and `exp(-1/(t_tof-t)) + exp(-1/(1-t_tof+t))`,
/// with every `exp(-1/x)` taken as zero for `x <= 0`. This equals the product
/// of a unit-width rising smoothstep at entry and a falling one at exit, so
/// the value lies in `[0, 1]`, plateaus at 1 and vanishes outside
/// `(0, t_tof)`. Ramps that overlap (`t_tof < 2`) multiply.
pub fn bump(t_tof: f64, t: f64) -> f64 {
    if !(t > 0.0 && t < t_tof) {
        return 0.0;
    }
    let s = t_tof - t;
    let num = flat_exp(t) * flat_exp(s);
    if num == 0.0 {
        return 0.0;
    }
    let entry = flat_exp(t) + flat_exp(1.0 - t);
    let exit = flat_exp(s) + flat_exp(1.0 - s);
    num / (entry * exit)
}

/// The same expression evaluated with ordinary real exponentials everywhere
/// inside `(0, t_tof)`. Away from the ramps the normalizers grow large and the
/// envelope is strongly suppressed; it is kept for comparison only.
pub fn bump_literal(t_tof: f64, t: f64) -> f64 {
    if !(t > 0.0 && t < t_tof) {
        return 0.0;
    }
    let s = t_tof - t;
    let num = (-t_tof / (t * s)).exp();
    let entry = (-1.0 / t).exp() + (-1.0 / (1.0 - t)).exp();
    let exit = (-1.0 / s).exp() + (-1.0 / (1.0 - s)).exp();
    let v = num / (entry * exit);
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnvelopeMode {
    Constant,
    Bump,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BumpReading {
    #[default]
    Clamped,
    Literal,
}

/// Time dependence of the atom-field couplings: the coupling of pair `ij` at
/// time `t` is `mu_ij * scale_ij * envelope(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingSchedule {
    pub mode: EnvelopeMode,
    /// Infinite for a constant coupling; stored as `null` in JSON.
    #[serde(with = "unbounded_time")]
    pub t_tof: f64,
    pub scale12: f64,
    pub scale13: f64,
    pub scale23: f64,
    #[serde(default)]
    pub reading: BumpReading,
}

mod unbounded_time {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &f64, s: S) -> Result<S::Ok, S::Error> {
        if t.is_finite() {
            s.serialize_some(t)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

impl CouplingSchedule {
    pub fn constant() -> Self {
        Self {
            mode: EnvelopeMode::Constant,
            t_tof: f64::INFINITY,
            scale12: 1.0,
            scale13: 1.0,
            scale23: 1.0,
            reading: BumpReading::Clamped,
        }
    }

    pub fn bump(t_tof: f64) -> Result<Self> {
        if !t_tof.is_finite() || t_tof <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "time of flight must be positive and finite, got {t_tof}"
            )));
        }
        Ok(Self {
            mode: EnvelopeMode::Bump,
            t_tof,
            ..Self::constant()
        })
    }

    pub fn with_scales(mut self, scale12: f64, scale13: f64, scale23: f64) -> Self {
        self.scale12 = scale12;
        self.scale13 = scale13;
        self.scale23 = scale23;
        self
    }

    pub fn with_reading(mut self, reading: BumpReading) -> Self {
        self.reading = reading;
        self
    }

    pub fn scales(&self) -> [f64; 3] {
        [self.scale12, self.scale13, self.scale23]
    }

    pub fn scale(&self, t: Transition) -> f64 {
        self.scales()[t.index()]
    }

    /// Common envelope factor at time `t`.
    pub fn envelope(&self, t: f64) -> f64 {
        match (self.mode, self.reading) {
            (EnvelopeMode::Constant, _) => 1.0,
            (EnvelopeMode::Bump, BumpReading::Clamped) => bump(self.t_tof, t),
            (EnvelopeMode::Bump, BumpReading::Literal) => bump_literal(self.t_tof, t),
        }
    }

    /// Per-pair multipliers `scale_ij * envelope(t)`, ordered `(12, 13, 23)`.
    pub fn factors(&self, t: f64) -> [f64; 3] {
        let e = self.envelope(t);
        self.scales().map(|s| s * e)
    }

    /// Time the envelope needs beyond `t` to accumulate the same coupling
    /// area as a constant coupling: half a ramp for a bump.
    pub fn entry_delay(&self) -> f64 {
        match self.mode {
            EnvelopeMode::Constant => 0.0,
            EnvelopeMode::Bump => 0.5,
        }
    }
}
