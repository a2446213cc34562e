use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coupling {pair} is not dipole-allowed in the {kind} configuration (got {value})")]
    ForbiddenCoupling {
        kind: &'static str,
        pair: &'static str,
        value: f64,
    },

    #[error("excitation sector M={m} is too small (need M >= {min})")]
    SectorTooSmall { m: u32, min: u32 },

    #[error("closed forms need the {kind} detuning condition {condition} (residual {residual:e})")]
    DetuningCondition {
        kind: &'static str,
        condition: &'static str,
        residual: f64,
    },

    #[error("degenerate sector: generalized Rabi frequency vanishes for M={m}")]
    DegenerateSector { m: u32 },

    #[error("operation requires the {expected} configuration, got {got}")]
    WrongConfiguration {
        expected: &'static str,
        got: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("step size underflow at t={t}: dt={dt:e} below minimum")]
    StepSizeUnderflow { t: f64, dt: f64 },

    #[error("no minimum of P(nu0-1) below {threshold:e} in [{lo}, {hi}] (best {best:e} at t={best_time})")]
    NoMinimumFound {
        threshold: f64,
        lo: f64,
        hi: f64,
        best: f64,
        best_time: f64,
    },

    #[error("leakage target {target} unreachable: best {leakage} at t_tof={t_tof}")]
    TargetUnreachable {
        target: f64,
        t_tof: f64,
        leakage: f64,
    },

    #[error("field state is not pure (linear entropy {entropy:e})")]
    NonPureField { entropy: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 2 for validation problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ForbiddenCoupling { .. }
            | Error::SectorTooSmall { .. }
            | Error::DetuningCondition { .. }
            | Error::WrongConfiguration { .. }
            | Error::InvalidArgument(_)
            | Error::Domain(_)
            | Error::NonPureField { .. }
            | Error::Json(_) => 2,
            Error::DegenerateSector { .. }
            | Error::StepSizeUnderflow { .. }
            | Error::NoMinimumFound { .. }
            | Error::TargetUnreachable { .. } => 3,
            Error::Io(_) => 3,
        }
    }
}
