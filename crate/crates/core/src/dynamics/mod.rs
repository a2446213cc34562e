//! Time evolution of atom-field states under constant or transit-shaped couplings.

pub mod envelope;
pub mod integrator;
pub mod operator;
pub mod state;

pub use envelope::{bump, bump_literal, BumpReading, CouplingSchedule, EnvelopeMode};
pub use integrator::{integrate, integrate_with, IntegratorOptions, IntegratorStats, Trajectory};
pub use operator::{build_rhs, diagonal_energy, interaction_element, Coupling, SectorOperator};
pub use state::{make_superposition, Sector, SystemState};
