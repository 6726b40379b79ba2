//! Test cases: analytic solutions, bottom profiles, imported waves and presets.

pub mod beach;
pub mod convergence;
pub mod presets;
pub mod reference;
pub mod solitary;

pub use beach::{build_bathymetry, lake_at_rest, BathymetryKind, Side};
pub use convergence::{convergence_study, loglog_slope, ConvergenceCase, ConvergenceRow, ConvergenceTable};
pub use presets::{build_scenario, Scenario, ScenarioKind, ScenarioParams};
pub use reference::{load_reference_wave, parse_reference_wave, ReferenceWave};
pub use solitary::{solitary_wave, SolitaryWaveParams};
