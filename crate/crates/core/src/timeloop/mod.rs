//! Time integration: RK4, the splitting step, breaking detection and the run loop.

pub mod breaking;
pub mod rk4;
pub mod simulation;
pub mod step;

pub use breaking::{detect_breaking, dissipation, energy_fields, BreakingMask, EnergyFields};
pub use rk4::{rk4, OdeState};
pub use simulation::{run_simulation, GaugeRecord, GaugeSample, NullSink, OutputSink, RunSettings, Simulation};
pub use step::{
    cfl_dt, clamp_dry, courant_dt, damp_thin_layers, dispersive_step, max_speed, shallow_water_step, strang_step, strang_step_with,
    MaskPolicy, StepOutcome,
};
