//! The run loop: stepping, gauges, snapshots and the instability guard.

use super::breaking::{energy_fields, BreakingMask};
use super::step::{cfl_dt, clamp_dry, max_speed, strang_step_with, MaskPolicy};
use crate::bathymetry::Bathymetry;
use crate::boundary::Parity;
use crate::config::SolverConfig;
use crate::convert::cell_to_node;
use crate::error::{check_len, Error, Result};
use crate::state::{guarded_velocity, CellState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeSample {
    pub t: f64,
    pub h: f64,
    pub u: f64,
    pub zeta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaugeRecord {
    pub position: f64,
    pub samples: Vec<GaugeSample>,
}

/// Receives output as the run progresses. All methods default to no-ops.
pub trait OutputSink {
    fn snapshot(&mut self, _sim: &Simulation) -> Result<()> {
        Ok(())
    }
    fn gauges(&mut self, _t: f64, _samples: &[GaugeSample]) -> Result<()> {
        Ok(())
    }
    fn summary(&mut self, _t: f64, _mass: f64, _energy: f64) -> Result<()> {
        Ok(())
    }
}

pub struct NullSink;

impl OutputSink for NullSink {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub t_end: f64,
    pub snapshot_interval: Option<f64>,
    pub gauges: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Simulation {
    bathy: Bathymetry,
    cfg: SolverConfig,
    state: CellState,
    time: f64,
    steps: usize,
    mask: BreakingMask,
    clamped: f64,
    policy: MaskPolicy,
}

impl Simulation {
    /// Depths below the dry threshold in `initial` are clamped up front.
    pub fn new(bathy: Bathymetry, cfg: SolverConfig, initial: CellState) -> Result<Self> {
        cfg.validate()?;
        initial.validate()?;
        if cfg.bc != bathy.bc {
            return Err(Error::Config("bathymetry was built for different boundaries".into()));
        }
        check_len("initial state", bathy.n_cells(), initial.len())?;
        let mut state = initial;
        let clamped = clamp_dry(&mut state, cfg.eps_dry);
        let n = bathy.n_cells();
        Ok(Self {
            bathy,
            cfg,
            state,
            time: 0.0,
            steps: 0,
            mask: BreakingMask::empty(n),
            clamped,
            policy: MaskPolicy::Detect,
        })
    }

    pub fn with_mask_policy(mut self, policy: MaskPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn state(&self) -> &CellState {
        &self.state
    }

    pub fn bathymetry(&self) -> &Bathymetry {
        &self.bathy
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Mask used by the most recent step.
    pub fn mask(&self) -> &BreakingMask {
        &self.mask
    }

    /// Total depth added by dry clamping since construction, summed over cells.
    pub fn clamped_depth(&self) -> f64 {
        self.clamped
    }

    pub fn mass(&self) -> f64 {
        self.state.mass(self.bathy.dx())
    }

    pub fn energy(&self) -> f64 {
        energy_fields(&self.state, &self.bathy, &self.cfg).energy.iter().sum::<f64>() * self.bathy.dx()
    }

    pub fn next_dt(&self) -> Result<f64> {
        cfl_dt(&self.state, &self.cfg, self.bathy.dx())
    }

    pub fn step(&mut self, dt: f64) -> Result<()> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Config(format!("time step must be positive, got {dt}")));
        }
        let out = strang_step_with(&self.state, dt, &self.bathy, &self.cfg, &self.policy)?;
        self.time += dt;
        self.steps += 1;
        let hmax = out.state.h.iter().cloned().fold(0.0, f64::max);
        let umax = max_speed(&out.state, self.cfg.eps_dry);
        if umax > 100.0 * (self.cfg.g * hmax).sqrt() {
            return Err(Error::Unstable {
                time: self.time,
                max_speed: umax,
            });
        }
        self.state = out.state;
        self.mask = out.mask;
        self.clamped += out.clamped;
        Ok(())
    }

    /// Steps until `t_end`, shortening the last step to land on it exactly.
    pub fn advance_to(&mut self, t_end: f64) -> Result<()> {
        while let Some(dt) = self.step_towards(t_end)? {
            let landing = dt >= t_end - self.time;
            self.step(dt)?;
            if landing {
                self.time = t_end;
            }
        }
        Ok(())
    }

    fn step_towards(&self, target: f64) -> Result<Option<f64>> {
        let remaining = target - self.time;
        if remaining <= 1e-12 * target.abs().max(1.0) {
            return Ok(None);
        }
        let dt = self.next_dt()?;
        Ok(Some(if dt >= remaining * (1.0 - 1e-10) { remaining } else { dt }))
    }

    /// Nodal depth, velocity and surface at `x`, linearly interpolated.
    pub fn sample(&self, positions: &[f64]) -> Result<Vec<GaugeSample>> {
        let grid = self.bathy.grid;
        let bc = self.cfg.bc;
        let h = cell_to_node(&self.state.h, bc, Parity::Even)?;
        let q = cell_to_node(&self.state.q, bc, Parity::Odd)?;
        positions
            .iter()
            .map(|&x| {
                let s = (x - grid.x0()) / grid.dx();
                if !(0.0..=grid.n_cells() as f64).contains(&s) {
                    return Err(Error::Config(format!("gauge at {x} lies outside the domain")));
                }
                let i = (s.floor() as usize).min(grid.n_cells() - 1);
                let w = s - i as f64;
                let lerp = |f: &[f64]| (1.0 - w) * f[i] + w * f[i + 1];
                let hx = lerp(&h).max(0.0);
                let b = lerp(&self.bathy.b_node);
                Ok(GaugeSample {
                    t: self.time,
                    h: hx,
                    u: guarded_velocity(hx, lerp(&q), self.cfg.eps_dry),
                    zeta: hx + b - self.bathy.h0,
                })
            })
            .collect()
    }
}

/// Runs to `settings.t_end`, recording gauges every step and snapshots at the
/// requested interval (steps are shortened to land on snapshot times).
pub fn run_simulation(sim: &mut Simulation, settings: &RunSettings, sink: &mut dyn OutputSink) -> Result<Vec<GaugeRecord>> {
    let mut records: Vec<GaugeRecord> = settings
        .gauges
        .iter()
        .map(|&position| GaugeRecord {
            position,
            samples: Vec::new(),
        })
        .collect();
    let record = |sim: &Simulation, sink: &mut dyn OutputSink, records: &mut Vec<GaugeRecord>| -> Result<()> {
        let samples = sim.sample(&settings.gauges)?;
        for (r, s) in records.iter_mut().zip(&samples) {
            r.samples.push(*s);
        }
        sink.gauges(sim.time(), &samples)?;
        sink.summary(sim.time(), sim.mass(), sim.energy())
    };
    record(sim, sink, &mut records)?;
    sink.snapshot(sim)?;
    let mut last_snapshot = sim.time();
    let interval = settings.snapshot_interval.filter(|v| *v > 0.0);
    let mut next_snapshot = interval.map(|i| sim.time() + i);
    loop {
        let target = match next_snapshot {
            Some(t) if t < settings.t_end => t,
            _ => settings.t_end,
        };
        let Some(dt) = sim.step_towards(target)? else {
            if target >= settings.t_end {
                break;
            }
            sink.snapshot(sim)?;
            last_snapshot = sim.time();
            next_snapshot = next_snapshot.zip(interval).map(|(t, i)| t + i);
            continue;
        };
        let landing = dt >= target - sim.time();
        sim.step(dt)?;
        if landing {
            sim.time = target;
        }
        record(sim, sink, &mut records)?;
    }
    if sim.time() != last_snapshot {
        sink.snapshot(sim)?;
    }
    Ok(records)
}
