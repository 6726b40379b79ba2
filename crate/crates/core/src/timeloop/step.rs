//! One Strang step: shallow water for half a step, dispersion for a full
//! step, shallow water for the remaining half.

use super::breaking::{detect_breaking, BreakingMask};
use super::rk4::rk4;
use crate::bathymetry::Bathymetry;
use crate::boundary::Parity;
use crate::config::{SolverConfig, TimeStepPolicy};
use crate::convert::{cell_to_node, node_to_cell};
use crate::dispersive::elliptic::assemble_with;
use crate::dispersive::{dispersive_rhs_frozen, extend_surface, FrozenDepth};
use crate::error::{Error, Result};
use crate::hyperbolic::nswe_rhs;
use crate::state::{transport_velocity, CellState, THIN_LAYER_FACTOR};

/// Raises depths below `eps_dry` to `eps_dry` and stops the water there.
/// Returns the total depth added.
pub fn clamp_dry(state: &mut CellState, eps_dry: f64) -> f64 {
    clamp_dry_fields(&mut state.h, &mut state.q, eps_dry)
}

pub fn clamp_dry_fields(h: &mut [f64], q: &mut [f64], eps_dry: f64) -> f64 {
    let mut added = 0.0;
    for (h, q) in h.iter_mut().zip(q.iter_mut()) {
        if *h < eps_dry {
            added += eps_dry - *h;
            *h = eps_dry;
            *q = 0.0;
        }
    }
    added
}

/// Replaces the discharge of very thin cells by the one their transport
/// velocity implies, so momentum cannot pile up where no water is.
pub fn damp_thin_layers(state: &mut CellState, eps_dry: f64) {
    let thin = THIN_LAYER_FACTOR * eps_dry;
    for (h, q) in state.h.iter().zip(state.q.iter_mut()) {
        if *h < thin {
            *q = h * transport_velocity(*h, *q, eps_dry);
        }
    }
}

/// Step size under the configured policy; fixed steps are returned as is.
pub fn cfl_dt(state: &CellState, cfg: &SolverConfig, dx: f64) -> Result<f64> {
    match cfg.time_step {
        TimeStepPolicy::Cfl(cfl) => courant_dt(state, cfg, dx, cfl),
        TimeStepPolicy::Fixed(dt) => Ok(dt),
    }
}

/// `cfl · dx / max(|u| + √(g h))` over wet cells.
pub fn courant_dt(state: &CellState, cfg: &SolverConfig, dx: f64, cfl: f64) -> Result<f64> {
    let speed = state
        .h
        .iter()
        .zip(&state.q)
        .filter(|(&h, _)| h > cfg.eps_dry)
        .map(|(&h, &q)| transport_velocity(h, q, cfg.eps_dry).abs() + (cfg.g * h).sqrt())
        .fold(f64::NEG_INFINITY, f64::max);
    if speed == f64::NEG_INFINITY {
        return Err(Error::Config("no wet cell to base the time step on".into()));
    }
    Ok(cfl * dx / speed)
}

/// RK4 integration of the shallow-water part.
pub fn shallow_water_step(state: &CellState, dt: f64, bathy: &Bathymetry, cfg: &SolverConfig) -> Result<CellState> {
    rk4(|s: &CellState| nswe_rhs(s, bathy, cfg), state, dt)
}

/// RK4 integration of the dispersive part with frozen depth. Only the
/// discharge changes; its nodal increment is mapped back to cell averages.
pub fn dispersive_step(state: &CellState, dt: f64, bathy: &Bathymetry, cfg: &SolverConfig, node_mask: &[bool]) -> Result<CellState> {
    let bc = cfg.bc;
    let h0 = bathy.h0;
    let wet_cells: Vec<bool> = state.h.iter().map(|&h| h > cfg.eps_dry).collect();
    if !wet_cells.iter().any(|&w| w) {
        return Ok(state.clone());
    }
    let mut zeta_cells: Vec<f64> = (0..state.len()).map(|c| bathy.zeta_cell(c, state.h[c])).collect();
    let land_cells: Vec<f64> = bathy.b_cell.iter().map(|b| b - h0).collect();
    extend_surface(&mut zeta_cells, &wet_cells, &land_cells);
    let zeta_nodes = cell_to_node(&zeta_cells, bc, Parity::Even)?;
    let h_nodes: Vec<f64> = zeta_nodes.iter().zip(&bathy.b_node).map(|(z, b)| (z + h0 - b).max(0.0)).collect();
    let q_cells: Vec<f64> = state.q.iter().zip(&wet_cells).map(|(&q, &w)| if w { q } else { 0.0 }).collect();
    let q_nodes = cell_to_node(&q_cells, bc, Parity::Odd)?;

    // dry nodes keep the extended surface so the slope is continued across shorelines
    let mut zeta = zeta_nodes;
    let thin = THIN_LAYER_FACTOR * cfg.eps_dry;
    let wet_nodes: Vec<bool> = h_nodes.iter().map(|&h| h > thin).collect();
    let land_nodes: Vec<f64> = bathy.b_node.iter().map(|b| b - h0).collect();
    extend_surface(&mut zeta, &wet_nodes, &land_nodes);
    let depth = FrozenDepth::with_surface(&h_nodes, &zeta, bathy)?;
    // flagged nodes drop out of the system so a breaking front cannot drive the water around it
    let active: Vec<bool> = wet_nodes.iter().zip(node_mask).map(|(&w, &m)| w && !m).collect();
    let fact = assemble_with(&depth, bathy, cfg.alpha, &active)?;
    let q_new = rk4(
        |q: &Vec<f64>| dispersive_rhs_frozen(&depth, q, bathy, &fact, cfg, &wet_nodes, node_mask),
        &q_nodes,
        dt,
    )?;
    let dq: Vec<f64> = q_new.iter().zip(&q_nodes).map(|(a, b)| a - b).collect();
    let dq_cells = node_to_cell(&dq, bc, Parity::Odd)?;
    let q = state
        .q
        .iter()
        .zip(&state.h)
        .zip(&dq_cells)
        .map(|((q, h), d)| if *h > thin { q + d } else { *q })
        .collect();
    Ok(CellState { h: state.h.clone(), q })
}

/// How the dispersive part is switched off near breaking fronts.
#[derive(Debug, Clone)]
pub enum MaskPolicy {
    /// Detect breaking from the energy dissipation of the first half step.
    Detect,
    /// Use the given mask regardless of the flow.
    Fixed(BreakingMask),
}

#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub state: CellState,
    pub mask: BreakingMask,
    /// Depth added by dry clamping, summed over cells.
    pub clamped: f64,
}

pub fn strang_step(state: &CellState, dt: f64, bathy: &Bathymetry, cfg: &SolverConfig) -> Result<(CellState, BreakingMask)> {
    let out = strang_step_with(state, dt, bathy, cfg, &MaskPolicy::Detect)?;
    Ok((out.state, out.mask))
}

pub fn strang_step_with(state: &CellState, dt: f64, bathy: &Bathymetry, cfg: &SolverConfig, policy: &MaskPolicy) -> Result<StepOutcome> {
    let half = 0.5 * dt;
    let predicted = shallow_water_step(state, half, bathy, cfg)?;
    let mask = match policy {
        MaskPolicy::Detect => detect_breaking(state, &predicted, half, bathy, cfg)?,
        MaskPolicy::Fixed(m) => m.clone(),
    };
    let dispersed = dispersive_step(&predicted, dt, bathy, cfg, &mask.nodes)?;
    let mut next = shallow_water_step(&dispersed, half, bathy, cfg)?;
    let clamped = clamp_dry(&mut next, cfg.eps_dry);
    damp_thin_layers(&mut next, cfg.eps_dry);
    Ok(StepOutcome {
        state: next,
        mask,
        clamped,
    })
}

/// Largest transport speed `|u|` over wet cells.
pub fn max_speed(state: &CellState, eps_dry: f64) -> f64 {
    state
        .h
        .iter()
        .zip(&state.q)
        .map(|(&h, &q)| transport_velocity(h, q, eps_dry).abs())
        .fold(0.0, f64::max)
}
