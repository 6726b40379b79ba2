//! Refinement study on the periodic solitary wave.

use super::solitary::SolitaryWaveParams;
use crate::bathymetry::Bathymetry;
use crate::boundary::Boundaries;
use crate::config::{SolverConfig, TimeStepPolicy};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::norms::{linf_rel_error, velocity_scale};
use crate::timeloop::Simulation;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceCase {
    pub h0: f64,
    pub amplitude: f64,
    pub length: f64,
    pub t_end: f64,
    /// Cell size of the coarsest level; each further level halves it.
    pub coarse_dx: f64,
    pub levels: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub dx: f64,
    pub dt: f64,
    pub n_cells: usize,
    pub max_e_zeta: f64,
    pub max_e_u: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of log max E_ζ against log dt.
    pub slope_zeta: f64,
    pub slope_u: f64,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// One level: runs at `dt = dx / √(g h0)` and tracks the largest relative
/// errors in depth and velocity over all step times.
pub fn run_level(base: &SolverConfig, case: &ConvergenceCase, level: usize) -> Result<ConvergenceRow> {
    let n_cells = ((case.length / case.coarse_dx).round() as usize) << level;
    let grid = Grid::with_length(0.0, case.length, n_cells)?;
    let dx = grid.dx();
    let dt = dx / (base.g * case.h0).sqrt();
    let bc = Boundaries::periodic();
    let mut cfg = base.clone();
    cfg.bc = bc;
    cfg.h0 = case.h0;
    cfg.time_step = TimeStepPolicy::Fixed(dt);
    let wave = SolitaryWaveParams {
        h0: case.h0,
        amplitude: case.amplitude,
        x_center: 0.5 * case.length,
        direction: 1.0,
        g: cfg.g,
    };
    wave.validate()?;
    let bathy = Bathymetry::flat(&grid, case.h0, bc)?;
    let mut sim = Simulation::new(bathy, cfg.clone(), wave.cell_state(&grid, 0.0, true))?;
    let (mut e_zeta, mut e_u) = (0.0f64, 0.0f64);
    loop {
        let exact = wave.cell_state(&grid, sim.time(), true);
        let excess: Vec<f64> = exact.h.iter().map(|h| h - case.h0).collect();
        e_zeta = e_zeta.max(linf_rel_error(&sim.state().h, &exact.h, &excess)?);
        let u_ref = exact.velocity(cfg.eps_dry);
        let u_num = sim.state().velocity(cfg.eps_dry);
        let scale = [velocity_scale(&u_ref, cfg.g, case.h0)];
        e_u = e_u.max(linf_rel_error(&u_num, &u_ref, &scale)?);
        let remaining = case.t_end - sim.time();
        if remaining <= 1e-9 * dt {
            break;
        }
        let step = if dt >= remaining * (1.0 - 1e-10) { remaining } else { dt };
        sim.step(step)?;
    }
    Ok(ConvergenceRow {
        dx,
        dt,
        n_cells,
        max_e_zeta: e_zeta,
        max_e_u: e_u,
    })
}

/// Runs every level concurrently and fits the convergence slopes.
pub fn convergence_study(base: &SolverConfig, case: &ConvergenceCase) -> Result<ConvergenceTable> {
    if case.levels < 2 {
        return Err(Error::Config("a convergence study needs at least two levels".into()));
    }
    let rows: Vec<Result<ConvergenceRow>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..case.levels)
            .map(|level| s.spawn(move || run_level(base, case, level)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Config("convergence level panicked".into()))))
            .collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let dts: Vec<f64> = rows.iter().map(|r| r.dt).collect();
    let ez: Vec<f64> = rows.iter().map(|r| r.max_e_zeta).collect();
    let eu: Vec<f64> = rows.iter().map(|r| r.max_e_u).collect();
    Ok(ConvergenceTable {
        slope_zeta: loglog_slope(&dts, &ez),
        slope_u: loglog_slope(&dts, &eu),
        rows,
    })
}
