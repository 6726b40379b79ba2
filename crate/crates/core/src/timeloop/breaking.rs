//! Energy-dissipation based detection of breaking fronts.

use crate::bathymetry::Bathymetry;
use crate::boundary::{apply_bc_cells, Parity};
use crate::config::SolverConfig;
use crate::error::Result;
use crate::state::{guarded_velocity, CellState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakingMask {
    pub cells: Vec<bool>,
    /// Dispersion is switched off on flagged nodes.
    pub nodes: Vec<bool>,
}

impl BreakingMask {
    pub fn empty(n_cells: usize) -> Self {
        Self {
            cells: vec![false; n_cells],
            nodes: vec![false; n_cells + 1],
        }
    }

    /// Every cell and node flagged: the step reduces to the shallow-water equations.
    pub fn all(n_cells: usize) -> Self {
        Self {
            cells: vec![true; n_cells],
            nodes: vec![true; n_cells + 1],
        }
    }

    /// Flags the nodes touching a flagged cell and dilates them by `halo` nodes.
    pub fn from_cells(cells: Vec<bool>, halo: usize, periodic: bool) -> Self {
        let n = cells.len();
        let mut touched = vec![false; n + 1];
        for (c, &f) in cells.iter().enumerate() {
            if f {
                touched[c] = true;
                touched[c + 1] = true;
            }
        }
        if periodic && (touched[0] || touched[n]) {
            touched[0] = true;
            touched[n] = true;
        }
        let mut nodes = touched.clone();
        for (i, &t) in touched.iter().enumerate() {
            if !t {
                continue;
            }
            for d in 1..=halo as isize {
                for j in [i as isize - d, i as isize + d] {
                    if (0..=n as isize).contains(&j) {
                        nodes[j as usize] = true;
                    } else if periodic {
                        let w = j.rem_euclid(n as isize) as usize;
                        nodes[w] = true;
                        if w == 0 {
                            nodes[n] = true;
                        }
                    }
                }
            }
        }
        Self { cells, nodes }
    }

    pub fn flagged_cells(&self) -> usize {
        self.cells.iter().filter(|&&f| f).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&f| f)
    }
}

/// Cell energy density `ρ/2 (h u² + g ζ²)` and energy flux `ρ h u (u²/2 + g ζ)`.
#[derive(Debug, Clone)]
pub struct EnergyFields {
    pub energy: Vec<f64>,
    pub flux: Vec<f64>,
}

pub fn energy_fields(state: &CellState, bathy: &Bathymetry, cfg: &SolverConfig) -> EnergyFields {
    let (rho, g) = (cfg.rho, cfg.g);
    let mut energy = Vec::with_capacity(state.len());
    let mut flux = Vec::with_capacity(state.len());
    for c in 0..state.len() {
        let h = state.h[c];
        let u = guarded_velocity(h, state.q[c], cfg.eps_dry);
        let zeta = bathy.zeta_cell(c, h);
        energy.push(0.5 * rho * (h * u * u + g * zeta * zeta));
        flux.push(rho * h * u * (0.5 * u * u + g * zeta));
    }
    EnergyFields { energy, flux }
}

/// Local dissipation `−(∂t E + ∂x F)` estimated over a predictor half step.
pub fn dissipation(before: &CellState, after: &CellState, dt_half: f64, bathy: &Bathymetry, cfg: &SolverConfig) -> Result<Vec<f64>> {
    let e0 = energy_fields(before, bathy, cfg);
    let e1 = energy_fields(after, bathy, cfg);
    let flux = apply_bc_cells(&e1.flux, cfg.bc, 1, Parity::Odd)?;
    let dx = bathy.dx();
    Ok((0..before.len())
        .map(|c| -((e1.energy[c] - e0.energy[c]) / dt_half + (flux[c + 2] - flux[c]) / (2.0 * dx)))
        .collect())
}

pub fn detect_breaking(
    before: &CellState,
    after: &CellState,
    dt_half: f64,
    bathy: &Bathymetry,
    cfg: &SolverConfig,
) -> Result<BreakingMask> {
    let d = dissipation(before, after, dt_half, bathy, cfg)?;
    let peak = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let cells: Vec<bool> = if peak > cfg.breaking_floor {
        d.iter().map(|&v| v > cfg.breaking_theta * peak).collect()
    } else {
        vec![false; d.len()]
    };
    Ok(BreakingMask::from_cells(cells, cfg.breaking_halo, cfg.bc.is_periodic()))
}
