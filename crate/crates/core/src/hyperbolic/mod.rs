//! Finite-volume right-hand side of the shallow-water part.

pub mod flux;
pub mod reconstruct;

pub use flux::{numerical_flux, physical_flux};
pub use reconstruct::{cell_faces, limiter, reconstruct, to_interfaces, CellFaces, InterfaceValues};

use crate::bathymetry::Bathymetry;
use crate::boundary::Parity;
use crate::config::SolverConfig;
use crate::error::{check_finite, check_len, Error, Result};
use crate::state::{transport_velocity, CellState};

/// Reconstructed depth, discharge and free surface on both sides of every interface.
#[derive(Debug, Clone)]
pub struct InterfaceStates {
    pub h: InterfaceValues,
    pub q: InterfaceValues,
    pub zeta: InterfaceValues,
}

/// Cells at or below the dry threshold are treated as empty by the flux.
pub fn effective_depths(state: &CellState, eps_dry: f64) -> (Vec<f64>, Vec<f64>, Vec<bool>) {
    let dry: Vec<bool> = state.h.iter().map(|&h| h <= eps_dry).collect();
    let h = state.h.iter().zip(&dry).map(|(&h, &d)| if d { 0.0 } else { h }).collect();
    let q = state.q.iter().zip(&dry).map(|(&q, &d)| if d { 0.0 } else { q }).collect();
    (h, q, dry)
}

/// Cells whose reconstruction stencil reaches a dry cell.
fn near_dry(dry: &[bool], periodic: bool) -> Vec<bool> {
    let n = dry.len() as isize;
    (0..n)
        .map(|c| {
            (c - 2..=c + 2).any(|j| {
                let j = if periodic { j.rem_euclid(n) } else { j.clamp(0, n - 1) };
                dry[j as usize]
            })
        })
        .collect()
}

pub fn interface_states(state: &CellState, bathy: &Bathymetry, cfg: &SolverConfig) -> Result<InterfaceStates> {
    let bc = cfg.bc;
    let (h, q, dry) = effective_depths(state, cfg.eps_dry);
    let zeta: Vec<f64> = h.iter().zip(&bathy.b_cell).map(|(h, b)| h + b - bathy.h0).collect();
    let near_dry = near_dry(&dry, bc.is_periodic());
    let flat = Some(near_dry.as_slice());
    Ok(InterfaceStates {
        h: to_interfaces(&cell_faces(&h, bc, Parity::Even, flat)?, bc, Parity::Even),
        q: to_interfaces(&cell_faces(&q, bc, Parity::Odd, flat)?, bc, Parity::Odd),
        zeta: to_interfaces(&cell_faces(&zeta, bc, Parity::Even, flat)?, bc, Parity::Even),
    })
}

/// Time derivative of the cell averages under the shallow-water equations,
/// with hydrostatic reconstruction of the topography.
pub fn nswe_rhs(state: &CellState, bathy: &Bathymetry, cfg: &SolverConfig) -> Result<CellState> {
    let n = bathy.n_cells();
    check_len("cell depth", n, state.h.len())?;
    check_len("cell discharge", n, state.q.len())?;
    check_finite("cell depth", &state.h)?;
    check_finite("cell discharge", &state.q)?;
    let g = cfg.g;
    let h0 = bathy.h0;
    let eps = cfg.eps_dry;
    let s = interface_states(state, bathy, cfg)?;

    // per interface: flux on starred states and the two pressure corrections
    let mut mass = vec![0.0; n + 1];
    let mut mom_minus = vec![0.0; n + 1];
    let mut mom_plus = vec![0.0; n + 1];
    for j in 0..=n {
        let (hm, hp) = (s.h.minus[j], s.h.plus[j]);
        let (zm, zp) = (s.zeta.minus[j], s.zeta.plus[j]);
        let bm = zm - hm + h0;
        let bp = zp - hp + h0;
        let b_star = bm.max(bp);
        let hm_star = (zm + h0 - b_star).max(0.0).min(hm);
        let hp_star = (zp + h0 - b_star).max(0.0).min(hp);
        let um = transport_velocity(hm, s.q.minus[j], eps);
        let up = transport_velocity(hp, s.q.plus[j], eps);
        let f = numerical_flux([hm_star, hm_star * um], [hp_star, hp_star * up], g)?;
        mass[j] = f[0];
        mom_minus[j] = f[1] + 0.5 * g * (hm * hm - hm_star * hm_star);
        mom_plus[j] = f[1] + 0.5 * g * (hp * hp - hp_star * hp_star);
    }

    let dx = bathy.dx();
    let mut dh = vec![0.0; n];
    let mut dq = vec![0.0; n];
    for c in 0..n {
        let (hl, hr) = (s.h.plus[c], s.h.minus[c + 1]);
        let (zl, zr) = (s.zeta.plus[c], s.zeta.minus[c + 1]);
        let mean = 0.5 * (hl + hr);
        let source = g * mean * (hr - hl) - g * mean * (zr - zl);
        dh[c] = -(mass[c + 1] - mass[c]) / dx;
        dq[c] = (-(mom_minus[c + 1] - mom_plus[c]) + source) / dx;
    }
    if let Some(index) = dh.iter().chain(&dq).position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: "shallow-water right-hand side",
            index: index % n,
        });
    }
    Ok(CellState { h: dh, q: dq })
}
