//! Finite-difference right-hand side of the dispersive part.

pub mod elliptic;
pub mod operators;
pub mod stencil;

pub use elliptic::{assemble_elliptic, solve_elliptic, EllipticFactorization};
pub use operators::{apply_t, eval_q1, FrozenDepth};
pub use stencil::fd_derivative;

use crate::bathymetry::Bathymetry;
use crate::boundary::Parity;
use crate::config::SolverConfig;
use crate::error::{check_len, Error, Result};
use crate::state::NodalState;

/// Replaces the surface of non-wet entries with that of the nearest wet entry,
/// so that stencils straddling a shoreline see a continued free surface.
/// `land` is the surface of an entry with zero depth; the continued surface is
/// only used where it stays below it, so dry beds lower than nearby water keep
/// their own (empty) surface.
pub fn extend_surface(zeta: &mut [f64], wet: &[bool], land: &[f64]) {
    let n = zeta.len();
    let mut nearest: Vec<Option<(usize, f64)>> = vec![None; n];
    let mut last: Option<(usize, f64)> = None;
    for i in 0..n {
        if wet[i] {
            last = Some((i, zeta[i]));
        }
        nearest[i] = last;
    }
    last = None;
    for i in (0..n).rev() {
        if wet[i] {
            last = Some((i, zeta[i]));
            continue;
        }
        let pick = match (nearest[i], last) {
            (Some((l, zl)), Some((r, zr))) => Some(if i - l <= r - i { zl } else { zr }),
            (Some((_, z)), None) | (None, Some((_, z))) => Some(z),
            (None, None) => None,
        };
        if let Some(z) = pick.filter(|&z| z <= land[i]) {
            zeta[i] = z;
        }
    }
}

/// `∂t q` of the dispersive part at every node. Nodes flagged in `mask`, and
/// dry nodes, only feel friction.
pub fn dispersive_rhs(
    state: &NodalState,
    bathy: &Bathymetry,
    fact: &EllipticFactorization,
    cfg: &SolverConfig,
    mask: &[bool],
) -> Result<Vec<f64>> {
    let n = state.h.len();
    check_len("breaking mask", n, mask.len())?;
    if !fact.is_current(&state.h, cfg.alpha) {
        return Err(Error::StaleFactorization);
    }
    let wet = fact.wet();
    let mut zeta: Vec<f64> = state.h.iter().zip(&bathy.b_node).map(|(h, b)| h + b - bathy.h0).collect();
    let land: Vec<f64> = bathy.b_node.iter().map(|b| b - bathy.h0).collect();
    extend_surface(&mut zeta, wet, &land);
    let depth = FrozenDepth::with_surface(&state.h, &zeta, bathy)?;
    let wet = wet.to_vec();
    dispersive_rhs_frozen(&depth, &state.q, bathy, fact, cfg, &wet, mask)
}

pub(crate) fn dispersive_rhs_frozen(
    depth: &FrozenDepth,
    q: &[f64],
    bathy: &Bathymetry,
    fact: &EllipticFactorization,
    cfg: &SolverConfig,
    wet: &[bool],
    mask: &[bool],
) -> Result<Vec<f64>> {
    let active = fact.wet();
    let u: Vec<f64> = depth
        .h
        .iter()
        .zip(q)
        .zip(wet)
        .map(|((h, q), w)| if *w { q / h } else { 0.0 })
        .collect();
    let q1 = eval_q1(depth, bathy, &u, Parity::Odd)?;
    let inv_alpha = 1.0 / cfg.alpha;
    let gravity: Vec<f64> = (0..u.len())
        .map(|i| {
            if active[i] {
                inv_alpha * cfg.g * depth.h[i] * depth.dzeta[i]
            } else {
                0.0
            }
        })
        .collect();
    let rhs: Vec<f64> = (0..u.len())
        .map(|i| if active[i] { gravity[i] + depth.h[i] * q1[i] } else { 0.0 })
        .collect();
    let z = solve_elliptic(fact, &depth.h, cfg.alpha, &rhs)?;
    let out: Vec<f64> = (0..u.len())
        .map(|i| {
            let friction = -cfg.friction * u[i] * u[i].abs();
            if active[i] && !mask[i] {
                gravity[i] - z[i] + friction
            } else {
                friction
            }
        })
        .collect();
    if let Some(index) = out.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: "dispersive right-hand side",
            index,
        });
    }
    Ok(out)
}
