//! The second-order operator T and the quadratic velocity term Q1.

use super::stencil::fd_derivative;
use crate::bathymetry::Bathymetry;
use crate::boundary::Parity;
use crate::error::{check_len, Result};

/// Depth-dependent coefficients frozen for the duration of a dispersive step.
#[derive(Debug, Clone)]
pub struct FrozenDepth {
    pub h: Vec<f64>,
    pub dh: Vec<f64>,
    pub dzeta: Vec<f64>,
}

impl FrozenDepth {
    /// Uses `zeta = h + b − h0` for the surface slope.
    pub fn new(h: &[f64], bathy: &Bathymetry) -> Result<Self> {
        let zeta: Vec<f64> = h.iter().zip(&bathy.b_node).map(|(h, b)| h + b - bathy.h0).collect();
        Self::with_surface(h, &zeta, bathy)
    }

    /// Uses a separately supplied nodal surface, e.g. one extended over dry nodes.
    pub fn with_surface(h: &[f64], zeta: &[f64], bathy: &Bathymetry) -> Result<Self> {
        check_len("nodal depth", bathy.b_node.len(), h.len())?;
        check_len("nodal surface", h.len(), zeta.len())?;
        let (dx, bc) = (bathy.dx(), bathy.bc);
        Ok(Self {
            h: h.to_vec(),
            dh: fd_derivative(h, 1, dx, bc, Parity::Even)?,
            dzeta: fd_derivative(zeta, 1, dx, bc, Parity::Even)?,
        })
    }
}

/// `T w = −(h²/3) w'' − h h' w' + (ζ' b' + h b''/2) w`.
pub fn apply_t(depth: &FrozenDepth, bathy: &Bathymetry, w: &[f64], parity: Parity) -> Result<Vec<f64>> {
    check_len("operand", depth.h.len(), w.len())?;
    let (dx, bc) = (bathy.dx(), bathy.bc);
    let dw = fd_derivative(w, 1, dx, bc, parity)?;
    let d2w = fd_derivative(w, 2, dx, bc, parity)?;
    Ok((0..w.len())
        .map(|i| {
            let h = depth.h[i];
            -h * h / 3.0 * d2w[i] - h * depth.dh[i] * dw[i] + (depth.dzeta[i] * bathy.db[i] + 0.5 * h * bathy.d2b[i]) * w[i]
        })
        .collect())
}

/// `Q1(u) = 2h (h + b/2)' (u')² + (4/3) h² u' u'' + h b'' u u' + (ζ' b'' + h b'''/2) u²`.
pub fn eval_q1(depth: &FrozenDepth, bathy: &Bathymetry, u: &[f64], parity: Parity) -> Result<Vec<f64>> {
    check_len("velocity", depth.h.len(), u.len())?;
    let (dx, bc) = (bathy.dx(), bathy.bc);
    let du = fd_derivative(u, 1, dx, bc, parity)?;
    let d2u = fd_derivative(u, 2, dx, bc, parity)?;
    Ok((0..u.len())
        .map(|i| {
            let h = depth.h[i];
            let slope = depth.dh[i] + 0.5 * bathy.db[i];
            2.0 * h * slope * du[i] * du[i]
                + 4.0 / 3.0 * h * h * du[i] * d2u[i]
                + h * bathy.d2b[i] * u[i] * du[i]
                + (depth.dzeta[i] * bathy.d2b[i] + 0.5 * h * bathy.d3b[i]) * u[i] * u[i]
        })
        .collect())
}
