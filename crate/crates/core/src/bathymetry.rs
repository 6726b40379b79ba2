use crate::boundary::{Boundaries, Parity};
use crate::convert::node_to_cell;
use crate::dispersive::stencil::fd_derivative;
use crate::error::{check_finite, check_len, Error, Result};
use crate::grid::Grid;

/// Bottom elevation measured upward from `−h0`, so the still-water depth is `h0 − b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bathymetry {
    pub grid: Grid,
    pub bc: Boundaries,
    pub h0: f64,
    pub b_node: Vec<f64>,
    pub b_cell: Vec<f64>,
    pub db: Vec<f64>,
    pub d2b: Vec<f64>,
    pub d3b: Vec<f64>,
}

impl Bathymetry {
    pub fn from_nodes(grid: &Grid, h0: f64, b_node: Vec<f64>, bc: Boundaries) -> Result<Self> {
        if !(h0 > 0.0 && h0.is_finite()) {
            return Err(Error::Config(format!("reference depth must be positive, got {h0}")));
        }
        check_len("bathymetry nodes", grid.n_nodes(), b_node.len())?;
        check_finite("bathymetry", &b_node)?;
        let dx = grid.dx();
        let b_cell = node_to_cell(&b_node, bc, Parity::Even)?;
        let db = fd_derivative(&b_node, 1, dx, bc, Parity::Even)?;
        let d2b = fd_derivative(&b_node, 2, dx, bc, Parity::Even)?;
        let d3b = fd_derivative(&b_node, 3, dx, bc, Parity::Even)?;
        Ok(Self {
            grid: *grid,
            bc,
            h0,
            b_node,
            b_cell,
            db,
            d2b,
            d3b,
        })
    }

    pub fn flat(grid: &Grid, h0: f64, bc: Boundaries) -> Result<Self> {
        Self::from_nodes(grid, h0, vec![0.0; grid.n_nodes()], bc)
    }

    pub fn from_fn(grid: &Grid, h0: f64, bc: Boundaries, b: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_nodes(grid, h0, grid.nodes().into_iter().map(b).collect(), bc)
    }

    pub fn n_cells(&self) -> usize {
        self.grid.n_cells()
    }

    pub fn dx(&self) -> f64 {
        self.grid.dx()
    }

    /// Free-surface elevation of a cell given its depth.
    pub fn zeta_cell(&self, c: usize, h: f64) -> f64 {
        h + self.b_cell[c] - self.h0
    }
}
