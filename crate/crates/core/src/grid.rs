use crate::error::{Error, Result};

/// Uniform 1D mesh. Cells are numbered `0..n_cells`, nodes `0..=n_cells`;
/// cell `c` spans nodes `c` and `c + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n_cells: usize,
    x0: f64,
    dx: f64,
}

/// Smallest mesh the seven-point stencils can live on.
pub const MIN_CELLS: usize = 7;

impl Grid {
    pub fn new(x0: f64, dx: f64, n_cells: usize) -> Result<Self> {
        if n_cells < MIN_CELLS {
            return Err(Error::Config(format!("need at least {MIN_CELLS} cells, got {n_cells}")));
        }
        if !(dx > 0.0 && dx.is_finite()) || !x0.is_finite() {
            return Err(Error::Config(format!("bad mesh spacing {dx} / origin {x0}")));
        }
        Ok(Self { n_cells, x0, dx })
    }

    pub fn with_length(x0: f64, length: f64, n_cells: usize) -> Result<Self> {
        Self::new(x0, length / n_cells as f64, n_cells)
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn n_nodes(&self) -> usize {
        self.n_cells + 1
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn length(&self) -> f64 {
        self.dx * self.n_cells as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn center(&self, c: usize) -> f64 {
        self.x0 + (c as f64 + 0.5) * self.dx
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_nodes()).map(|i| self.node(i)).collect()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|c| self.center(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions() {
        let g = Grid::with_length(-1.0, 2.0, 10).unwrap();
        assert_eq!(g.n_nodes(), 11);
        assert!((g.dx() - 0.2).abs() < 1e-15);
        assert!((g.node(10) - 1.0).abs() < 1e-14);
        assert!((g.center(0) + 0.9).abs() < 1e-14);
    }

    #[test]
    fn rejects_tiny_or_degenerate() {
        assert!(Grid::new(0.0, 0.1, 6).is_err());
        assert!(Grid::new(0.0, 0.1, 7).is_ok());
        assert!(Grid::new(0.0, 0.0, 20).is_err());
        assert!(Grid::new(0.0, f64::NAN, 20).is_err());
    }
}
