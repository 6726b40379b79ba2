//! Bottom profiles of the test cases and the lake-at-rest state.

use crate::bathymetry::Bathymetry;
use crate::boundary::{Boundaries, BoundaryKind};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::state::CellState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "left" => Some(Side::Left),
            "right" => Some(Side::Right),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BathymetryKind {
    Flat,
    /// Flat up to `toe`, then rising by 1 in `ratio` towards `shore`.
    /// With `wall` set the shore side is closed by a vertical wall.
    Slope {
        ratio: f64,
        toe: f64,
        shore: Side,
        wall: bool,
    },
}

impl BathymetryKind {
    pub fn elevation(&self, x: f64) -> f64 {
        match *self {
            BathymetryKind::Flat => 0.0,
            BathymetryKind::Slope { ratio, toe, shore, .. } => match shore {
                Side::Right => (x - toe).max(0.0) / ratio,
                Side::Left => (toe - x).max(0.0) / ratio,
            },
        }
    }

    /// Walls on the shore side of a walled slope, open water elsewhere.
    pub fn boundaries(&self) -> Boundaries {
        let open = BoundaryKind::NeumannOpen;
        match *self {
            BathymetryKind::Slope { shore, wall: true, .. } => match shore {
                Side::Left => Boundaries {
                    left: BoundaryKind::Wall,
                    right: open,
                },
                Side::Right => Boundaries {
                    left: open,
                    right: BoundaryKind::Wall,
                },
            },
            _ => Boundaries { left: open, right: open },
        }
    }

    /// Distance from the toe to where the still water line meets the bottom.
    pub fn shoreline_offset(&self, h0: f64) -> Option<f64> {
        match *self {
            BathymetryKind::Flat => None,
            BathymetryKind::Slope { ratio, .. } => Some(h0 * ratio),
        }
    }
}

pub fn build_bathymetry(kind: BathymetryKind, grid: &Grid, h0: f64, bc: Boundaries) -> Result<Bathymetry> {
    if let BathymetryKind::Slope { ratio, toe, .. } = kind {
        if !(ratio > 0.0 && ratio.is_finite() && toe.is_finite()) {
            return Err(Error::Config(format!("bad slope 1:{ratio} with toe at {toe}")));
        }
    }
    Bathymetry::from_fn(grid, h0, bc, |x| kind.elevation(x))
}

/// Still water with surface `zeta0`; cells above the surface are left empty.
pub fn lake_at_rest(bathy: &Bathymetry, zeta0: f64) -> CellState {
    let h: Vec<f64> = bathy.b_cell.iter().map(|b| (bathy.h0 + zeta0 - b).max(0.0)).collect();
    let q = vec![0.0; h.len()];
    CellState { h, q }
}
