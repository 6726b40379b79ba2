//! One-dimensional Green-Naghdi solver.
//!
//! The shallow-water part is advanced with a well-balanced finite-volume
//! scheme on cell averages, the dispersive part with fourth-order finite
//! differences on nodal values, and the two are combined by Strang splitting.

pub mod bathymetry;
pub mod boundary;
pub mod cli;
pub mod config;
pub mod convert;
pub mod dispersion;
pub mod dispersive;
pub mod error;
pub mod grid;
pub mod hyperbolic;
pub mod linalg;
pub mod norms;
pub mod scenarios;
pub mod state;
pub mod timeloop;

pub use bathymetry::Bathymetry;
pub use boundary::{Boundaries, BoundaryKind, Parity};
pub use config::{SolverConfig, TimeStepPolicy};
pub use error::{Error, Result};
pub use grid::Grid;
pub use state::{CellState, NodalState};
