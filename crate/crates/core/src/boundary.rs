//! Ghost values for cell and node fields.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    Periodic,
    /// Reflecting wall: depth-like fields mirror evenly, fluxes oddly.
    Wall,
    /// Homogeneous Neumann on every field.
    NeumannOpen,
}

impl BoundaryKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryKind::Periodic => "periodic",
            BoundaryKind::Wall => "wall",
            BoundaryKind::NeumannOpen => "open",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "periodic" => Some(Self::Periodic),
            "wall" => Some(Self::Wall),
            "open" | "neumann" => Some(Self::NeumannOpen),
            _ => None,
        }
    }
}

/// Symmetry class of a field under reflection at a wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Boundaries {
    pub left: BoundaryKind,
    pub right: BoundaryKind,
}

impl Boundaries {
    pub fn new(left: BoundaryKind, right: BoundaryKind) -> Result<Self> {
        let b = Self { left, right };
        b.validate()?;
        Ok(b)
    }

    pub const fn periodic() -> Self {
        Self {
            left: BoundaryKind::Periodic,
            right: BoundaryKind::Periodic,
        }
    }

    pub const fn walls() -> Self {
        Self {
            left: BoundaryKind::Wall,
            right: BoundaryKind::Wall,
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.left == BoundaryKind::Periodic
    }

    pub fn validate(&self) -> Result<()> {
        let l = self.left == BoundaryKind::Periodic;
        let r = self.right == BoundaryKind::Periodic;
        if l != r {
            return Err(Error::Config("periodic boundaries must be set on both ends".into()));
        }
        Ok(())
    }

    /// Sign applied to a mirrored value at the left (`false`) or right (`true`) end.
    pub(crate) fn mirror_sign(&self, right: bool, parity: Parity) -> f64 {
        let kind = if right { self.right } else { self.left };
        match (kind, parity) {
            (BoundaryKind::Wall, Parity::Odd) => -1.0,
            _ => 1.0,
        }
    }
}

/// Extends a cell field by `k` ghost cells on each side. Cell `c` of the input
/// sits at index `c + k` of the output.
pub fn apply_bc_cells(field: &[f64], bc: Boundaries, k: usize, parity: Parity) -> Result<Vec<f64>> {
    bc.validate()?;
    let n = field.len();
    if k > n {
        return Err(Error::Config(format!("{k} ghost cells on a {n}-cell field")));
    }
    let mut out = vec![0.0; n + 2 * k];
    out[k..k + n].copy_from_slice(field);
    let periodic = bc.is_periodic();
    let sl = bc.mirror_sign(false, parity);
    let sr = bc.mirror_sign(true, parity);
    for j in 1..=k {
        out[k - j] = if periodic { field[n - j] } else { sl * field[j - 1] };
        out[k + n - 1 + j] = if periodic { field[j - 1] } else { sr * field[n - j] };
    }
    Ok(out)
}

/// Extends a node field (`n_cells + 1` values) by `k` ghost nodes on each side.
/// In the periodic case the last node is taken to duplicate the first.
pub fn apply_bc_nodes(field: &[f64], bc: Boundaries, k: usize, parity: Parity) -> Result<Vec<f64>> {
    bc.validate()?;
    let np = field.len();
    if np < 2 || k + 1 > np {
        return Err(Error::Config(format!("{k} ghost nodes on a {np}-node field")));
    }
    let n = np - 1;
    let mut out = vec![0.0; np + 2 * k];
    out[k..k + np].copy_from_slice(field);
    let periodic = bc.is_periodic();
    let sl = bc.mirror_sign(false, parity);
    let sr = bc.mirror_sign(true, parity);
    for j in 1..=k {
        out[k - j] = if periodic { field[n - j] } else { sl * field[j] };
        out[k + n + j] = if periodic { field[j] } else { sr * field[n - j] };
    }
    Ok(out)
}
