use crate::error::{check_finite, check_len, Error, Result};

/// Cell averages of depth `h` [m] and discharge `q = h u` [m²/s].
#[derive(Debug, Clone, PartialEq)]
pub struct CellState {
    pub h: Vec<f64>,
    pub q: Vec<f64>,
}

/// Nodal depth and discharge used by the dispersive step.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalState {
    pub h: Vec<f64>,
    pub q: Vec<f64>,
}

/// `q / h`, or zero where the depth is at or below the dry threshold.
pub fn guarded_velocity(h: f64, q: f64, eps_dry: f64) -> f64 {
    if h > eps_dry {
        q / h
    } else {
        0.0
    }
}

/// Depth, as a multiple of the dry threshold, below which transport
/// velocities are damped.
pub const THIN_LAYER_FACTOR: f64 = 10.0;

/// Velocity used for transport: `q / h` in water deeper than
/// `THIN_LAYER_FACTOR · eps_dry`, smoothly damped below it so that a small
/// discharge in an almost empty cell cannot produce an arbitrary speed.
pub fn transport_velocity(h: f64, q: f64, eps_dry: f64) -> f64 {
    if h <= eps_dry {
        return 0.0;
    }
    let thin = THIN_LAYER_FACTOR * eps_dry;
    if h >= thin {
        q / h
    } else {
        std::f64::consts::SQRT_2 * h * q / (h.powi(4) + thin.powi(4)).sqrt()
    }
}

impl CellState {
    pub fn new(h: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        let s = Self { h, q };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        check_len("discharge", self.h.len(), self.q.len())?;
        check_finite("depth", &self.h)?;
        check_finite("discharge", &self.q)?;
        if let Some(&depth) = self.h.iter().find(|&&v| v < 0.0) {
            return Err(Error::NegativeDepth { what: "cell state", depth });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn mass(&self, dx: f64) -> f64 {
        self.h.iter().sum::<f64>() * dx
    }

    pub fn velocity(&self, eps_dry: f64) -> Vec<f64> {
        self.h.iter().zip(&self.q).map(|(&h, &q)| guarded_velocity(h, q, eps_dry)).collect()
    }
}

impl NodalState {
    pub fn new(h: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        check_len("nodal discharge", h.len(), q.len())?;
        check_finite("nodal depth", &h)?;
        check_finite("nodal discharge", &q)?;
        Ok(Self { h, q })
    }

    pub fn velocity(&self, eps_dry: f64) -> Vec<f64> {
        self.h.iter().zip(&self.q).map(|(&h, &q)| guarded_velocity(h, q, eps_dry)).collect()
    }
}
