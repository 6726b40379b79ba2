//! Exact solitary wave of the α = 1 model over a flat bottom.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::state::CellState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitaryWaveParams {
    pub h0: f64,
    pub amplitude: f64,
    pub x_center: f64,
    /// +1 travels towards increasing x, −1 towards decreasing x.
    pub direction: f64,
    pub g: f64,
}

/// Five-point Gauss-Legendre nodes and weights on [−1, 1].
const GAUSS: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

impl SolitaryWaveParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.h0 > 0.0 && self.amplitude > 0.0 && self.g > 0.0) {
            return Err(Error::Config("solitary wave needs positive h0, amplitude and g".into()));
        }
        if self.direction.abs() != 1.0 {
            return Err(Error::Config("solitary wave direction must be +1 or -1".into()));
        }
        Ok(())
    }

    pub fn kappa(&self) -> f64 {
        (3.0 * self.amplitude).sqrt() / (2.0 * self.h0 * (self.h0 + self.amplitude).sqrt())
    }

    pub fn celerity(&self) -> f64 {
        (self.g * (self.h0 + self.amplitude)).sqrt()
    }

    fn crest(&self, t: f64) -> f64 {
        self.x_center + self.direction * self.celerity() * t
    }

    /// Depth at `x`; on a periodic domain of length `period` the images of
    /// the wave in the two neighbouring periods are superposed.
    pub fn depth(&self, x: f64, t: f64, period: Option<f64>) -> f64 {
        let k = self.kappa();
        let bump = |s: f64| {
            let sech = 1.0 / (k * s).cosh();
            self.amplitude * sech * sech
        };
        let s = x - self.crest(t);
        match period {
            None => self.h0 + bump(s),
            Some(p) => {
                // fold the distance into one period before adding the images
                let s = s - p * (s / p).round();
                self.h0 + bump(s) + bump(s - p) + bump(s + p)
            }
        }
    }

    /// Discharge `c (h − h0)` signed by the direction of travel.
    pub fn discharge(&self, x: f64, t: f64, period: Option<f64>) -> f64 {
        self.direction * self.celerity() * (self.depth(x, t, period) - self.h0)
    }

    /// Exact cell averages of depth and discharge.
    pub fn cell_state(&self, grid: &Grid, t: f64, periodic: bool) -> CellState {
        let period = periodic.then(|| grid.length());
        let half = 0.5 * grid.dx();
        let mut h = Vec::with_capacity(grid.n_cells());
        for c in 0..grid.n_cells() {
            let xc = grid.center(c);
            h.push(GAUSS.iter().map(|(s, w)| 0.5 * w * self.depth(xc + half * s, t, period)).sum());
        }
        let q = h.iter().map(|v| self.direction * self.celerity() * (v - self.h0)).collect();
        CellState { h, q }
    }
}

/// Samples `(h, u)` of the solitary wave at the given positions.
pub fn solitary_wave(params: &SolitaryWaveParams, x: &[f64], t: f64) -> (Vec<f64>, Vec<f64>) {
    let h: Vec<f64> = x.iter().map(|&x| params.depth(x, t, None)).collect();
    let u = h
        .iter()
        .map(|&h| params.direction * params.celerity() * (1.0 - params.h0 / h))
        .collect();
    (h, u)
}
