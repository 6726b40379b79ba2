use crate::boundary::Boundaries;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeStepPolicy {
    /// `dt = cfl · dx / max(|u| + √(g h))`, recomputed every step.
    Cfl(f64),
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub alpha: f64,
    pub g: f64,
    pub rho: f64,
    /// Quadratic friction coefficient, applied as `−f u|u|` in the momentum equation.
    pub friction: f64,
    pub eps_dry: f64,
    pub time_step: TimeStepPolicy,
    pub breaking_theta: f64,
    /// Absolute dissipation floor [W/m²]; detection is inactive below it.
    pub breaking_floor: f64,
    pub breaking_halo: usize,
    pub bc: Boundaries,
    /// Still-water depth the free surface is measured from.
    pub h0: f64,
}

pub const DEFAULT_ALPHA: f64 = 1.159;
pub const DEFAULT_G: f64 = 9.81;
pub const DEFAULT_RHO: f64 = 1000.0;
pub const DEFAULT_EPS_DRY: f64 = 1e-5;
pub const DEFAULT_THETA: f64 = 0.5;
pub const DEFAULT_HALO: usize = 3;

/// Default breaking floor: a thousandth of the shallow-water energy flux scale.
pub fn default_breaking_floor(rho: f64, g: f64, h0: f64) -> f64 {
    1e-3 * rho * g * h0 * (g * h0).sqrt()
}

impl SolverConfig {
    pub fn new(h0: f64, bc: Boundaries) -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
            g: DEFAULT_G,
            rho: DEFAULT_RHO,
            friction: 0.0,
            eps_dry: DEFAULT_EPS_DRY,
            time_step: TimeStepPolicy::Cfl(1.0),
            breaking_theta: DEFAULT_THETA,
            breaking_floor: default_breaking_floor(DEFAULT_RHO, DEFAULT_G, h0),
            breaking_halo: DEFAULT_HALO,
            bc,
            h0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Config(what.to_string()));
        if !(self.alpha >= 1.0 && self.alpha.is_finite()) {
            return bad("alpha must be at least 1");
        }
        if !(self.g > 0.0 && self.g.is_finite()) {
            return bad("g must be positive");
        }
        if !(self.rho > 0.0) {
            return bad("rho must be positive");
        }
        if !(self.friction >= 0.0 && self.friction.is_finite()) {
            return bad("friction must be non-negative");
        }
        if !(self.eps_dry > 0.0) {
            return bad("eps_dry must be positive");
        }
        if !(self.breaking_theta > 0.0 && self.breaking_theta <= 1.0) {
            return bad("breaking_theta must lie in (0, 1]");
        }
        if !(self.breaking_floor >= 0.0) {
            return bad("breaking_floor must be non-negative");
        }
        if !(self.h0 > 0.0) {
            return bad("h0 must be positive");
        }
        match self.time_step {
            TimeStepPolicy::Cfl(c) if !(c > 0.0 && c.is_finite()) => bad("cfl must be positive"),
            TimeStepPolicy::Fixed(dt) if !(dt > 0.0 && dt.is_finite()) => bad("dt must be positive"),
            _ => self.bc.validate(),
        }
    }
}
