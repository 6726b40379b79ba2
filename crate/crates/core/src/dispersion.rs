//! Linear dispersion of the model: exact and time-semi-discrete relations,
//! linear Stokes references and the choice of the dispersion parameter.

use crate::error::{Error, Result};

/// A single linear mode. `dt = 0` selects the time-continuous relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionQuery {
    pub kh0: f64,
    pub h0: f64,
    pub g: f64,
    pub alpha: f64,
    pub dt: f64,
}

impl DispersionQuery {
    pub fn new(kh0: f64, h0: f64, g: f64, alpha: f64, dt: f64) -> Self {
        Self { kh0, h0, g, alpha, dt }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [("kh0", self.kh0), ("h0", self.h0), ("g", self.g)];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.alpha >= 1.0 && self.alpha.is_finite()) {
            return Err(Error::Config(format!("alpha must be >= 1, got {}", self.alpha)));
        }
        if !(self.dt >= 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("dt must be >= 0, got {}", self.dt)));
        }
        Ok(())
    }

    pub fn k(&self) -> f64 {
        self.kh0 / self.h0
    }

    fn with_kh0(self, kh0: f64) -> Self {
        Self { kh0, ..self }
    }
}

/// Ratio under the square root of the continuous relation and its derivative in kh0.
fn ratio(x: f64, alpha: f64) -> (f64, f64) {
    let den = 1.0 + alpha * x * x / 3.0;
    let num = 1.0 + (alpha - 1.0) * x * x / 3.0;
    (num / den, -(2.0 * x / 3.0) / (den * den))
}

/// Coefficient of the splitting correction and its derivative in kh0.
fn splitting_factor(x: f64, alpha: f64) -> (f64, f64) {
    let den = 3.0 + (alpha - 1.0) * x * x;
    (x * x / den, 6.0 * x / (den * den))
}

/// Positive branch of the continuous relation; the other branch is its negation.
pub fn omega_gn(q: &DispersionQuery) -> f64 {
    let (r, _) = ratio(q.kh0, q.alpha);
    q.k() * (q.g * q.h0).sqrt() * r.sqrt()
}

fn omega_gn_dk(q: &DispersionQuery) -> f64 {
    let (r, dr) = ratio(q.kh0, q.alpha);
    (q.g * q.h0).sqrt() * (r.sqrt() + q.kh0 * dr / (2.0 * r.sqrt()))
}

pub fn phase_velocity(q: &DispersionQuery) -> f64 {
    omega_semidiscrete(q) / q.k()
}

/// dω/dk of the (semi-discrete if `dt > 0`) relation.
pub fn group_velocity(q: &DispersionQuery) -> f64 {
    let w = omega_gn(q);
    let dw = omega_gn_dk(q);
    if q.dt == 0.0 {
        return dw;
    }
    let (b, db) = splitting_factor(q.kh0, q.alpha);
    let c = q.dt * q.dt / 24.0;
    dw * (1.0 + 3.0 * c * w * w * b * b) + c * w.powi(3) * 2.0 * b * db * q.h0
}

/// Frequency including the leading splitting error of RK4-Strang stepping.
pub fn omega_semidiscrete(q: &DispersionQuery) -> f64 {
    let w = omega_gn(q);
    if q.dt == 0.0 {
        return w;
    }
    let (b, _) = splitting_factor(q.kh0, q.alpha);
    w + q.dt * q.dt / 24.0 * w.powi(3) * b * b
}

/// Linear-theory phase and group velocities over depth `h0`.
pub fn stokes_reference(kh0: f64, h0: f64, g: f64) -> (f64, f64) {
    let k = kh0 / h0;
    let phase = (g * kh0.tanh() / k).sqrt();
    let s = (2.0 * kh0).sinh();
    let shoal = if s.is_finite() { 2.0 * kh0 / s } else { 0.0 };
    (phase, 0.5 * phase * (1.0 + shoal))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveComponents {
    Phase,
    PhaseGroup,
}

impl ObjectiveComponents {
    pub fn name(self) -> &'static str {
        match self {
            ObjectiveComponents::Phase => "phase",
            ObjectiveComponents::PhaseGroup => "phase+group",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "phase" => Some(ObjectiveComponents::Phase),
            "phase+group" | "both" => Some(ObjectiveComponents::PhaseGroup),
            _ => None,
        }
    }
}

/// Averaged relative velocity error over `kh0 ∈ [cutoff, k_max]`, weighted by 1/kh0.
/// `h0` and `g` only fix the scale of `dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaObjective {
    pub k_max: f64,
    pub components: ObjectiveComponents,
    pub step: f64,
    pub cutoff: f64,
    pub h0: f64,
    pub g: f64,
}

impl Default for AlphaObjective {
    fn default() -> Self {
        Self {
            k_max: 4.0,
            components: ObjectiveComponents::Phase,
            step: 0.005,
            cutoff: 0.005,
            h0: 1.0,
            g: 9.81,
        }
    }
}

impl AlphaObjective {
    pub fn validate(&self) -> Result<()> {
        if !(self.k_max > 0.0 && self.k_max.is_finite()) {
            return Err(Error::Config(format!("khmax must be positive, got {}", self.k_max)));
        }
        if !(self.step > 0.0 && self.cutoff > 0.0 && self.cutoff < self.k_max) {
            return Err(Error::Config("quadrature step and cutoff must be positive and below khmax".into()));
        }
        if !(self.h0 > 0.0 && self.g > 0.0) {
            return Err(Error::Config("h0 and g must be positive".into()));
        }
        Ok(())
    }

    fn integrand(&self, q: &DispersionQuery) -> f64 {
        let (cp, cg) = stokes_reference(q.kh0, q.h0, q.g);
        let ep = (phase_velocity(q) - cp) / cp;
        let mut sum = ep * ep;
        if self.components == ObjectiveComponents::PhaseGroup {
            let eg = (group_velocity(q) - cg) / cg;
            sum += eg * eg;
        }
        sum / q.kh0
    }

    /// Trapezoid-rule value of the objective for one `alpha`.
    pub fn evaluate(&self, alpha: f64, dt: f64) -> f64 {
        let base = DispersionQuery::new(self.cutoff, self.h0, self.g, alpha, dt);
        let n = ((self.k_max - self.cutoff) / self.step).round().max(1.0) as usize;
        let h = (self.k_max - self.cutoff) / n as f64;
        let mut total = 0.0;
        for i in 0..=n {
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            total += w * self.integrand(&base.with_kh0(self.cutoff + i as f64 * h));
        }
        total * h
    }
}

const ALPHA_MIN: f64 = 1.0;
const ALPHA_MAX: f64 = 3.0;

fn golden_section(mut f: impl FnMut(f64) -> f64, tol: f64) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (ALPHA_MIN, ALPHA_MAX);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if !(fc.is_finite() && fd.is_finite()) {
            return Err(Error::NonFinite {
                what: "alpha objective",
                index: 0,
            });
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    // Hitting the lower bound means the unconstrained optimum lies below it.
    if x - ALPHA_MIN <= 2.0 * tol {
        return Ok(ALPHA_MIN);
    }
    Ok(x)
}

/// Global optimum of `objective` for time step `dt` [s], clamped to `[1, 3]`.
pub fn optimize_alpha(objective: &AlphaObjective, dt: f64) -> Result<f64> {
    objective.validate()?;
    if !(dt >= 0.0 && dt.is_finite()) {
        return Err(Error::Config(format!("dt must be >= 0, got {dt}")));
    }
    golden_section(|alpha| objective.evaluate(alpha, dt), 1e-6)
}

/// Value of `alpha` matching the linear phase velocity at one relative depth.
pub fn optimize_alpha_local(kh0: f64, dt: f64, h0: f64, g: f64) -> Result<f64> {
    DispersionQuery::new(kh0, h0, g, 1.0, dt).validate()?;
    let (cp, _) = stokes_reference(kh0, h0, g);
    golden_section(
        |alpha| (phase_velocity(&DispersionQuery::new(kh0, h0, g, alpha, dt)) - cp).abs(),
        1e-8,
    )
}

/// Time step in seconds for a dimensionless step `dt·√(g/h0)`.
pub fn dimensional_dt(dt_scaled: f64, h0: f64, g: f64) -> f64 {
    dt_scaled * (h0 / g).sqrt()
}
