//! Classical four-stage Runge-Kutta.

use crate::error::{Error, Result};
use crate::state::CellState;

/// Vector-space operations the integrator needs.
pub trait OdeState: Clone {
    /// `self + a · k`
    fn axpy(&self, a: f64, k: &Self) -> Self;
    fn first_non_finite(&self) -> Option<usize>;
}

impl OdeState for f64 {
    fn axpy(&self, a: f64, k: &Self) -> Self {
        self + a * k
    }

    fn first_non_finite(&self) -> Option<usize> {
        (!self.is_finite()).then_some(0)
    }
}

impl OdeState for Vec<f64> {
    fn axpy(&self, a: f64, k: &Self) -> Self {
        self.iter().zip(k).map(|(y, k)| y + a * k).collect()
    }

    fn first_non_finite(&self) -> Option<usize> {
        self.iter().position(|v| !v.is_finite())
    }
}

impl OdeState for CellState {
    fn axpy(&self, a: f64, k: &Self) -> Self {
        CellState {
            h: self.h.axpy(a, &k.h),
            q: self.q.axpy(a, &k.q),
        }
    }

    fn first_non_finite(&self) -> Option<usize> {
        self.h.first_non_finite().or_else(|| self.q.first_non_finite())
    }
}

pub fn rk4<S, F>(mut rhs: F, y: &S, dt: f64) -> Result<S>
where
    S: OdeState,
    F: FnMut(&S) -> Result<S>,
{
    let check = |s: &S| match s.first_non_finite() {
        Some(index) => Err(Error::NonFinite { what: "RK4 stage", index }),
        None => Ok(()),
    };
    let k1 = rhs(y)?;
    check(&k1)?;
    let k2 = rhs(&y.axpy(0.5 * dt, &k1))?;
    check(&k2)?;
    let k3 = rhs(&y.axpy(0.5 * dt, &k2))?;
    check(&k3)?;
    let k4 = rhs(&y.axpy(dt, &k3))?;
    check(&k4)?;
    let out = y.axpy(dt / 6.0, &k1).axpy(dt / 3.0, &k2).axpy(dt / 3.0, &k3).axpy(dt / 6.0, &k4);
    check(&out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rhs_is_identity() {
        let y = vec![1.0, -2.0, 3.5];
        let out = rk4(|s: &Vec<f64>| Ok(vec![0.0; s.len()]), &y, 0.3).unwrap();
        assert_eq!(out, y);
    }

    #[test]
    fn scalar_growth_is_degree_four_taylor() {
        let lambda = 2.0;
        let dt = 0.05;
        let out = rk4(|y: &f64| Ok(lambda * y), &1.0, dt).unwrap();
        let z: f64 = lambda * dt;
        let expect = 1.0 + z + z * z / 2.0 + z.powi(3) / 6.0 + z.powi(4) / 24.0;
        assert!((out - expect).abs() < 1e-15);
    }

    #[test]
    fn non_finite_stage_aborts() {
        let r = rk4(|_: &f64| Ok(f64::NAN), &1.0, 0.1);
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }
}
