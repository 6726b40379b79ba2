//! Fourth-order centered finite differences on nodal fields.

use crate::boundary::{apply_bc_nodes, Boundaries, Parity};
use crate::error::{check_finite, Error, Result};

/// Weights on offsets −2..=2 of the first-derivative stencil, times 12·dx.
pub const FIRST: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
/// Weights on offsets −2..=2 of the second-derivative stencil, times 12·dx².
pub const SECOND: [f64; 5] = [-1.0, 16.0, -30.0, 16.0, -1.0];
/// Weights on offsets −3..=3 of the third-derivative stencil, times 8·dx³.
pub const THIRD: [f64; 7] = [1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0];

/// Derivative of the given order (1, 2 or 3) at every node, ghosts from `bc`.
pub fn fd_derivative(field: &[f64], order: u8, dx: f64, bc: Boundaries, parity: Parity) -> Result<Vec<f64>> {
    check_finite("nodal field", field)?;
    let (weights, scale): (&[f64], f64) = match order {
        1 => (&FIRST, 12.0 * dx),
        2 => (&SECOND, 12.0 * dx * dx),
        3 => (&THIRD, 8.0 * dx * dx * dx),
        _ => return Err(Error::Config(format!("derivative order {order} not supported"))),
    };
    let half = weights.len() / 2;
    let ext = apply_bc_nodes(field, bc, half, parity)?;
    Ok((0..field.len())
        .map(|i| weights.iter().zip(&ext[i..i + weights.len()]).map(|(w, v)| w * v).sum::<f64>() / scale)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn offsets(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |j| j as f64 - (n / 2) as f64)
    }

    fn moment(weights: &[f64], p: i32) -> f64 {
        weights.iter().zip(offsets(weights.len())).map(|(w, j)| w * j.powi(p)).sum()
    }

    fn factorial(p: i32) -> f64 {
        (1..=p).product::<i32>() as f64
    }

    #[test]
    fn moments_match_taylor() {
        // a stencil for d^m is exact on degree ≤ n iff its p-th moment is m!·δ_pm·scale for p ≤ n
        for (w, m, scale, deg) in [(&FIRST[..], 1, 12.0, 4), (&SECOND[..], 2, 12.0, 5), (&THIRD[..], 3, 8.0, 4)] {
            for p in 0..=deg {
                let expect = if p == m { factorial(m) * scale } else { 0.0 };
                assert!((moment(w, p) - expect).abs() < 1e-12, "order {m}, moment {p}");
            }
        }
    }

    #[test]
    fn linear_field_slope() {
        let x: Vec<f64> = (0..20).map(|i| i as f64 * 0.1).collect();
        let d = fd_derivative(&x, 1, 0.1, Boundaries::walls(), Parity::Odd).unwrap();
        for v in &d[2..18] {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_gives_zero() {
        for order in 1..=3 {
            let d = fd_derivative(&[3.0; 12], order, 0.3, Boundaries::periodic(), Parity::Even).unwrap();
            assert!(d.iter().all(|v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn second_derivative_fourth_order_periodic() {
        let err = |n: usize| {
            let dx = 1.0 / n as f64;
            let k = 2.0 * PI;
            let f: Vec<f64> = (0..=n).map(|i| (k * i as f64 * dx).sin()).collect();
            let d = fd_derivative(&f, 2, dx, Boundaries::periodic(), Parity::Even).unwrap();
            d.iter()
                .enumerate()
                .map(|(i, v)| (v + k * k * (k * i as f64 * dx).sin()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(32) / err(64);
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }

    #[test]
    fn bad_order() {
        assert!(fd_derivative(&[0.0; 12], 4, 0.1, Boundaries::walls(), Parity::Even).is_err());
    }
}
