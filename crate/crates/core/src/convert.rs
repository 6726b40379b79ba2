//! Fourth-order conversions between cell averages and nodal values.

use crate::boundary::{apply_bc_nodes, Boundaries, Parity};
use crate::error::{check_finite, Error, Result};
use crate::linalg::{solve_cyclic_tridiagonal, solve_tridiagonal};

/// Nodal values from cell averages by inverting the compact relation
/// `(w[i-1] + 4 w[i] + w[i+1]) / 6 = (a[i-1] + a[i]) / 2` at every node.
pub fn cell_to_node(cells: &[f64], bc: Boundaries, parity: Parity) -> Result<Vec<f64>> {
    bc.validate()?;
    check_finite("cell averages", cells)?;
    let n = cells.len();
    if n < 2 {
        return Err(Error::Config("conversion needs at least two cells".into()));
    }
    let sixth = 1.0 / 6.0;
    if bc.is_periodic() {
        let rhs: Vec<f64> = (0..n).map(|i| 0.5 * (cells[(i + n - 1) % n] + cells[i])).collect();
        let mut w = solve_cyclic_tridiagonal(&vec![sixth; n], &vec![2.0 / 3.0; n], &vec![sixth; n], &rhs)?;
        w.push(w[0]);
        return Ok(w);
    }
    let sl = bc.mirror_sign(false, parity);
    let sr = bc.mirror_sign(true, parity);
    let m = n + 1;
    let mut lower = vec![sixth; m];
    let diag = vec![2.0 / 3.0; m];
    let mut upper = vec![sixth; m];
    let mut rhs = vec![0.0; m];
    // ghost nodes w[-1] = sl * w[1], w[n+1] = sr * w[n-1]; ghost cells mirror likewise
    upper[0] = sixth * (1.0 + sl);
    rhs[0] = 0.5 * (sl + 1.0) * cells[0];
    for i in 1..n {
        rhs[i] = 0.5 * (cells[i - 1] + cells[i]);
    }
    lower[n] = sixth * (1.0 + sr);
    rhs[n] = 0.5 * (cells[n - 1] + sr * cells[n - 1]);
    solve_tridiagonal(&lower, &diag, &upper, &rhs)
}

/// Cell averages from nodal values with the explicit four-point formula.
pub fn node_to_cell(nodes: &[f64], bc: Boundaries, parity: Parity) -> Result<Vec<f64>> {
    check_finite("nodal values", nodes)?;
    let e = apply_bc_nodes(nodes, bc, 1, parity)?;
    let n = nodes.len() - 1;
    Ok((0..n)
        .map(|c| (-e[c] + 13.0 * e[c + 1] + 13.0 * e[c + 2] - e[c + 3]) / 24.0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundaryKind;
    use proptest::prelude::*;

    fn cubic_avg(x0: f64, x1: f64, p: &[f64; 4]) -> f64 {
        let prim = |x: f64| p[0] * x + p[1] * x * x / 2.0 + p[2] * x.powi(3) / 3.0 + p[3] * x.powi(4) / 4.0;
        (prim(x1) - prim(x0)) / (x1 - x0)
    }

    #[test]
    fn interior_nodes_exact_for_cubics() {
        // Boundary closures are lower order; only check nodes away from the ends.
        let p = [0.3, -1.2, 0.7, 0.25];
        let n = 40;
        let dx = 0.05;
        let cells: Vec<f64> = (0..n).map(|c| cubic_avg(c as f64 * dx, (c + 1) as f64 * dx, &p)).collect();
        let bc = Boundaries::new(BoundaryKind::NeumannOpen, BoundaryKind::NeumannOpen).unwrap();
        let w = cell_to_node(&cells, bc, Parity::Even).unwrap();
        let f = |x: f64| p[0] + p[1] * x + p[2] * x * x + p[3] * x.powi(3);
        // the closure error decays geometrically with distance from the ends
        for i in 15..=25 {
            assert!((w[i] - f(i as f64 * dx)).abs() < 1e-8, "node {i}");
        }
    }

    #[test]
    fn node_to_cell_exact_for_cubics_inside() {
        let p = [0.3, -1.2, 0.7, 0.25];
        let n = 20;
        let dx = 0.1;
        let f = |x: f64| p[0] + p[1] * x + p[2] * x * x + p[3] * x.powi(3);
        let nodes: Vec<f64> = (0..=n).map(|i| f(i as f64 * dx)).collect();
        let bc = Boundaries::walls();
        let cells = node_to_cell(&nodes, bc, Parity::Even).unwrap();
        for c in 1..n - 1 {
            let exact = cubic_avg(c as f64 * dx, (c + 1) as f64 * dx, &p);
            assert!((cells[c] - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn periodic_sine_is_fourth_order() {
        let err = |n: usize| {
            let dx = 1.0 / n as f64;
            let k = 2.0 * std::f64::consts::PI;
            let cells: Vec<f64> = (0..n)
                .map(|c| ((k * (c + 1) as f64 * dx).cos() - (k * c as f64 * dx).cos()) / (-k * dx))
                .collect();
            let w = cell_to_node(&cells, Boundaries::periodic(), Parity::Even).unwrap();
            w.iter()
                .enumerate()
                .map(|(i, v)| (v - (k * i as f64 * dx).sin()).abs())
                .fold(0.0, f64::max)
        };
        let order = (err(16) / err(32)).log2();
        assert!(order > 3.8, "order {order}");
    }

    #[test]
    fn periodic_nodes_close_the_loop() {
        let cells: Vec<f64> = (0..12).map(|c| (c as f64).sin()).collect();
        let w = cell_to_node(&cells, Boundaries::periodic(), Parity::Even).unwrap();
        assert_eq!(w.len(), 13);
        assert_eq!(w[0], w[12]);
    }

    #[test]
    fn constants_survive_both_ways() {
        for bc in [
            Boundaries::periodic(),
            Boundaries::walls(),
            Boundaries::new(BoundaryKind::NeumannOpen, BoundaryKind::Wall).unwrap(),
        ] {
            let w = cell_to_node(&[2.5; 16], bc, Parity::Even).unwrap();
            assert!(w.iter().all(|v| (v - 2.5).abs() < 1e-14));
            let c = node_to_cell(&[2.5; 17], bc, Parity::Even).unwrap();
            assert!(c.iter().all(|v| (v - 2.5).abs() < 1e-14));
        }
    }

    #[test]
    fn roundtrip_discrepancy_is_fourth_order() {
        let discrepancy = |n: usize| {
            let k = 2.0 * std::f64::consts::PI / n as f64;
            let cells: Vec<f64> = (0..n).map(|c| (k * c as f64).sin()).collect();
            let bc = Boundaries::periodic();
            let back = node_to_cell(&cell_to_node(&cells, bc, Parity::Even).unwrap(), bc, Parity::Even).unwrap();
            cells.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        };
        let ratio = discrepancy(32) / discrepancy(64);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rejects_non_finite() {
        let mut cells = vec![1.0; 10];
        cells[3] = f64::NAN;
        assert!(matches!(
            cell_to_node(&cells, Boundaries::walls(), Parity::Even),
            Err(Error::NonFinite { index: 3, .. })
        ));
    }

    proptest! {
        #[test]
        fn conversion_is_linear(s in -3.0f64..3.0, seed in proptest::collection::vec(-1.0f64..1.0, 20)) {
            let bc = Boundaries::walls();
            let w = cell_to_node(&seed, bc, Parity::Odd).unwrap();
            let scaled: Vec<f64> = seed.iter().map(|v| s * v).collect();
            let ws = cell_to_node(&scaled, bc, Parity::Odd).unwrap();
            for (x, y) in w.iter().zip(&ws) {
                prop_assert!((s * x - y).abs() < 1e-12);
            }
        }
    }
}
