//! Limited five-point reconstruction of interface values.

use crate::boundary::{apply_bc_cells, Boundaries, Parity};
use crate::error::Result;

/// Upwinding weight of the one-sided differences.
pub const NU: f64 = 1.0 / 3.0;
/// Weight of the third difference centred on the reconstructed face.
pub const XI_C: f64 = -1.0 / 10.0;
/// Weight of the third difference one cell away from the face.
pub const XI_D: f64 = -1.0 / 15.0;

/// Three-entry limiter. `w` enters through its magnitude so the result never
/// changes sign relative to the one-sided slopes.
pub fn limiter(u: f64, v: f64, w: f64) -> f64 {
    if u * v <= 0.0 {
        0.0
    } else {
        u.signum() * (2.0 * u.abs()).min(2.0 * v.abs()).min(w.abs())
    }
}

/// Unlimited right and left gradients of the cell whose value sits at `e[i]`.
pub fn gradients(e: &[f64], i: usize) -> (f64, f64) {
    let (m2, m1, c, p1, p2) = (e[i - 2], e[i - 1], e[i], e[i + 1], e[i + 2]);
    let third_hi = -m1 + 3.0 * c - 3.0 * p1 + p2;
    let third_lo = -m2 + 3.0 * m1 - 3.0 * c + p1;
    let right = (1.0 - NU) * (p1 - c) + NU * (c - m1) + XI_C * third_hi + XI_D * third_lo;
    let left = (1.0 - NU) * (c - m1) + NU * (p1 - c) + XI_C * third_lo + XI_D * third_hi;
    (right, left)
}

/// Limited values at the left and right faces of every cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFaces {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

/// Reconstructs every cell; cells flagged in `flat` keep a constant profile.
pub fn cell_faces(field: &[f64], bc: Boundaries, parity: Parity, flat: Option<&[bool]>) -> Result<CellFaces> {
    let n = field.len();
    let e = apply_bc_cells(field, bc, 2, parity)?;
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for c in 0..n {
        let v = field[c];
        if flat.is_some_and(|f| f[c]) {
            left.push(v);
            right.push(v);
            continue;
        }
        let i = c + 2;
        let (gr, gl) = gradients(&e, i);
        let down = e[i] - e[i - 1];
        let up = e[i + 1] - e[i];
        right.push(v + 0.5 * limiter(down, up, gr));
        left.push(v - 0.5 * limiter(up, down, gl));
    }
    Ok(CellFaces { left, right })
}

/// Values on either side of each of the `n + 1` interfaces.
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceValues {
    /// Value just left of interface `j`, i.e. the right face of cell `j − 1`.
    pub minus: Vec<f64>,
    /// Value just right of interface `j`, i.e. the left face of cell `j`.
    pub plus: Vec<f64>,
}

/// Pairs up cell faces across interfaces. Boundary interfaces of non-periodic
/// domains see the mirror image of the adjacent interior face.
pub fn to_interfaces(faces: &CellFaces, bc: Boundaries, parity: Parity) -> InterfaceValues {
    let n = faces.left.len();
    let mut minus = Vec::with_capacity(n + 1);
    let mut plus = Vec::with_capacity(n + 1);
    if bc.is_periodic() {
        minus.push(faces.right[n - 1]);
    } else {
        minus.push(bc.mirror_sign(false, parity) * faces.left[0]);
    }
    minus.extend_from_slice(&faces.right);
    plus.extend_from_slice(&faces.left);
    if bc.is_periodic() {
        plus.push(faces.left[0]);
    } else {
        plus.push(bc.mirror_sign(true, parity) * faces.right[n - 1]);
    }
    InterfaceValues { minus, plus }
}

/// Limited reconstruction of a cell field onto interfaces.
pub fn reconstruct(field: &[f64], bc: Boundaries, parity: Parity) -> Result<InterfaceValues> {
    Ok(to_interfaces(&cell_faces(field, bc, parity, None)?, bc, parity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn limiter_values() {
        assert_eq!(limiter(1.0, -1.0, 3.0), 0.0);
        assert_eq!(limiter(1.0, 2.0, 3.0), 2.0);
        assert_eq!(limiter(-2.0, -1.0, 10.0), -2.0);
        assert_eq!(limiter(0.0, 1.0, 1.0), 0.0);
    }

    #[test]
    fn limiter_ignores_sign_of_third_slope() {
        assert_eq!(limiter(1.0, 2.0, -0.5), 0.5);
    }

    #[test]
    fn linear_gradients_are_exact() {
        let e: Vec<f64> = (0..7).map(|i| 0.3 * i as f64 - 1.0).collect();
        let (r, l) = gradients(&e, 3);
        assert!((r - 0.3).abs() < 1e-15 && (l - 0.3).abs() < 1e-15);
    }

    #[test]
    fn constant_is_preserved() {
        let iv = reconstruct(&[1.5; 10], Boundaries::walls(), Parity::Even).unwrap();
        assert!(iv.minus.iter().chain(&iv.plus).all(|v| *v == 1.5));
    }

    #[test]
    fn extremum_is_flattened() {
        let f = [0.0, 1.0, 2.0, 3.0, 2.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        let faces = cell_faces(&f, Boundaries::walls(), Parity::Even, None).unwrap();
        assert_eq!(faces.left[3], 3.0);
        assert_eq!(faces.right[3], 3.0);
    }

    #[test]
    fn wall_interfaces_mirror() {
        let f: Vec<f64> = (0..10).map(|i| i as f64 * 0.1 + 0.5).collect();
        let iv = reconstruct(&f, Boundaries::walls(), Parity::Odd).unwrap();
        assert_eq!(iv.minus[0], -iv.plus[0]);
        assert_eq!(iv.plus[10], -iv.minus[10]);
    }

    proptest! {
        #[test]
        fn faces_stay_between_neighbours(data in proptest::collection::vec(0.0f64..5.0, 10..40)) {
            // the 2|u|, 2|v| caps keep faces inside the range of adjacent means
            let faces = cell_faces(&data, Boundaries::walls(), Parity::Even, None).unwrap();
            let n = data.len();
            for c in 1..n - 1 {
                let lo = data[c - 1].min(data[c]).min(data[c + 1]);
                let hi = data[c - 1].max(data[c]).max(data[c + 1]);
                prop_assert!(faces.right[c] >= lo - 1e-12 && faces.right[c] <= hi + 1e-12);
                prop_assert!(faces.left[c] >= lo - 1e-12 && faces.left[c] <= hi + 1e-12);
                prop_assert!(faces.left[c] >= 0.0 && faces.right[c] >= 0.0);
            }
        }

        #[test]
        fn limiter_is_transparent_on_smooth_monotone_data(a in 0.1f64..2.0, k in 0.05f64..0.2) {
            // gently curved, monotone data: the high-order gradient is within the caps
            let f: Vec<f64> = (0..20).map(|i| a * (k * i as f64).exp()).collect();
            let e = apply_bc_cells(&f, Boundaries::walls(), 2, Parity::Even).unwrap();
            let faces = cell_faces(&f, Boundaries::walls(), Parity::Even, None).unwrap();
            for c in 3..17 {
                let (gr, gl) = gradients(&e, c + 2);
                prop_assert!((faces.right[c] - (f[c] + 0.5 * gr)).abs() < 1e-13);
                prop_assert!((faces.left[c] - (f[c] - 0.5 * gl)).abs() < 1e-13);
            }
        }
    }
}
