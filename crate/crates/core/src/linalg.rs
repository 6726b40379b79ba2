//! Small direct solvers: tridiagonal (plain and cyclic) and banded LU.

use crate::error::{Error, Result};

/// Thomas algorithm. `lower[0]` and `upper[n-1]` are ignored.
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut piv = diag[0];
    if piv == 0.0 {
        return Err(Error::SingularPivot { row: 0 });
    }
    c[0] = upper[0] / piv;
    x[0] = rhs[0] / piv;
    for i in 1..n {
        piv = diag[i] - lower[i] * c[i - 1];
        if piv == 0.0 {
            return Err(Error::SingularPivot { row: i });
        }
        c[i] = if i + 1 < n { upper[i] / piv } else { 0.0 };
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / piv;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Cyclic tridiagonal solve via a rank-one Sherman-Morrison correction.
/// `lower[0]` couples row 0 to the last unknown, `upper[n-1]` the last row to unknown 0.
pub fn solve_cyclic_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let alpha = upper[n - 1];
    let beta = lower[0];
    let gamma = -diag[0];
    let mut d = diag.to_vec();
    d[0] -= gamma;
    d[n - 1] -= alpha * beta / gamma;
    let x = solve_tridiagonal(lower, &d, upper, rhs)?;
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let z = solve_tridiagonal(lower, &d, upper, &u)?;
    let fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    Ok(x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect())
}

/// Square band matrix with `kl` sub- and `ku` super-diagonals, stored with
/// room for the fill produced by partial pivoting.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![0.0; n * width],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.ku + self.kl);
        i * self.width + (j + self.kl - i)
    }

    pub fn in_band(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && j + self.kl >= i && j <= i + self.ku
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) {
            self.data[self.slot(i, j)]
        } else {
            0.0
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(self.in_band(i, j), "entry ({i}, {j}) outside the band");
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    pub fn set_row_identity(&mut self, i: usize) {
        let lo = i.saturating_sub(self.kl);
        let hi = (i + self.ku).min(self.n - 1);
        for j in lo..=hi {
            let s = self.slot(i, j);
            self.data[s] = 0.0;
        }
        let s = self.slot(i, i);
        self.data[s] = 1.0;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }

    /// LU with partial pivoting; rows are only ever swapped within the band.
    pub fn factorize(mut self) -> Result<BandLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !scale.is_finite() {
            return Err(Error::NonFinite {
                what: "band matrix",
                index: self.data.iter().position(|v| !v.is_finite()).unwrap_or(0) / self.width,
            });
        }
        let tiny = scale * 1e-14;
        let mut pivots = vec![0usize; n];
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let last_col = (k + ku + kl).min(n - 1);
            let mut p = k;
            let mut best = self.data[self.slot(k, k)].abs();
            for r in k + 1..=last_row {
                let v = self.data[self.slot(r, k)].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if !(best > tiny) {
                return Err(Error::SingularPivot { row: k });
            }
            pivots[k] = p;
            if p != k {
                for j in k..=last_col {
                    let (a, b) = (self.slot(k, j), self.slot(p, j));
                    self.data.swap(a, b);
                }
            }
            let pivot = self.data[self.slot(k, k)];
            for r in k + 1..=last_row {
                let sr = self.slot(r, k);
                let m = self.data[sr] / pivot;
                self.data[sr] = m;
                if m == 0.0 {
                    continue;
                }
                for j in k + 1..=last_col {
                    let u = self.data[self.slot(k, j)];
                    let s = self.slot(r, j);
                    self.data[s] -= m * u;
                }
            }
        }
        Ok(BandLu { lu: self, pivots })
    }
}

#[derive(Debug, Clone)]
pub struct BandLu {
    lu: BandMatrix,
    pivots: Vec<usize>,
}

impl BandLu {
    pub fn n(&self) -> usize {
        self.lu.n
    }

    pub fn solve_in_place(&self, b: &mut [f64]) {
        let m = &self.lu;
        let n = m.n;
        for k in 0..n {
            let p = self.pivots[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            for r in k + 1..=(k + m.kl).min(n - 1) {
                b[r] -= m.data[m.slot(r, k)] * bk;
            }
        }
        for k in (0..n).rev() {
            let mut s = b[k];
            for j in k + 1..=(k + m.ku + m.kl).min(n - 1) {
                s -= m.data[m.slot(k, j)] * b[j];
            }
            b[k] = s / m.data[m.slot(k, k)];
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}

/// Dense Gaussian elimination with partial pivoting, for tiny systems.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).unwrap();
        if a[p][k] == 0.0 {
            return Err(Error::SingularPivot { row: k });
        }
        a.swap(k, p);
        b.swap(k, p);
        for r in k + 1..n {
            let m = a[r][k] / a[k][k];
            for j in k..n {
                a[r][j] -= m * a[k][j];
            }
            b[r] -= m * b[k];
        }
    }
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * b[j]).sum();
        b[k] = (b[k] - s) / a[k][k];
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_mul(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
        a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
    }

    #[test]
    fn thomas_matches_dense() {
        let lower = [0.0, 1.0, 2.0, -1.0];
        let diag = [4.0, 5.0, 6.0, 7.0];
        let upper = [1.0, -2.0, 0.5, 0.0];
        let rhs = [1.0, 2.0, 3.0, 4.0];
        let x = solve_tridiagonal(&lower, &diag, &upper, &rhs).unwrap();
        let a = vec![
            vec![4.0, 1.0, 0.0, 0.0],
            vec![1.0, 5.0, -2.0, 0.0],
            vec![0.0, 2.0, 6.0, 0.5],
            vec![0.0, 0.0, -1.0, 7.0],
        ];
        let r = dense_mul(&a, &x);
        for (ri, bi) in r.iter().zip(rhs) {
            assert!((ri - bi).abs() < 1e-13);
        }
    }

    #[test]
    fn cyclic_matches_dense() {
        let n = 6;
        let lower = vec![0.3; n];
        let diag = vec![2.0; n];
        let upper = vec![0.7; n];
        let rhs: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let x = solve_cyclic_tridiagonal(&lower, &diag, &upper, &rhs).unwrap();
        for i in 0..n {
            let r = lower[i] * x[(i + n - 1) % n] + diag[i] * x[i] + upper[i] * x[(i + 1) % n];
            assert!((r - rhs[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn band_lu_needs_pivoting() {
        // zero on the first diagonal entry forces a row swap
        let mut m = BandMatrix::zeros(5, 2, 2);
        let rows = [
            [0.0, 2.0, 1.0, 0.0, 0.0],
            [3.0, 1.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, 4.0, 2.0, 1.0],
            [0.0, 1.0, 1.0, 5.0, 2.0],
            [0.0, 0.0, 2.0, 1.0, 3.0],
        ];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if m.in_band(i, j) {
                    m.add(i, j, *v);
                }
            }
        }
        let b = [1.0, -1.0, 2.0, 0.5, 3.0];
        let lu = m.clone().factorize().unwrap();
        let x = lu.solve(&b);
        let r = m.mul_vec(&x);
        for (ri, bi) in r.iter().zip(b) {
            assert!((ri - bi).abs() < 1e-12, "{ri} vs {bi}");
        }
    }

    #[test]
    fn singular_band_is_reported() {
        let m = BandMatrix::zeros(4, 2, 2);
        assert!(matches!(m.factorize(), Err(Error::SingularPivot { row: 0 })));
    }

    proptest! {
        #[test]
        fn band_lu_solves_random_systems(
            n in 5usize..30,
            seed in proptest::collection::vec(-1.0f64..1.0, 150),
        ) {
            let mut m = BandMatrix::zeros(n, 2, 2);
            let mut k = 0;
            for i in 0..n {
                for j in i.saturating_sub(2)..=(i + 2).min(n - 1) {
                    let v = seed[k % seed.len()] + if i == j { 0.3 } else { 0.0 };
                    k += 1;
                    m.add(i, j, v);
                }
            }
            let b: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).cos()).collect();
            if let Ok(lu) = m.clone().factorize() {
                let x = lu.solve(&b);
                let r = m.mul_vec(&x);
                let xs = x.iter().fold(1.0f64, |a, v| a.max(v.abs()));
                for (ri, bi) in r.iter().zip(&b) {
                    prop_assert!((ri - bi).abs() < 1e-9 * xs);
                }
            }
        }
    }
}
