//! Assembly and factorization of `v ↦ v + α h T(v / h)`.

use super::operators::FrozenDepth;
use super::stencil::{FIRST, SECOND};
use crate::bathymetry::Bathymetry;
use crate::error::{check_finite, check_len, Error, Result};
use crate::linalg::{solve_dense, BandLu, BandMatrix};

/// Bits of the depth field a factorization was built from.
pub fn fingerprint(h: &[f64], alpha: f64) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for v in h.iter().chain(std::iter::once(&alpha)) {
        for byte in v.to_bits().to_le_bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
    }
    hash
}

/// Low-rank correction for the wrap-around corners of a periodic system.
#[derive(Debug, Clone)]
struct Corners {
    rows: Vec<usize>,
    /// Sparse corner rows, `(column, value)`.
    entries: Vec<Vec<(usize, f64)>>,
    /// `B⁻¹ U`, one column per corner row.
    z: Vec<Vec<f64>>,
    capacitance: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct EllipticFactorization {
    band: BandMatrix,
    lu: BandLu,
    corners: Option<Corners>,
    n_nodes: usize,
    wet: Vec<bool>,
    fingerprint: u64,
}

impl EllipticFactorization {
    pub fn wet(&self) -> &[bool] {
        &self.wet
    }

    pub fn is_current(&self, h: &[f64], alpha: f64) -> bool {
        fingerprint(h, alpha) == self.fingerprint
    }

    fn unknowns(&self) -> usize {
        self.band.n()
    }

    /// Matrix-vector product with the assembled operator.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_len("elliptic operand", self.n_nodes, v.len())?;
        let n = self.unknowns();
        let mut out = self.band.mul_vec(&v[..n]);
        if let Some(c) = &self.corners {
            for (r, row) in c.rows.iter().zip(&c.entries) {
                out[*r] += row.iter().map(|(j, a)| a * v[*j]).sum::<f64>();
            }
        }
        if n < self.n_nodes {
            out.push(out[0]);
        }
        Ok(out)
    }

    fn solve_unchecked(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.unknowns();
        let mut y = self.lu.solve(&rhs[..n]);
        if let Some(c) = &self.corners {
            let vy: Vec<f64> = c.entries.iter().map(|row| row.iter().map(|(j, a)| a * y[*j]).sum()).collect();
            let t = solve_dense(c.capacitance.clone(), vy).expect("capacitance factored at assembly");
            for (zk, tk) in c.z.iter().zip(&t) {
                for (yi, zi) in y.iter_mut().zip(zk) {
                    *yi -= tk * zi;
                }
            }
        }
        if n < self.n_nodes {
            y.push(y[0]);
        }
        y
    }
}

/// Builds and factorizes the operator for the frozen depth `h`. Nodes with
/// `h ≤ eps_dry` become identity rows and drop out of their neighbours' rows.
pub fn assemble_elliptic(h: &[f64], bathy: &Bathymetry, alpha: f64, eps_dry: f64) -> Result<EllipticFactorization> {
    let depth = FrozenDepth::new(h, bathy)?;
    let active: Vec<bool> = h.iter().map(|&v| v > eps_dry).collect();
    assemble_with(&depth, bathy, alpha, &active)
}

/// Assembly where only `active` nodes take part in the system.
pub(crate) fn assemble_with(depth: &FrozenDepth, bathy: &Bathymetry, alpha: f64, active: &[bool]) -> Result<EllipticFactorization> {
    let h = &depth.h;
    check_finite("nodal depth", h)?;
    let n_nodes = bathy.grid.n_nodes();
    check_len("nodal depth", n_nodes, h.len())?;
    check_len("active nodes", n_nodes, active.len())?;
    let bc = bathy.bc;
    let periodic = bc.is_periodic();
    let n = if periodic { n_nodes - 1 } else { n_nodes };
    let last = n_nodes as isize - 1;
    let dx = bathy.dx();
    let wet = active.to_vec();

    let mut band = BandMatrix::zeros(n, 2, 2);
    let mut corner_rows: Vec<(usize, Vec<(usize, f64)>)> = Vec::new();
    for i in 0..n {
        if !wet[i] {
            band.set_row_identity(i);
            continue;
        }
        let hi = h[i];
        let diag_extra = depth.dzeta[i] * bathy.db[i] + 0.5 * hi * bathy.d2b[i];
        let mut corner: Vec<(usize, f64)> = Vec::new();
        band.add(i, i, 1.0);
        for (k, off) in (-2isize..=2).enumerate() {
            let mut t = -hi * hi / 3.0 * SECOND[k] / (12.0 * dx * dx) - hi * depth.dh[i] * FIRST[k] / (12.0 * dx);
            if off == 0 {
                t += diag_extra;
            }
            let m = i as isize + off;
            let (col, sign) = if periodic {
                (m.rem_euclid(n as isize) as usize, 1.0)
            } else if m < 0 {
                ((-m) as usize, bc.mirror_sign(false, crate::boundary::Parity::Odd))
            } else if m > last {
                ((2 * last - m) as usize, bc.mirror_sign(true, crate::boundary::Parity::Odd))
            } else {
                (m as usize, 1.0)
            };
            if !wet[col] {
                continue;
            }
            let value = alpha * hi * t * sign / h[col];
            if band.in_band(i, col) {
                band.add(i, col, value);
            } else {
                corner.push((col, value));
            }
        }
        if !corner.is_empty() {
            corner_rows.push((i, corner));
        }
    }

    let lu = band.clone().factorize()?;
    let corners = if corner_rows.is_empty() {
        None
    } else {
        let rows: Vec<usize> = corner_rows.iter().map(|(r, _)| *r).collect();
        let entries: Vec<Vec<(usize, f64)>> = corner_rows.into_iter().map(|(_, e)| e).collect();
        let z: Vec<Vec<f64>> = rows
            .iter()
            .map(|&r| {
                let mut e = vec![0.0; n];
                e[r] = 1.0;
                lu.solve(&e)
            })
            .collect();
        let k = rows.len();
        let capacitance: Vec<Vec<f64>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let vz: f64 = entries[a].iter().map(|(j, v)| v * z[b][*j]).sum();
                        vz + if a == b { 1.0 } else { 0.0 }
                    })
                    .collect()
            })
            .collect();
        // fail early if the corner correction is singular
        solve_dense(capacitance.clone(), vec![0.0; k]).map_err(|_| Error::SingularPivot { row: rows[0] })?;
        Some(Corners {
            rows,
            entries,
            z,
            capacitance,
        })
    };
    Ok(EllipticFactorization {
        band,
        lu,
        corners,
        n_nodes,
        wet,
        fingerprint: fingerprint(h, alpha),
    })
}

/// Solves `(I + α h T(·/h)) z = rhs` for the depth `h` the factorization was built from.
pub fn solve_elliptic(fact: &EllipticFactorization, h: &[f64], alpha: f64, rhs: &[f64]) -> Result<Vec<f64>> {
    if !fact.is_current(h, alpha) {
        return Err(Error::StaleFactorization);
    }
    check_len("elliptic right-hand side", fact.n_nodes, rhs.len())?;
    check_finite("elliptic right-hand side", rhs)?;
    let mut r = rhs.to_vec();
    for (v, w) in r.iter_mut().zip(&fact.wet) {
        if !w {
            *v = 0.0;
        }
    }
    let z = fact.solve_unchecked(&r);
    check_finite("elliptic solution", &z)?;
    Ok(z)
}
