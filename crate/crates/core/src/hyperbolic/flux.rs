//! Two-wave (HLL) numerical flux for the shallow-water system.

use crate::error::{Error, Result};

/// Physical flux `(q, q²/h + g h²/2)` with the dry guard `u = 0` at `h = 0`.
pub fn physical_flux(h: f64, q: f64, g: f64) -> [f64; 2] {
    let u = if h > 0.0 { q / h } else { 0.0 };
    [h * u, h * u * u + 0.5 * g * h * h]
}

/// Left and right signal speeds with two-rarefaction depth estimates and
/// dry-front speeds where one side is empty.
pub fn wave_speeds(hl: f64, ul: f64, hr: f64, ur: f64, g: f64) -> (f64, f64) {
    let cl = (g * hl).sqrt();
    let cr = (g * hr).sqrt();
    if hl <= 0.0 {
        return (ur - 2.0 * cr, ur + cr);
    }
    if hr <= 0.0 {
        return (ul - cl, ul + 2.0 * cl);
    }
    let root = (0.5 * (cl + cr) + 0.25 * (ul - ur)).max(0.0);
    let c_star = root;
    let u_star = 0.5 * (ul + ur) + cl - cr;
    ((ul - cl).min(u_star - c_star), (ur + cr).max(u_star + c_star))
}

/// Flux between the states `(hl, ql)` and `(hr, qr)`.
pub fn numerical_flux(left: [f64; 2], right: [f64; 2], g: f64) -> Result<[f64; 2]> {
    let [hl, ql] = left;
    let [hr, qr] = right;
    if hl < 0.0 || hr < 0.0 {
        return Err(Error::NegativeDepth {
            what: "numerical flux",
            depth: hl.min(hr),
        });
    }
    if left == right {
        return Ok(physical_flux(hl, ql, g));
    }
    if hl == 0.0 && hr == 0.0 {
        return Ok([0.0, 0.0]);
    }
    let ul = if hl > 0.0 { ql / hl } else { 0.0 };
    let ur = if hr > 0.0 { qr / hr } else { 0.0 };
    let (sl, sr) = wave_speeds(hl, ul, hr, ur, g);
    let fl = physical_flux(hl, ql, g);
    let fr = physical_flux(hr, qr, g);
    if sl >= 0.0 {
        return Ok(fl);
    }
    if sr <= 0.0 {
        return Ok(fr);
    }
    let inv = 1.0 / (sr - sl);
    let wl = [hl, hl * ul];
    let wr = [hr, hr * ur];
    let mut f = [0.0; 2];
    for k in 0..2 {
        f[k] = (sr * fl[k] - sl * fr[k] + sl * sr * (wr[k] - wl[k])) * inv;
    }
    Ok(f)
}
