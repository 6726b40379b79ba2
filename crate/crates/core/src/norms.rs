use crate::error::{check_len, Error, Result};

pub fn linf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `‖num − reference‖∞ / ‖normalizer‖∞`.
pub fn linf_rel_error(num: &[f64], reference: &[f64], normalizer: &[f64]) -> Result<f64> {
    check_len("reference field", num.len(), reference.len())?;
    let scale = linf(normalizer);
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::ZeroNormalizer);
    }
    let diff = num.iter().zip(reference).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    Ok(diff / scale)
}

/// Velocity-error normalizer floored so that near-rest references stay usable.
pub fn velocity_scale(u_reference: &[f64], g: f64, h0: f64) -> f64 {
    linf(u_reference).max(1e-12 * (g * h0).sqrt())
}
