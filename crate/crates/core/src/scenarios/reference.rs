//! Import of externally computed periodic waves.
//!
//! Format: comment lines `# T=<s> c=<m/s> h0=<m>` followed by `x,h,u` rows
//! (an optional `x,h,u` header row is skipped).

use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::Grid;

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceWave {
    pub period: f64,
    pub celerity: f64,
    pub h0: f64,
    pub x: Vec<f64>,
    pub h: Vec<f64>,
    pub u: Vec<f64>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Reference(msg.into())
}

pub fn parse_reference_wave(text: &str) -> Result<ReferenceWave> {
    let (mut period, mut celerity, mut h0) = (None, None, None);
    let (mut x, mut h, mut u) = (Vec::new(), Vec::new(), Vec::new());
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            for token in meta.split_whitespace() {
                let Some((k, v)) = token.split_once('=') else { continue };
                let value = || v.parse::<f64>().map_err(|_| bad(format!("line {}: bad value for {k}", n + 1)));
                match k {
                    "T" => period = Some(value()?),
                    "c" => celerity = Some(value()?),
                    "h0" => h0 = Some(value()?),
                    _ => {}
                }
            }
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 3 {
            return Err(bad(format!("line {}: expected 3 columns x,h,u", n + 1)));
        }
        if x.is_empty() && cols[0].parse::<f64>().is_err() {
            continue;
        }
        let parse = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("line {}: `{s}` is not a number", n + 1)));
        x.push(parse(cols[0])?);
        h.push(parse(cols[1])?);
        u.push(parse(cols[2])?);
    }
    let period = period.ok_or_else(|| bad("missing period `T=` in header"))?;
    let celerity = celerity.ok_or_else(|| bad("missing celerity `c=` in header"))?;
    let h0 = h0.ok_or_else(|| bad("missing still-water depth `h0=` in header"))?;
    if !(period > 0.0 && celerity > 0.0 && h0 > 0.0) {
        return Err(bad("T, c and h0 must be positive"));
    }
    if x.len() < 5 {
        return Err(bad("need at least 5 samples"));
    }
    if x.windows(2).any(|w| w[1] <= w[0]) {
        return Err(bad("x must be strictly increasing"));
    }
    if h.iter().any(|&v| !(v >= 0.0)) {
        return Err(bad("negative or invalid depth"));
    }
    Ok(ReferenceWave {
        period,
        celerity,
        h0,
        x,
        h,
        u,
    })
}

pub fn load_reference_wave(path: &Path) -> Result<ReferenceWave> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    parse_reference_wave(&text)
}

impl ReferenceWave {
    /// Quartic interpolation through the five samples nearest to `at`.
    pub fn interpolate(&self, field: &[f64], at: f64) -> Result<f64> {
        let n = self.x.len();
        let span = self.x[n - 1] - self.x[0];
        if at < self.x[0] - 1e-9 * span || at > self.x[n - 1] + 1e-9 * span {
            return Err(bad(format!("position {at} outside the reference data")));
        }
        let k = self.x.partition_point(|&v| v < at);
        let start = k.saturating_sub(2).min(n - 5);
        let xs = &self.x[start..start + 5];
        let fs = &field[start..start + 5];
        let mut sum = 0.0;
        for i in 0..5 {
            let mut w = 1.0;
            for j in 0..5 {
                if i != j {
                    w *= (at - xs[j]) / (xs[i] - xs[j]);
                }
            }
            sum += w * fs[i];
        }
        Ok(sum)
    }

    /// Depth and velocity at the nodes of `grid`.
    pub fn on_grid(&self, grid: &Grid) -> Result<(Vec<f64>, Vec<f64>)> {
        let nodes = grid.nodes();
        let h = nodes.iter().map(|&x| self.interpolate(&self.h, x)).collect::<Result<Vec<_>>>()?;
        let u = nodes.iter().map(|&x| self.interpolate(&self.u, x)).collect::<Result<Vec<_>>>()?;
        Ok((h, u))
    }
}
