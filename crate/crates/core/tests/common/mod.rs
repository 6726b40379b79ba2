//! Independent reference solutions shared by the integration tests.
#![allow(dead_code)]

/// Exact solution of the shallow-water Riemann problem over a flat bed.
#[derive(Debug, Clone, Copy)]
pub struct Riemann {
    pub hl: f64,
    pub ul: f64,
    pub hr: f64,
    pub ur: f64,
    pub g: f64,
}

impl Riemann {
    fn wave_curve(&self, h: f64, hk: f64) -> (f64, f64) {
        let g = self.g;
        if h <= hk {
            let f = 2.0 * ((g * h).sqrt() - (g * hk).sqrt());
            (f, (g / h).sqrt())
        } else {
            let s = (0.5 * g * (h + hk) / (h * hk)).sqrt();
            let f = (h - hk) * s;
            let ds = -0.25 * g / (h * h * s);
            (f, s + (h - hk) * ds)
        }
    }

    /// Intermediate depth and velocity; panics if the state is dry between two rarefactions.
    pub fn star(&self) -> (f64, f64) {
        assert!(self.hl > 0.0 && self.hr > 0.0, "star state only for wet-wet problems");
        let mut h = 0.5 * (self.hl + self.hr);
        for _ in 0..100 {
            let (fl, dl) = self.wave_curve(h, self.hl);
            let (fr, dr) = self.wave_curve(h, self.hr);
            let f = fl + fr + self.ur - self.ul;
            let step = f / (dl + dr);
            h = (h - step).max(1e-14);
            if step.abs() < 1e-15 * h {
                break;
            }
        }
        let (fl, _) = self.wave_curve(h, self.hl);
        let (fr, _) = self.wave_curve(h, self.hr);
        (h, 0.5 * (self.ul + self.ur) + 0.5 * (fr - fl))
    }

    /// Speed of the right-going shock, if the right wave is one.
    pub fn right_shock_speed(&self) -> Option<f64> {
        let (hs, us) = self.star();
        (hs > self.hr).then(|| (hs * us - self.hr * self.ur) / (hs - self.hr))
    }

    /// Depth and velocity at similarity coordinate `xi = (x − x_dam)/t`.
    pub fn sample(&self, xi: f64) -> (f64, f64) {
        let g = self.g;
        let cl = (g * self.hl).sqrt();
        if self.hr == 0.0 {
            let head = self.ul - cl;
            let front = self.ul + 2.0 * cl;
            return if xi <= head {
                (self.hl, self.ul)
            } else if xi >= front {
                (0.0, 0.0)
            } else {
                let c = (self.ul + 2.0 * cl - xi) / 3.0;
                (c * c / g, xi + c)
            };
        }
        let cr = (g * self.hr).sqrt();
        let (hs, us) = self.star();
        let cs = (g * hs).sqrt();
        if xi <= us {
            if hs > self.hl {
                let s = self.ul - cl * (0.5 * (hs + self.hl) * hs / (self.hl * self.hl)).sqrt();
                if xi <= s {
                    (self.hl, self.ul)
                } else {
                    (hs, us)
                }
            } else if xi <= self.ul - cl {
                (self.hl, self.ul)
            } else if xi >= us - cs {
                (hs, us)
            } else {
                let c = (self.ul + 2.0 * cl - xi) / 3.0;
                (c * c / g, xi + c)
            }
        } else if hs > self.hr {
            let s = self.ur + cr * (0.5 * (hs + self.hr) * hs / (self.hr * self.hr)).sqrt();
            if xi >= s {
                (self.hr, self.ur)
            } else {
                (hs, us)
            }
        } else if xi >= self.ur + cr {
            (self.hr, self.ur)
        } else if xi <= us + cs {
            (hs, us)
        } else {
            let c = (xi - self.ur + 2.0 * cr) / 3.0;
            (c * c / g, xi - c)
        }
    }
}

/// Complex Fourier coefficient of `f` at wavenumber `k` from equispaced
/// periodic samples at `x` (rectangle rule, exact for trigonometric polynomials).
pub fn fourier_coefficient(x: &[f64], f: &[f64], k: f64) -> (f64, f64) {
    let n = f.len() as f64;
    let (mut re, mut im) = (0.0, 0.0);
    for (xi, fi) in x.iter().zip(f) {
        re += fi * (k * xi).cos();
        im -= fi * (k * xi).sin();
    }
    (2.0 * re / n, 2.0 * im / n)
}

/// Least-squares line through `(x, y)`; returns (intercept, slope).
pub fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

/// Least-squares `y ≈ a + b x + c x²`, returned as (a, b, c).
pub fn fit_quadratic(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let mut m = [[0.0f64; 4]; 3];
    for (&xi, &yi) in x.iter().zip(y) {
        let p = [1.0, xi, xi * xi];
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] += p[r] * p[c];
            }
            m[r][3] += p[r] * yi;
        }
    }
    for col in 0..3 {
        let piv = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        m.swap(col, piv);
        for r in 0..3 {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..4 {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    (m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2])
}
