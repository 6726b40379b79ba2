//! Named test cases with their recommended numerical settings.

use std::path::PathBuf;

use super::beach::{build_bathymetry, lake_at_rest, BathymetryKind, Side};
use super::reference::{load_reference_wave, ReferenceWave};
use super::solitary::SolitaryWaveParams;
use crate::bathymetry::Bathymetry;
use crate::boundary::{Boundaries, Parity};
use crate::config::{default_breaking_floor, SolverConfig, TimeStepPolicy};
use crate::convert::node_to_cell;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::state::CellState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    /// Still water, flat or over a slope.
    Rest,
    /// Solitary wave on a flat periodic channel.
    Solitary,
    /// Dam break in a closed flat channel, optionally onto a dry bed.
    DamBreak,
    /// Solitary wave running up a 1:50 slope closed by a wall.
    WallReflection,
    /// Solitary wave shoaling on a 1:30 beach.
    Shoaling,
    /// Breaking solitary wave running up a 1:19.85 beach.
    Synolakis,
    /// Imported periodic wave over one wavelength.
    PeriodicWave,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 7] = [
        ScenarioKind::Rest,
        ScenarioKind::Solitary,
        ScenarioKind::DamBreak,
        ScenarioKind::WallReflection,
        ScenarioKind::Shoaling,
        ScenarioKind::Synolakis,
        ScenarioKind::PeriodicWave,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Rest => "rest",
            ScenarioKind::Solitary => "solitary",
            ScenarioKind::DamBreak => "dam_break",
            ScenarioKind::WallReflection => "wall_reflection",
            ScenarioKind::Shoaling => "shoaling",
            ScenarioKind::Synolakis => "synolakis",
            ScenarioKind::PeriodicWave => "periodic_wave",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Optional overrides of a preset; `None` keeps the preset value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioParams {
    pub h0: Option<f64>,
    pub amplitude: Option<f64>,
    pub center: Option<f64>,
    pub direction: Option<f64>,
    pub zeta0: Option<f64>,
    pub slope: Option<f64>,
    pub toe: Option<f64>,
    pub shore: Option<Side>,
    pub wall: Option<bool>,
    pub h_left: Option<f64>,
    pub h_right: Option<f64>,
    pub dam: Option<f64>,
    pub reference: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GridSpec {
    pub x0: Option<f64>,
    pub length: Option<f64>,
    pub cells: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Recommended {
    pub time_step: TimeStepPolicy,
    pub t_end: f64,
    pub gauges: Vec<f64>,
    pub friction: f64,
    /// Breaking halo in cells, when the solver default is too narrow for the grid.
    pub breaking_halo: Option<usize>,
    /// Multiplier on the default dissipation floor, for grids where the
    /// discrete energy balance of a smooth wave is noisier than the default allows.
    pub floor_scale: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub grid: Grid,
    pub bathy: Bathymetry,
    pub initial: CellState,
    pub bc: Boundaries,
    pub h0: f64,
    pub recommended: Recommended,
    pub solitary: Option<SolitaryWaveParams>,
    pub reference: Option<ReferenceWave>,
}

impl Scenario {
    /// Default solver settings with this scenario's recommendations applied.
    pub fn solver_config(&self, g: f64) -> SolverConfig {
        let mut cfg = SolverConfig::new(self.h0, self.bc);
        cfg.g = g;
        cfg.breaking_floor = default_breaking_floor(cfg.rho, g, self.h0) * self.recommended.floor_scale.unwrap_or(1.0);
        cfg.time_step = self.recommended.time_step;
        cfg.friction = self.recommended.friction;
        if let Some(halo) = self.recommended.breaking_halo {
            cfg.breaking_halo = halo;
        }
        cfg
    }
}

struct Layout {
    h0: f64,
    x0: f64,
    length: f64,
    cells: usize,
    bottom: BathymetryKind,
    bc: Boundaries,
    recommended: Recommended,
}

fn slope_or_flat(p: &ScenarioParams, ratio: Option<f64>, toe: f64, shore: Side, wall: bool) -> BathymetryKind {
    match p.slope.or(ratio) {
        Some(ratio) => BathymetryKind::Slope {
            ratio,
            toe: p.toe.unwrap_or(toe),
            shore: p.shore.unwrap_or(shore),
            wall: p.wall.unwrap_or(wall),
        },
        None => BathymetryKind::Flat,
    }
}

fn layout(kind: ScenarioKind, p: &ScenarioParams, g: f64) -> Layout {
    let cfl = |c: f64| TimeStepPolicy::Cfl(c);
    let rec = |time_step, t_end, gauges: Vec<f64>, friction| Recommended {
        time_step,
        t_end,
        gauges,
        friction,
        breaking_halo: None,
        floor_scale: None,
    };
    match kind {
        ScenarioKind::Rest => {
            let bottom = slope_or_flat(p, None, 5.0, Side::Right, true);
            let bc = match bottom {
                BathymetryKind::Flat => Boundaries::walls(),
                _ => bottom.boundaries(),
            };
            Layout {
                h0: 1.0,
                x0: 0.0,
                length: 10.0,
                cells: 100,
                bottom,
                bc,
                recommended: rec(cfl(1.0), 1.0, vec![], 0.0),
            }
        }
        ScenarioKind::Solitary => Layout {
            h0: 0.5,
            x0: 0.0,
            length: 30.0,
            cells: 300,
            bottom: BathymetryKind::Flat,
            bc: Boundaries::periodic(),
            recommended: rec(cfl(1.0), 3.0, vec![20.0], 0.0),
        },
        ScenarioKind::DamBreak => Layout {
            h0: p.h_left.unwrap_or(1.0),
            x0: 0.0,
            length: 10.0,
            cells: 1000,
            bottom: BathymetryKind::Flat,
            bc: Boundaries::walls(),
            // the front spans many cells on this fine grid; keep dispersion off about 0.2 h0 around it
            recommended: Recommended {
                breaking_halo: Some(20),
                ..rec(cfl(0.5), 0.5, vec![], 0.0)
            },
        },
        ScenarioKind::WallReflection => {
            let bottom = slope_or_flat(p, Some(50.0), 15.0, Side::Left, true);
            Layout {
                h0: 0.7,
                x0: 0.0,
                length: 60.0,
                cells: 500,
                bottom,
                bc: bottom.boundaries(),
                recommended: rec(TimeStepPolicy::Fixed(0.05), 40.0, vec![17.75], 0.0),
            }
        }
        ScenarioKind::Shoaling => {
            let bottom = slope_or_flat(p, Some(30.0), 26.0, Side::Right, true);
            let h0 = p.h0.unwrap_or(0.25);
            let shore = bottom_shoreline(&bottom, h0).unwrap_or(33.5);
            let gauges = [2.430, 2.215, 1.960, 1.740, 1.502].iter().map(|d| shore - d).collect();
            Layout {
                h0: 0.25,
                x0: 0.0,
                length: 36.0,
                cells: 1440,
                bottom,
                bc: bottom.boundaries(),
                recommended: rec(TimeStepPolicy::Fixed(0.016), 16.0, gauges, 0.0),
            }
        }
        ScenarioKind::Synolakis => {
            let bottom = slope_or_flat(p, Some(19.85), 20.0, Side::Right, true);
            let h0 = p.h0.unwrap_or(0.3);
            Layout {
                h0: 0.3,
                x0: 0.0,
                length: 36.0,
                cells: 450,
                bottom,
                bc: bottom.boundaries(),
                // the wave is only ~5 cells wide, so truncation noise in the energy
                // balance of the unbroken wave reaches several times the default floor
                recommended: Recommended {
                    floor_scale: Some(5.0),
                    ..rec(TimeStepPolicy::Fixed(0.02), 70.0 * (h0 / g).sqrt(), vec![], 0.002)
                },
            }
        }
        ScenarioKind::PeriodicWave => Layout {
            h0: 1.0,
            x0: 0.0,
            length: 2.0,
            cells: 50,
            bottom: BathymetryKind::Flat,
            bc: Boundaries::periodic(),
            recommended: rec(TimeStepPolicy::Fixed(0.03), 0.0, vec![], 0.0),
        },
    }
}

fn bottom_shoreline(bottom: &BathymetryKind, h0: f64) -> Option<f64> {
    match *bottom {
        BathymetryKind::Slope { toe, shore, .. } => {
            let d = bottom.shoreline_offset(h0)?;
            Some(if shore == Side::Right { toe + d } else { toe - d })
        }
        BathymetryKind::Flat => None,
    }
}

/// Builds a scenario, applying the overrides in `params` and `grid` and, if
/// given, replacing the preset boundaries.
pub fn build_scenario(
    kind: ScenarioKind,
    params: &ScenarioParams,
    grid_spec: GridSpec,
    bc: Option<Boundaries>,
    g: f64,
) -> Result<Scenario> {
    let mut lay = layout(kind, params, g);
    let reference = match (kind, &params.reference) {
        (ScenarioKind::PeriodicWave, Some(path)) => Some(load_reference_wave(path)?),
        (ScenarioKind::PeriodicWave, None) => return Err(Error::Config("periodic_wave needs `reference` pointing at a wave file".into())),
        _ => None,
    };
    if let Some(r) = &reference {
        lay.h0 = r.h0;
        lay.x0 = r.x[0];
        lay.length = r.x[r.x.len() - 1] - r.x[0];
        lay.recommended.t_end = 25.0 * r.period;
    }
    let h0 = params.h0.unwrap_or(lay.h0);
    let grid = Grid::with_length(
        grid_spec.x0.unwrap_or(lay.x0),
        grid_spec.length.unwrap_or(lay.length),
        grid_spec.cells.unwrap_or(lay.cells),
    )?;
    let bc = bc.unwrap_or(lay.bc);
    bc.validate()?;
    let bathy = build_bathymetry(lay.bottom, &grid, h0, bc)?;
    let x_mid = grid.x0() + 0.5 * grid.length();
    let mut solitary = None;
    let initial = match kind {
        ScenarioKind::Rest => lake_at_rest(&bathy, params.zeta0.unwrap_or(0.0)),
        ScenarioKind::DamBreak => {
            let dam = params.dam.unwrap_or(x_mid);
            let hl = params.h_left.unwrap_or(h0);
            let hr = params.h_right.unwrap_or(0.0);
            if !(hl >= 0.0 && hr >= 0.0) {
                return Err(Error::Config("dam-break depths must be non-negative".into()));
            }
            let h = grid.centers().iter().map(|&x| if x < dam { hl } else { hr }).collect();
            CellState {
                h,
                q: vec![0.0; grid.n_cells()],
            }
        }
        ScenarioKind::PeriodicWave => {
            let r = reference.as_ref().expect("loaded above");
            let (h_nodes, u_nodes) = r.on_grid(&grid)?;
            let q_nodes: Vec<f64> = h_nodes.iter().zip(&u_nodes).map(|(h, u)| h * u).collect();
            CellState {
                h: node_to_cell(&h_nodes, bc, Parity::Even)?,
                q: node_to_cell(&q_nodes, bc, Parity::Odd)?,
            }
        }
        ScenarioKind::Solitary | ScenarioKind::WallReflection | ScenarioKind::Shoaling | ScenarioKind::Synolakis => {
            let (ratio, center, direction) = match kind {
                ScenarioKind::Solitary => (0.2, x_mid, 1.0),
                ScenarioKind::WallReflection => (0.1, 50.0, -1.0),
                ScenarioKind::Shoaling => (0.096, 8.0, 1.0),
                _ => (0.28, 15.0, 1.0),
            };
            let wave = SolitaryWaveParams {
                h0,
                amplitude: params.amplitude.unwrap_or(ratio * h0),
                x_center: params.center.unwrap_or(center),
                direction: params.direction.unwrap_or(direction),
                g,
            };
            wave.validate()?;
            let exact = wave.cell_state(&grid, 0.0, bc.is_periodic());
            let h: Vec<f64> = exact.h.iter().zip(&bathy.b_cell).map(|(h, b)| (h - b).max(0.0)).collect();
            let q = exact.q.iter().zip(&h).map(|(q, h)| if *h > 0.0 { *q } else { 0.0 }).collect();
            solitary = Some(wave);
            CellState { h, q }
        }
    };
    Ok(Scenario {
        kind,
        grid,
        bathy,
        initial,
        bc,
        h0,
        recommended: lay.recommended,
        solitary,
        reference,
    })
}
