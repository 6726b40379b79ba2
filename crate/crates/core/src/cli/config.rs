//! Run configuration: a line-based `[section]` / `key = value` format.
//!
//! ```text
//! [solver]
//! alpha = 1.159          # >= 1
//! g = 9.81
//! rho = 1000
//! friction = 0           # preset value when absent
//! eps_dry = 1e-5
//! cfl = 1                # or: dt = 0.02 (not both)
//! breaking_theta = 0.5
//! breaking_floor = auto  # 1e-3 rho g h0 sqrt(g h0), raised by some presets
//! breaking_halo = 3      # some presets widen it
//! bc_left = periodic     # periodic | wall | open; give both or neither
//! bc_right = periodic
//!
//! [grid]
//! x0 = 0
//! length = 30
//! cells = 300
//!
//! [scenario]
//! name = solitary        # the only mandatory key
//! h0 = 0.5
//! amplitude = 0.1
//! center = 15
//! direction = 1
//! zeta0 = 0
//! slope = 30             # beach as 1:slope
//! toe = 26
//! shore = right
//! wall = true
//! h_left = 1
//! h_right = 0
//! dam = 5
//! reference = wave.csv   # relative to the config file
//!
//! [run]
//! t_end = 3
//! output_dir = output
//! snapshot_interval = 0.5
//! gauges = 10, 20
//! ```
//!
//! Keys left out take the scenario preset's value.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::boundary::{Boundaries, BoundaryKind};
use crate::config::{
    default_breaking_floor, SolverConfig, TimeStepPolicy, DEFAULT_ALPHA, DEFAULT_EPS_DRY, DEFAULT_G, DEFAULT_HALO, DEFAULT_RHO,
    DEFAULT_THETA,
};
use crate::error::{Error, Result};
use crate::grid::MIN_CELLS;
use crate::scenarios::beach::Side;
use crate::scenarios::presets::GridSpec;
use crate::scenarios::{build_scenario, Scenario, ScenarioKind, ScenarioParams};
use crate::timeloop::RunSettings;

pub const DEFAULT_OUTPUT_DIR: &str = "output";

#[derive(Debug, Clone, PartialEq)]
pub struct SolverSection {
    pub alpha: f64,
    pub g: f64,
    pub rho: f64,
    pub friction: Option<f64>,
    pub eps_dry: f64,
    pub time_step: Option<TimeStepPolicy>,
    pub breaking_theta: f64,
    /// `None` means the depth-scaled default.
    pub breaking_floor: Option<f64>,
    /// `None` means the preset's recommendation, else the solver default.
    pub breaking_halo: Option<usize>,
    pub bc: Option<Boundaries>,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
            g: DEFAULT_G,
            rho: DEFAULT_RHO,
            friction: None,
            eps_dry: DEFAULT_EPS_DRY,
            time_step: None,
            breaking_theta: DEFAULT_THETA,
            breaking_floor: None,
            breaking_halo: None,
            bc: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub solver: SolverSection,
    pub grid: GridSpec,
    pub scenario: ScenarioKind,
    pub params: ScenarioParams,
    pub t_end: Option<f64>,
    pub output_dir: PathBuf,
    pub snapshot_interval: Option<f64>,
    pub gauges: Option<Vec<f64>>,
}

/// Everything needed to start a run.
#[derive(Debug, Clone)]
pub struct PreparedRun {
    pub scenario: Scenario,
    pub solver: SolverConfig,
    pub settings: RunSettings,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(line: usize, key: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .parse()
        .map_err(|_| err(line, format!("{key}: expected a number, got `{value}`")))?;
    if !v.is_finite() {
        return Err(err(line, format!("{key}: must be finite")));
    }
    Ok(v)
}

fn checked(line: usize, key: &str, value: &str, ok: impl Fn(f64) -> bool, rule: &str) -> Result<f64> {
    let v = number(line, key, value)?;
    if ok(v) {
        Ok(v)
    } else {
        Err(err(line, format!("{key} = {value}: must be {rule}")))
    }
}

fn count(line: usize, key: &str, value: &str) -> Result<usize> {
    value
        .parse()
        .map_err(|_| err(line, format!("{key}: expected a non-negative integer, got `{value}`")))
}

fn boundary(line: usize, key: &str, value: &str) -> Result<BoundaryKind> {
    BoundaryKind::parse(value).ok_or_else(|| err(line, format!("{key}: expected periodic, wall or open, got `{value}`")))
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut solver = SolverSection::default();
    let mut grid = GridSpec::default();
    let mut params = ScenarioParams::default();
    let mut scenario = None;
    let mut t_end = None;
    let mut output_dir = PathBuf::from(DEFAULT_OUTPUT_DIR);
    let mut snapshot_interval = None;
    let mut gauges = None;
    let (mut cfl, mut dt) = (None, None);
    let (mut bc_left, mut bc_right) = (None, None);
    let mut section = String::new();
    let mut seen = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| err(line, "unterminated section header"))?
                .trim();
            if !matches!(name, "solver" | "grid" | "scenario" | "run") {
                return Err(err(line, format!("unknown section [{name}]")));
            }
            section = name.to_string();
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(line, format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if section.is_empty() {
            return Err(err(line, format!("{key}: key outside of any section")));
        }
        if !seen.insert(format!("{section}.{key}")) {
            return Err(err(line, format!("{key}: given twice in [{section}]")));
        }
        let positive = |v: f64| v > 0.0;
        let non_negative = |v: f64| v >= 0.0;
        match (section.as_str(), key) {
            ("solver", "alpha") => solver.alpha = checked(line, key, value, |v| v >= 1.0, ">= 1")?,
            ("solver", "g") => solver.g = checked(line, key, value, positive, "> 0")?,
            ("solver", "rho") => solver.rho = checked(line, key, value, positive, "> 0")?,
            ("solver", "friction") => solver.friction = Some(checked(line, key, value, non_negative, ">= 0")?),
            ("solver", "eps_dry") => solver.eps_dry = checked(line, key, value, positive, "> 0")?,
            ("solver", "cfl") => cfl = Some((line, checked(line, key, value, positive, "> 0")?)),
            ("solver", "dt") => dt = Some((line, checked(line, key, value, positive, "> 0")?)),
            ("solver", "breaking_theta") => solver.breaking_theta = checked(line, key, value, |v| v > 0.0 && v <= 1.0, "in (0, 1]")?,
            ("solver", "breaking_floor") => {
                solver.breaking_floor = match value {
                    "auto" => None,
                    _ => Some(checked(line, key, value, non_negative, ">= 0 or `auto`")?),
                }
            }
            ("solver", "breaking_halo") => solver.breaking_halo = Some(count(line, key, value)?),
            ("solver", "bc_left") => bc_left = Some((line, boundary(line, key, value)?)),
            ("solver", "bc_right") => bc_right = Some((line, boundary(line, key, value)?)),
            ("grid", "x0") => grid.x0 = Some(number(line, key, value)?),
            ("grid", "length") => grid.length = Some(checked(line, key, value, positive, "> 0")?),
            ("grid", "cells") => {
                let n = count(line, key, value)?;
                if n < MIN_CELLS {
                    return Err(err(line, format!("cells = {n}: must be >= {MIN_CELLS}")));
                }
                grid.cells = Some(n);
            }
            ("scenario", "name") => {
                scenario = Some(ScenarioKind::parse(value).ok_or_else(|| {
                    let names: Vec<_> = ScenarioKind::ALL.iter().map(|k| k.name()).collect();
                    err(
                        line,
                        format!("name: unknown scenario `{value}`, expected one of {}", names.join(", ")),
                    )
                })?)
            }
            ("scenario", "h0") => params.h0 = Some(checked(line, key, value, positive, "> 0")?),
            ("scenario", "amplitude") => params.amplitude = Some(checked(line, key, value, positive, "> 0")?),
            ("scenario", "center") => params.center = Some(number(line, key, value)?),
            ("scenario", "direction") => params.direction = Some(checked(line, key, value, |v| v == 1.0 || v == -1.0, "1 or -1")?),
            ("scenario", "zeta0") => params.zeta0 = Some(number(line, key, value)?),
            ("scenario", "slope") => params.slope = Some(checked(line, key, value, positive, "> 0")?),
            ("scenario", "toe") => params.toe = Some(number(line, key, value)?),
            ("scenario", "shore") => {
                params.shore = Some(Side::parse(value).ok_or_else(|| err(line, format!("shore: expected left or right, got `{value}`")))?)
            }
            ("scenario", "wall") => {
                params.wall = Some(
                    value
                        .parse()
                        .map_err(|_| err(line, format!("wall: expected true or false, got `{value}`")))?,
                )
            }
            ("scenario", "h_left") => params.h_left = Some(checked(line, key, value, non_negative, ">= 0")?),
            ("scenario", "h_right") => params.h_right = Some(checked(line, key, value, non_negative, ">= 0")?),
            ("scenario", "dam") => params.dam = Some(number(line, key, value)?),
            ("scenario", "reference") => params.reference = Some(PathBuf::from(value)),
            ("run", "t_end") => t_end = Some(checked(line, key, value, non_negative, ">= 0")?),
            ("run", "output_dir") => output_dir = PathBuf::from(value),
            ("run", "snapshot_interval") => snapshot_interval = Some(checked(line, key, value, positive, "> 0")?),
            ("run", "gauges") => {
                gauges = Some(
                    value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| number(line, key, s))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            _ => return Err(err(line, format!("unknown key `{key}` in [{section}]"))),
        }
    }

    solver.time_step = match (cfl, dt) {
        (Some(_), Some((line, _))) => return Err(err(line, "dt: cfl and dt are mutually exclusive")),
        (Some((_, c)), None) => Some(TimeStepPolicy::Cfl(c)),
        (None, Some((_, d))) => Some(TimeStepPolicy::Fixed(d)),
        (None, None) => None,
    };
    solver.bc = match (bc_left, bc_right) {
        (Some((_, l)), Some((line, r))) => Some(Boundaries::new(l, r).map_err(|e| err(line, format!("bc_left/bc_right: {e}")))?),
        (Some((line, _)), None) | (None, Some((line, _))) => return Err(err(line, "bc_left and bc_right must be given together")),
        (None, None) => None,
    };
    let scenario = scenario.ok_or_else(|| err(0, "missing mandatory key `name` in [scenario]"))?;
    Ok(RunConfig {
        solver,
        grid,
        scenario,
        params,
        t_end,
        output_dir,
        snapshot_interval,
        gauges,
    })
}

/// Reads a config file; a relative `reference` path is taken relative to it.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    let mut cfg = parse_config(&text)?;
    if let Some(r) = &cfg.params.reference {
        if r.is_relative() {
            if let Some(dir) = path.parent() {
                cfg.params.reference = Some(dir.join(r));
            }
        }
    }
    Ok(cfg)
}

impl RunConfig {
    pub fn minimal(scenario: ScenarioKind) -> Self {
        Self {
            solver: SolverSection::default(),
            grid: GridSpec::default(),
            scenario,
            params: ScenarioParams::default(),
            t_end: None,
            output_dir: PathBuf::from(DEFAULT_OUTPUT_DIR),
            snapshot_interval: None,
            gauges: None,
        }
    }

    /// Text that `parse_config` reads back into an equal config.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let s_ = &mut s;
        let sv = &self.solver;
        let _ = writeln!(s_, "[solver]");
        let _ = writeln!(s_, "alpha = {:?}", sv.alpha);
        let _ = writeln!(s_, "g = {:?}", sv.g);
        let _ = writeln!(s_, "rho = {:?}", sv.rho);
        if let Some(f) = sv.friction {
            let _ = writeln!(s_, "friction = {f:?}");
        }
        let _ = writeln!(s_, "eps_dry = {:?}", sv.eps_dry);
        match sv.time_step {
            Some(TimeStepPolicy::Cfl(c)) => drop(writeln!(s_, "cfl = {c:?}")),
            Some(TimeStepPolicy::Fixed(d)) => drop(writeln!(s_, "dt = {d:?}")),
            None => {}
        }
        let _ = writeln!(s_, "breaking_theta = {:?}", sv.breaking_theta);
        match sv.breaking_floor {
            Some(f) => drop(writeln!(s_, "breaking_floor = {f:?}")),
            None => drop(writeln!(s_, "breaking_floor = auto")),
        }
        if let Some(halo) = sv.breaking_halo {
            let _ = writeln!(s_, "breaking_halo = {halo}");
        }
        if let Some(bc) = sv.bc {
            let _ = writeln!(s_, "bc_left = {}", bc.left.name());
            let _ = writeln!(s_, "bc_right = {}", bc.right.name());
        }

        let _ = writeln!(s_, "\n[grid]");
        if let Some(v) = self.grid.x0 {
            let _ = writeln!(s_, "x0 = {v:?}");
        }
        if let Some(v) = self.grid.length {
            let _ = writeln!(s_, "length = {v:?}");
        }
        if let Some(v) = self.grid.cells {
            let _ = writeln!(s_, "cells = {v}");
        }

        let p = &self.params;
        let _ = writeln!(s_, "\n[scenario]");
        let _ = writeln!(s_, "name = {}", self.scenario.name());
        let floats = [
            ("h0", p.h0),
            ("amplitude", p.amplitude),
            ("center", p.center),
            ("direction", p.direction),
            ("zeta0", p.zeta0),
            ("slope", p.slope),
            ("toe", p.toe),
            ("h_left", p.h_left),
            ("h_right", p.h_right),
            ("dam", p.dam),
        ];
        for (k, v) in floats {
            if let Some(v) = v {
                let _ = writeln!(s_, "{k} = {v:?}");
            }
        }
        if let Some(side) = p.shore {
            let _ = writeln!(s_, "shore = {}", side.name());
        }
        if let Some(w) = p.wall {
            let _ = writeln!(s_, "wall = {w}");
        }
        if let Some(r) = &p.reference {
            let _ = writeln!(s_, "reference = {}", r.display());
        }

        let _ = writeln!(s_, "\n[run]");
        if let Some(t) = self.t_end {
            let _ = writeln!(s_, "t_end = {t:?}");
        }
        let _ = writeln!(s_, "output_dir = {}", self.output_dir.display());
        if let Some(i) = self.snapshot_interval {
            let _ = writeln!(s_, "snapshot_interval = {i:?}");
        }
        if let Some(g) = &self.gauges {
            let list: Vec<String> = g.iter().map(|v| format!("{v:?}")).collect();
            let _ = writeln!(s_, "gauges = {}", list.join(", "));
        }
        s
    }

    /// Builds the scenario and resolves every preset-dependent default.
    pub fn prepare(&self) -> Result<PreparedRun> {
        let sv = &self.solver;
        let scenario = build_scenario(self.scenario, &self.params, self.grid, sv.bc, sv.g)?;
        let rec = &scenario.recommended;
        let solver = SolverConfig {
            alpha: sv.alpha,
            g: sv.g,
            rho: sv.rho,
            friction: sv.friction.unwrap_or(rec.friction),
            eps_dry: sv.eps_dry,
            time_step: sv.time_step.unwrap_or(rec.time_step),
            breaking_theta: sv.breaking_theta,
            breaking_floor: sv
                .breaking_floor
                .unwrap_or_else(|| default_breaking_floor(sv.rho, sv.g, scenario.h0) * rec.floor_scale.unwrap_or(1.0)),
            breaking_halo: sv.breaking_halo.or(rec.breaking_halo).unwrap_or(DEFAULT_HALO),
            bc: scenario.bc,
            h0: scenario.h0,
        };
        solver.validate()?;
        let settings = RunSettings {
            t_end: self.t_end.unwrap_or(rec.t_end),
            snapshot_interval: self.snapshot_interval,
            gauges: self.gauges.clone().unwrap_or_else(|| rec.gauges.clone()),
        };
        Ok(PreparedRun {
            scenario,
            solver,
            settings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_takes_defaults() {
        let cfg = parse_config("[scenario]\nname = rest\n").unwrap();
        assert_eq!(cfg, RunConfig::minimal(ScenarioKind::Rest));
        let run = cfg.prepare().unwrap();
        assert_eq!(run.solver.alpha, 1.159);
        assert_eq!(run.solver.g, 9.81);
        assert_eq!(run.solver.friction, 0.0);
    }

    #[test]
    fn alpha_below_one_is_rejected() {
        let e = parse_config("[solver]\nalpha = 0.9\n[scenario]\nname = rest\n").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("alpha") && msg.contains(">= 1"), "{msg}");
    }

    #[test]
    fn unknown_keys_and_sections_are_errors() {
        assert!(parse_config("[solver]\nalpah = 1.2\n[scenario]\nname = rest\n").is_err());
        assert!(parse_config("[solvr]\n[scenario]\nname = rest\n").is_err());
        assert!(parse_config("[solver]\nalpha = 1.2\n").is_err());
        assert!(parse_config("[solver]\ncfl = 1\ndt = 0.1\n[scenario]\nname = rest\n").is_err());
        assert!(parse_config("[solver]\nbc_left = wall\n[scenario]\nname = rest\n").is_err());
        assert!(parse_config("[grid]\ncells = 3\n[scenario]\nname = rest\n").is_err());
    }

    #[test]
    fn roundtrip() {
        let text = "\
[solver]
alpha = 1.153
friction = 0.002
dt = 0.02 # fixed
breaking_floor = 1.5
bc_left = open
bc_right = wall

[grid]
length = 36
cells = 450

[scenario]
name = synolakis
h0 = 0.3
amplitude = 0.084
slope = 19.85
shore = right
wall = true

[run]
t_end = 12.2
snapshot_interval = 0.1
gauges = 1, 2.5,3
";
        let cfg = parse_config(text).unwrap();
        let again = parse_config(&cfg.serialize()).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.gauges, Some(vec![1.0, 2.5, 3.0]));
        assert_eq!(cfg.solver.time_step, Some(TimeStepPolicy::Fixed(0.02)));
        let minimal = RunConfig::minimal(ScenarioKind::DamBreak);
        assert_eq!(parse_config(&minimal.serialize()).unwrap(), minimal);
    }

    #[test]
    fn preset_defaults_fill_gaps() {
        let run = parse_config("[scenario]\nname = synolakis\n").unwrap().prepare().unwrap();
        assert_eq!(run.solver.friction, 0.002);
        assert_eq!(run.solver.time_step, TimeStepPolicy::Fixed(0.02));
    }
}
