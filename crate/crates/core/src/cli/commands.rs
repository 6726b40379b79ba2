//! Subcommand bodies. Each writes its table to `out`.

use std::io::Write;
use std::path::{Path, PathBuf};

use super::config::{load_config, RunConfig};
use super::output::{fmt_num, CsvSink};
use crate::dispersion::{
    dimensional_dt, group_velocity, optimize_alpha, optimize_alpha_local, phase_velocity, stokes_reference, AlphaObjective,
    DispersionQuery, ObjectiveComponents,
};
use crate::error::{Error, Result};
use crate::scenarios::{convergence_study, ConvergenceCase, ScenarioKind};
use crate::timeloop::{run_simulation, Simulation};

pub const OUTPUT_DIR_ENV: &str = "GN1D_OUTPUT_DIR";

/// Output directory: the environment override if set, else the config's.
pub fn output_dir(cfg: &RunConfig) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => cfg.output_dir.clone(),
    }
}

/// Runs a configured simulation into `dir`; returns the final time.
pub fn run_config(cfg: &RunConfig, dir: &Path) -> Result<f64> {
    let run = cfg.prepare()?;
    let mut sim = Simulation::new(run.scenario.bathy, run.solver, run.scenario.initial)?;
    let mut sink = CsvSink::create(dir)?;
    let outcome = run_simulation(&mut sim, &run.settings, &mut sink);
    sink.finish()?;
    outcome?;
    Ok(sim.time())
}

pub fn cmd_run(config: &Path, out: &mut dyn Write) -> Result<()> {
    let cfg = load_config(config)?;
    let dir = output_dir(&cfg);
    let t = run_config(&cfg, &dir)?;
    writeln!(out, "finished at t = {t} in {}", dir.display())?;
    Ok(())
}

/// Refinement study on a solitary-wave config; the coarse level is the configured grid.
pub fn cmd_converge(config: &Path, levels: usize, out: &mut dyn Write) -> Result<()> {
    let cfg = load_config(config)?;
    if cfg.scenario != ScenarioKind::Solitary {
        return Err(Error::Config("converge needs a `solitary` scenario".into()));
    }
    let run = cfg.prepare()?;
    let wave = run.scenario.solitary.expect("solitary scenario carries its wave");
    let case = ConvergenceCase {
        h0: wave.h0,
        amplitude: wave.amplitude,
        length: run.scenario.grid.length(),
        t_end: run.settings.t_end,
        coarse_dx: run.scenario.grid.dx(),
        levels,
    };
    let table = convergence_study(&run.solver, &case)?;
    writeln!(out, "dx,dt,n_cells,max_e_zeta,max_e_u")?;
    for r in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(r.dx),
            fmt_num(r.dt),
            r.n_cells,
            fmt_num(r.max_e_zeta),
            fmt_num(r.max_e_u)
        )?;
    }
    writeln!(out, "slope,,,{},{}", fmt_num(table.slope_zeta), fmt_num(table.slope_u))?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionArgs {
    pub alpha: f64,
    pub dt: f64,
    pub kh_max: f64,
    pub h0: f64,
    pub g: f64,
    pub points: usize,
}

/// Model-to-linear-theory velocity ratios on `points` evenly spaced kh0 values.
pub fn cmd_dispersion(args: &DispersionArgs, out: &mut dyn Write) -> Result<()> {
    if args.points == 0 {
        return Err(Error::Config("points must be positive".into()));
    }
    DispersionQuery::new(args.kh_max, args.h0, args.g, args.alpha, args.dt).validate()?;
    writeln!(out, "kh0,phase_ratio,group_ratio")?;
    for i in 1..=args.points {
        let kh0 = args.kh_max * i as f64 / args.points as f64;
        let q = DispersionQuery::new(kh0, args.h0, args.g, args.alpha, args.dt);
        let (cp, cg) = stokes_reference(kh0, args.h0, args.g);
        writeln!(
            out,
            "{},{},{}",
            fmt_num(kh0),
            fmt_num(phase_velocity(&q) / cp),
            fmt_num(group_velocity(&q) / cg)
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaMode {
    Global,
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaArgs {
    pub mode: AlphaMode,
    pub kh0: f64,
    /// Time step [s]; ignored when sweeping.
    pub dt: f64,
    pub kh_max: f64,
    pub h0: f64,
    pub g: f64,
    pub components: ObjectiveComponents,
    /// Sweep the dimensionless step `dt·√(g/h0)` over `[0, max]`.
    pub sweep_dt: Option<f64>,
    /// Local mode only: sweep kh0 over `(0, max]` at fixed `dt`.
    pub sweep_kh: Option<f64>,
}

const SWEEP_STEPS: usize = 100;

pub fn cmd_alpha(args: &AlphaArgs, out: &mut dyn Write) -> Result<()> {
    let objective = AlphaObjective {
        k_max: args.kh_max,
        components: args.components,
        h0: args.h0,
        g: args.g,
        ..AlphaObjective::default()
    };
    let solve = |dt: f64| match args.mode {
        AlphaMode::Global => optimize_alpha(&objective, dt),
        AlphaMode::Local => optimize_alpha_local(args.kh0, dt, args.h0, args.g),
    };
    let scale = (args.g / args.h0).sqrt();
    match (args.sweep_dt, args.sweep_kh) {
        (Some(_), Some(_)) => Err(Error::Config("choose one of --sweep-dt and --sweep-kh".into())),
        (Some(max), None) => {
            writeln!(out, "dt_scaled,alpha")?;
            for i in 0..=SWEEP_STEPS {
                let s = max * i as f64 / SWEEP_STEPS as f64;
                writeln!(out, "{},{}", fmt_num(s), fmt_num(solve(dimensional_dt(s, args.h0, args.g))?))?;
            }
            Ok(())
        }
        (None, Some(max)) => {
            if args.mode != AlphaMode::Local {
                return Err(Error::Config("--sweep-kh needs --mode local".into()));
            }
            writeln!(out, "kh0,alpha")?;
            for i in 1..=SWEEP_STEPS {
                let kh0 = max * i as f64 / SWEEP_STEPS as f64;
                writeln!(
                    out,
                    "{},{}",
                    fmt_num(kh0),
                    fmt_num(optimize_alpha_local(kh0, args.dt, args.h0, args.g)?)
                )?;
            }
            Ok(())
        }
        (None, None) => {
            writeln!(out, "dt_scaled,alpha")?;
            writeln!(out, "{},{}", fmt_num(args.dt * scale), fmt_num(solve(args.dt)?))?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn dispersion_ratio_tends_to_one() {
        let args = DispersionArgs {
            alpha: 1.159,
            dt: 0.0,
            kh_max: 0.01,
            h0: 1.0,
            g: 9.81,
            points: 4,
        };
        let t = text(|o| cmd_dispersion(&args, o));
        let first: Vec<f64> = t.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        assert!((first[1] - 1.0).abs() < 1e-8 && (first[2] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn single_local_alpha() {
        let args = AlphaArgs {
            mode: AlphaMode::Local,
            kh0: std::f64::consts::PI,
            dt: 0.0,
            kh_max: 4.0,
            h0: 1.0,
            g: 9.81,
            components: ObjectiveComponents::Phase,
            sweep_dt: None,
            sweep_kh: None,
        };
        let t = text(|o| cmd_alpha(&args, o));
        let alpha: f64 = t.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
        assert!((alpha - 1.16).abs() < 0.005);
    }
}
