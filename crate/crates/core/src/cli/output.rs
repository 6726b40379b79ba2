//! CSV writers for snapshots, gauges and run summaries.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::state::guarded_velocity;
use crate::timeloop::{GaugeSample, OutputSink, Simulation};

/// Scientific notation with 17 significant digits; reads back bit-exactly.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn snapshot_name(t: f64) -> String {
    format!("t={t:.6}.csv")
}

pub struct CsvSink {
    snapshots: PathBuf,
    gauges: BufWriter<File>,
    summary: BufWriter<File>,
}

impl CsvSink {
    /// Creates `dir/snapshots/`, `dir/gauges.csv` and `dir/summary.csv`.
    pub fn create(dir: &Path) -> Result<Self> {
        let snapshots = dir.join("snapshots");
        fs::create_dir_all(&snapshots)?;
        let mut gauges = BufWriter::new(File::create(dir.join("gauges.csv"))?);
        writeln!(gauges, "t,gauge_id,h,u,zeta")?;
        let mut summary = BufWriter::new(File::create(dir.join("summary.csv"))?);
        writeln!(summary, "t,mass,energy")?;
        Ok(Self {
            snapshots,
            gauges,
            summary,
        })
    }

    pub fn finish(mut self) -> Result<()> {
        self.gauges.flush()?;
        self.summary.flush()?;
        Ok(())
    }
}

impl OutputSink for CsvSink {
    fn snapshot(&mut self, sim: &Simulation) -> Result<()> {
        let path = self.snapshots.join(snapshot_name(sim.time()));
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "x,b,h,u,zeta,breaking_flag")?;
        let bathy = sim.bathymetry();
        let state = sim.state();
        let eps = sim.config().eps_dry;
        let flags = &sim.mask().cells;
        for c in 0..state.len() {
            let b = bathy.b_cell[c];
            writeln!(
                w,
                "{},{},{},{},{},{}",
                fmt_num(bathy.grid.center(c)),
                fmt_num(b),
                fmt_num(state.h[c]),
                fmt_num(guarded_velocity(state.h[c], state.q[c], eps)),
                fmt_num(state.h[c] + b - bathy.h0),
                u8::from(flags[c]),
            )?;
        }
        w.flush()?;
        Ok(())
    }

    fn gauges(&mut self, t: f64, samples: &[GaugeSample]) -> Result<()> {
        for (id, s) in samples.iter().enumerate() {
            writeln!(
                self.gauges,
                "{},{id},{},{},{}",
                fmt_num(t),
                fmt_num(s.h),
                fmt_num(s.u),
                fmt_num(s.zeta)
            )?;
        }
        Ok(())
    }

    fn summary(&mut self, t: f64, mass: f64, energy: f64) -> Result<()> {
        writeln!(self.summary, "{},{},{}", fmt_num(t), fmt_num(mass), fmt_num(energy))?;
        Ok(())
    }
}
