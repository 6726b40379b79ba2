//! C ABI over the solver.
//!
//! Every fallible call returns a [`GnStatus`]; on failure the message is kept
//! per thread and can be read with [`gn_last_error`]. Simulations are opaque
//! handles created from config text and released with [`gn_simulation_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gn_core::cli::parse_config;
use gn_core::dispersion::{
    group_velocity, optimize_alpha, optimize_alpha_local, phase_velocity, stokes_reference, AlphaObjective, DispersionQuery,
    ObjectiveComponents,
};
use gn_core::timeloop::Simulation;
use gn_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Numerical = 4,
    Io = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Per-cell quantities that can be copied out of a simulation.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GnField {
    Center = 0,
    Bed = 1,
    Depth = 2,
    Discharge = 3,
    Velocity = 4,
    Surface = 5,
    /// 1.0 where the last step flagged the cell as breaking, else 0.0.
    Breaking = 6,
}

/// Opaque simulation handle.
pub struct GnSimulation {
    sim: Simulation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> GnStatus {
    match err {
        Error::Io(_) => GnStatus::Io,
        e if e.is_numerical() => GnStatus::Numerical,
        _ => GnStatus::Config,
    }
}

/// Runs `f`, turning errors and panics into a status plus a stored message.
fn guarded(f: impl FnOnce() -> Result<(), (GnStatus, String)>) -> GnStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GnStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            GnStatus::Panic
        }
    }
}

fn core(err: Error) -> (GnStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (GnStatus, String) {
    (GnStatus::NullPointer, format!("{what} is null"))
}

fn bad(msg: impl Into<String>) -> (GnStatus, String) {
    (GnStatus::InvalidArgument, msg.into())
}

unsafe fn sim_ref<'a>(sim: *const GnSimulation) -> Result<&'a GnSimulation, (GnStatus, String)> {
    sim.as_ref().ok_or_else(|| null("simulation"))
}

unsafe fn sim_mut<'a>(sim: *mut GnSimulation) -> Result<&'a mut GnSimulation, (GnStatus, String)> {
    sim.as_mut().ok_or_else(|| null("simulation"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (GnStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn gn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a simulation from config text (the same format the CLI reads).
/// Relative reference-wave paths resolve against the working directory.
///
/// # Safety
/// `config` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gn_simulation_new(config: *const c_char, out: *mut *mut GnSimulation) -> GnStatus {
    guarded(|| {
        if config.is_null() {
            return Err(null("config"));
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        out.write(ptr::null_mut());
        let text = CStr::from_ptr(config).to_str().map_err(|_| bad("config is not valid UTF-8"))?;
        let cfg = parse_config(text).map_err(core)?;
        let run = cfg.prepare().map_err(core)?;
        let sim = Simulation::new(run.scenario.bathy, run.solver, run.scenario.initial).map_err(core)?;
        out.write(Box::into_raw(Box::new(GnSimulation { sim })));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `sim` must come from [`gn_simulation_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gn_simulation_free(sim: *mut GnSimulation) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// One splitting step of size `dt`.
///
/// # Safety
/// `sim` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gn_simulation_step(sim: *mut GnSimulation, dt: f64) -> GnStatus {
    guarded(|| sim_mut(sim)?.sim.step(dt).map_err(core))
}

/// One step with the size chosen by the configured time-step policy; the
/// size taken is written to `dt_taken` unless it is NULL.
///
/// # Safety
/// `sim` must be a live handle; `dt_taken` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn gn_simulation_step_auto(sim: *mut GnSimulation, dt_taken: *mut f64) -> GnStatus {
    guarded(|| {
        let s = sim_mut(sim)?;
        let dt = s.sim.next_dt().map_err(core)?;
        s.sim.step(dt).map_err(core)?;
        if !dt_taken.is_null() {
            dt_taken.write(dt);
        }
        Ok(())
    })
}

/// Steps until `t_end`, landing on it exactly.
///
/// # Safety
/// `sim` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gn_simulation_advance_to(sim: *mut GnSimulation, t_end: f64) -> GnStatus {
    guarded(|| {
        if !t_end.is_finite() {
            return Err(bad("t_end must be finite"));
        }
        sim_mut(sim)?.sim.advance_to(t_end).map_err(core)
    })
}

/// # Safety
/// `sim` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gn_simulation_time(sim: *const GnSimulation, out: *mut f64) -> GnStatus {
    guarded(|| write_out(out, sim_ref(sim)?.sim.time()))
}

/// # Safety
/// `sim` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gn_simulation_n_cells(sim: *const GnSimulation, out: *mut usize) -> GnStatus {
    guarded(|| write_out(out, sim_ref(sim)?.sim.state().len()))
}

/// `∫ h dx` over the domain.
///
/// # Safety
/// `sim` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gn_simulation_mass(sim: *const GnSimulation, out: *mut f64) -> GnStatus {
    guarded(|| write_out(out, sim_ref(sim)?.sim.mass()))
}

/// # Safety
/// `sim` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gn_simulation_energy(sim: *const GnSimulation, out: *mut f64) -> GnStatus {
    guarded(|| write_out(out, sim_ref(sim)?.sim.energy()))
}

/// Copies one per-cell field into `buf`, which must hold `len >= n_cells` values.
///
/// # Safety
/// `sim` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn gn_simulation_copy_field(sim: *const GnSimulation, field: GnField, buf: *mut f64, len: usize) -> GnStatus {
    guarded(|| {
        let s = &sim_ref(sim)?.sim;
        if buf.is_null() {
            return Err(null("buffer"));
        }
        let n = s.state().len();
        if len < n {
            return Err((GnStatus::BufferTooSmall, format!("buffer holds {len} values, need {n}")));
        }
        let values = field_values(s, field);
        std::slice::from_raw_parts_mut(buf, n).copy_from_slice(&values);
        Ok(())
    })
}

fn field_values(s: &Simulation, field: GnField) -> Vec<f64> {
    let bathy = s.bathymetry();
    let state = s.state();
    match field {
        GnField::Center => bathy.grid.centers(),
        GnField::Bed => bathy.b_cell.clone(),
        GnField::Depth => state.h.clone(),
        GnField::Discharge => state.q.clone(),
        GnField::Velocity => state.velocity(s.config().eps_dry),
        GnField::Surface => (0..state.len()).map(|c| bathy.zeta_cell(c, state.h[c])).collect(),
        GnField::Breaking => s.mask().cells.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect(),
    }
}

/// Model phase and group velocity divided by the linear-theory values at
/// `kh0`, for a scheme with dispersion parameter `alpha` and time step `dt`.
///
/// # Safety
/// `phase_ratio` and `group_ratio` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gn_dispersion_ratios(
    kh0: f64,
    h0: f64,
    g: f64,
    alpha: f64,
    dt: f64,
    phase_ratio: *mut f64,
    group_ratio: *mut f64,
) -> GnStatus {
    guarded(|| {
        if phase_ratio.is_null() || group_ratio.is_null() {
            return Err(null("output pointer"));
        }
        let q = DispersionQuery::new(kh0, h0, g, alpha, dt);
        q.validate().map_err(core)?;
        let (cp, cg) = stokes_reference(kh0, h0, g);
        phase_ratio.write(phase_velocity(&q) / cp);
        group_ratio.write(group_velocity(&q) / cg);
        Ok(())
    })
}

/// Dispersion parameter minimizing the velocity error over `(0, kh_max]`.
/// `with_group` nonzero adds the group-velocity error to the objective.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gn_optimize_alpha(kh_max: f64, dt: f64, h0: f64, g: f64, with_group: c_int, out: *mut f64) -> GnStatus {
    guarded(|| {
        let objective = AlphaObjective {
            k_max: kh_max,
            components: if with_group != 0 {
                ObjectiveComponents::PhaseGroup
            } else {
                ObjectiveComponents::Phase
            },
            h0,
            g,
            ..AlphaObjective::default()
        };
        let alpha = optimize_alpha(&objective, dt).map_err(core)?;
        write_out(out, alpha)
    })
}

/// Dispersion parameter matching the linear phase velocity at a single `kh0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gn_optimize_alpha_local(kh0: f64, dt: f64, h0: f64, g: f64, out: *mut f64) -> GnStatus {
    guarded(|| {
        let alpha = optimize_alpha_local(kh0, dt, h0, g).map_err(core)?;
        write_out(out, alpha)
    })
}
