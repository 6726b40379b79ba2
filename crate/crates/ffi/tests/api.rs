use std::ffi::{CStr, CString};
use std::ptr;

use gn1d::*;

const SOLITARY: &str = "[scenario]\nname = solitary\n[grid]\ncells = 120\n[run]\nt_end = 0.5\n";

fn new_sim(text: &str) -> (GnStatus, *mut GnSimulation) {
    let text = CString::new(text).unwrap();
    let mut sim = ptr::null_mut();
    let status = unsafe { gn_simulation_new(text.as_ptr(), &mut sim) };
    (status, sim)
}

fn last_error() -> String {
    let p = gn_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn simulation_lifecycle() {
    let (status, sim) = new_sim(SOLITARY);
    assert_eq!(status, GnStatus::Ok);
    let mut n = 0usize;
    let mut m0 = 0.0;
    unsafe {
        assert_eq!(gn_simulation_n_cells(sim, &mut n), GnStatus::Ok);
        assert_eq!(gn_simulation_mass(sim, &mut m0), GnStatus::Ok);
        assert_eq!(gn_simulation_advance_to(sim, 0.5), GnStatus::Ok);
    }
    assert_eq!(n, 120);
    let mut t = 0.0;
    let mut m1 = 0.0;
    let mut depth = vec![0.0; n];
    unsafe {
        assert_eq!(gn_simulation_time(sim, &mut t), GnStatus::Ok);
        assert_eq!(gn_simulation_mass(sim, &mut m1), GnStatus::Ok);
        assert_eq!(gn_simulation_copy_field(sim, GnField::Depth, depth.as_mut_ptr(), n), GnStatus::Ok);
        gn_simulation_free(sim);
    }
    assert_eq!(t, 0.5);
    assert!((m1 - m0).abs() < 1e-12 * m0);
    let dx = 30.0 / 120.0;
    assert!((depth.iter().sum::<f64>() * dx - m1).abs() < 1e-12 * m1);
}

#[test]
fn fields_are_consistent() {
    let (_, sim) = new_sim(SOLITARY);
    let n = 120;
    let get = |f: GnField| {
        let mut v = vec![0.0; n];
        assert_eq!(unsafe { gn_simulation_copy_field(sim, f, v.as_mut_ptr(), n) }, GnStatus::Ok);
        v
    };
    let (x, b, h, q, u, z, brk) = (
        get(GnField::Center),
        get(GnField::Bed),
        get(GnField::Depth),
        get(GnField::Discharge),
        get(GnField::Velocity),
        get(GnField::Surface),
        get(GnField::Breaking),
    );
    for i in 0..n {
        assert!((z[i] - (h[i] + b[i] - 0.5)).abs() < 1e-14);
        assert!((u[i] * h[i] - q[i]).abs() < 1e-12);
        assert_eq!(brk[i], 0.0);
    }
    assert!((x[1] - x[0] - 0.25).abs() < 1e-12);
    unsafe { gn_simulation_free(sim) };
}

#[test]
fn auto_step_reports_its_size() {
    let (_, sim) = new_sim(SOLITARY);
    let mut dt = 0.0;
    let mut t = 0.0;
    unsafe {
        assert_eq!(gn_simulation_step_auto(sim, &mut dt), GnStatus::Ok);
        assert_eq!(gn_simulation_time(sim, &mut t), GnStatus::Ok);
        assert_eq!(gn_simulation_step_auto(sim, ptr::null_mut()), GnStatus::Ok);
        gn_simulation_free(sim);
    }
    assert!(dt > 0.0);
    assert_eq!(t, dt);
}

#[test]
fn errors_map_to_codes() {
    let (status, sim) = new_sim("[scenario]\nname = nowhere\n");
    assert_eq!(status, GnStatus::Config);
    assert!(sim.is_null());
    assert!(last_error().contains("nowhere"));

    let (status, _) = new_sim("[solver]\nalpha = 0.9\n[scenario]\nname = rest\n");
    assert_eq!(status, GnStatus::Config);

    let mut sim = ptr::null_mut();
    assert_eq!(unsafe { gn_simulation_new(ptr::null(), &mut sim) }, GnStatus::NullPointer);

    let (_, sim) = new_sim(SOLITARY);
    let mut small = [0.0; 4];
    unsafe {
        assert_eq!(
            gn_simulation_copy_field(sim, GnField::Depth, small.as_mut_ptr(), 4),
            GnStatus::BufferTooSmall
        );
        assert_eq!(gn_simulation_step(sim, -1.0), GnStatus::Config);
        assert_eq!(gn_simulation_time(sim, ptr::null_mut()), GnStatus::NullPointer);
        assert_eq!(gn_simulation_advance_to(sim, f64::NAN), GnStatus::InvalidArgument);
        gn_simulation_free(sim);
        gn_simulation_free(ptr::null_mut());
    }
}

#[test]
fn dispersion_entry_points() {
    let mut phase = 0.0;
    let mut group = 0.0;
    let s = unsafe { gn_dispersion_ratios(1e-3, 1.0, 9.81, 1.159, 0.0, &mut phase, &mut group) };
    assert_eq!(s, GnStatus::Ok);
    assert!((phase - 1.0).abs() < 1e-6 && (group - 1.0).abs() < 1e-6);

    let mut alpha = 0.0;
    assert_eq!(unsafe { gn_optimize_alpha(4.0, 0.0, 1.0, 9.81, 0, &mut alpha) }, GnStatus::Ok);
    assert!((alpha - 1.159).abs() < 0.02);
    let mut local = 0.0;
    let s = unsafe { gn_optimize_alpha_local(std::f64::consts::PI, 0.0, 1.0, 9.81, &mut local) };
    assert_eq!(s, GnStatus::Ok);
    assert!((local - 1.16).abs() < 0.005);

    let s = unsafe { gn_dispersion_ratios(-1.0, 1.0, 9.81, 1.159, 0.0, &mut phase, &mut group) };
    assert_eq!(s, GnStatus::Config);
}
