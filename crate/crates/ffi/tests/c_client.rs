//! Compiles a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <stdlib.h>
#include "gn1d.h"

int main(void) {
    const char *cfg = "[scenario]\nname = rest\n[grid]\ncells = 40\n";
    GnSimulation *sim = NULL;
    if (gn_simulation_new(cfg, &sim) != GN_STATUS_OK) return 1;
    size_t n = 0;
    gn_simulation_n_cells(sim, &n);
    if (gn_simulation_advance_to(sim, 0.2) != GN_STATUS_OK) return 2;
    double *h = malloc(n * sizeof(double));
    if (gn_simulation_copy_field(sim, GN_FIELD_DEPTH, h, n) != GN_STATUS_OK) return 3;
    if (gn_simulation_step(NULL, 0.1) != GN_STATUS_NULL_POINTER || gn_last_error() == NULL) return 4;
    printf("%zu %.3f\n", n, h[0]);
    free(h);
    gn_simulation_free(sim);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // the test binary lives in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libgn1d.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or {} not built", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let bin = dir.path().join("client");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to compile");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C client exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "40 1.000");
}
