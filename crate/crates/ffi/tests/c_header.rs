//! Compiles and runs a small C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "bratio.h"

int main(void) {
    BrRates *rates = NULL;
    BrGenerator *gen = NULL;
    BrDensityMatrix st;
    double r = 0.0, nocoh = 0.0;
    if (br_rates_simplified(1.0, 2.0, 3.0, 1.0, 0.5, 0.0, &rates) != BR_STATUS_OK) return 1;
    if (br_generator_new(rates, BR_VARIANT_REDUCED, &gen) != BR_STATUS_OK) return 2;
    if (br_steady_state(gen, &st) != BR_STATUS_OK) return 3;
    if (br_branching_ratio(&st, rates, &r) != BR_STATUS_OK) return 4;
    if (br_branching_ratio_nocoh(rates, &nocoh) != BR_STATUS_OK) return 5;
    if (fabs(r - nocoh) > 1e-12 * nocoh) return 6;
    if (br_steady_state(NULL, &st) != BR_STATUS_NULL_POINTER) return 7;
    if (br_last_error_message() == NULL) return 8;
    br_generator_free(gen);
    br_rates_free(rates);
    printf("%.17g\n", r);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler ({cc})");
        return;
    }
    // test binary lives in <target>/<profile>/deps
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libbratio_ffi.a");
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "C program exited with {:?}",
        out.status.code()
    );
    let r: f64 = String::from_utf8(out.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(r > 0.0);
}
