use std::fs;
use std::process::{Command, Output};

use bratio::sweep::CSV_HEADER;

fn bratio(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bratio"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn default_sweep_first_row_matches_fixture() {
    let out = bratio(&["sweep"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let head: String = text.lines().take(2).map(|l| format!("{l}\n")).collect();
    let fixture = include_str!("fixtures/default_first_row.csv");
    assert_eq!(head, fixture);
    assert_eq!(text.lines().count(), 1 + 3 * 3 * 60);
    assert!(!text.contains('\r'));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = bratio(&[
            "sweep",
            "--ne-points",
            "25",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let (a, b) = (fs::read(a).unwrap(), fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.ini");
    fs::write(
        &cfg,
        "# narrow run\ngamma_uv_list = 1, 5\np_list = 1\nne_points = 3\n",
    )
    .unwrap();
    let out = bratio(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--gamma-uv",
        "5",
        "--p",
        "-1,0",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2 * 3);
    assert!(rows.iter().all(|r| r[1] == 5.0));
    assert_eq!(rows[0][2], -1.0);
    assert_eq!(rows[5][2], 0.0);
}

#[test]
fn five_level_model_flag() {
    let out = bratio(&[
        "sweep",
        "--model",
        "five_level",
        "--ne-points",
        "3",
        "--gamma-uv",
        "1",
        "--p",
        "0",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        // reduced-model closed form holds up to the elimination error
        assert!((f[3] - f[5]).abs() < 1e-3 * f[5], "{line}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    let bad = dir.path().join("bad.ini");
    fs::write(&bad, "ne_min = 0\n").unwrap();
    assert_eq!(
        bratio(&["sweep", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let unknown = dir.path().join("unknown.ini");
    fs::write(&unknown, "gamma_vis = 1\nbogus = 3\n").unwrap();
    let out = bratio(&["sweep", "--config", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("bogus") && msg.contains('2'), "{msg}");

    assert_eq!(bratio(&["sweep", "--p", "1,x"]).status.code(), Some(2));
    assert_eq!(
        bratio(&["sweep", "--model", "six_level"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bratio(&["spectrum", "--ne", "10", "--omega-max", "1"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        bratio(&["spectrum", "--ne", "10", "--points", "2"])
            .status
            .code(),
        Some(2)
    );

    let missing = dir.path().join("no/such/dir/out.csv");
    assert_eq!(
        bratio(&[
            "sweep",
            "--ne-points",
            "2",
            "--out",
            missing.to_str().unwrap()
        ])
        .status
        .code(),
        Some(5)
    );
}

#[test]
fn spectrum_output() {
    let out = bratio(&[
        "spectrum",
        "--ne",
        "10",
        "--points",
        "101",
        "--gamma-uv",
        "1",
        "--p",
        "1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let meta = lines.next().unwrap();
    assert!(meta.starts_with("# r0=7.01,w_uv=3.01,"), "{meta}");
    assert_eq!(lines.next(), Some("omega,s_vis,s_uv"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    for i in 0..101 {
        assert_eq!(rows[i][0], -rows[100 - i][0]);
        assert!((rows[i][1] - rows[100 - i][1]).abs() <= 1e-12);
    }
}

#[test]
fn limits_output() {
    let out = bratio(&["limits", "--gamma-uv", "0.1,1,5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "gamma_vis,gamma_uv,R_limit_low,R_limit_high,enhancement\n1,0.1,21,20,40\n1,1,3,2,4\n1,5,1.4,0.4,0.8\n"
    );
    assert_eq!(
        bratio(&["limits", "--gamma-uv", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn header_constant() {
    assert_eq!(
        CSV_HEADER,
        "n_e,gamma_uv,p,R_numeric,R_maxcoh,R_nocoh,R_limit_low,R_limit_high,rho_DD,rho_BB,rho_aa,rho_cc"
    );
}
