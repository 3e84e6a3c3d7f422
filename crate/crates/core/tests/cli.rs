use std::process::Command;

fn curvclass(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_curvclass"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn classify_prints_profile() {
    let (code, out, _) = curvclass(&["classify", "--named", "K", "--dim", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("class: 2"), "{out}");
    assert!(out.contains("r12=34 = 0") && out.contains("r14=23 = -2"), "{out}");
}

#[test]
fn json_report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout, _) = curvclass(&[
        "check",
        "recurrent",
        "--metric",
        "pp-wave:exp",
        "--points",
        "2",
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let printed: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(file, printed);
    assert_eq!(file["verdict"], "holds");
}

#[test]
fn exit_codes() {
    assert_eq!(
        curvclass(&["check", "symmetric", "--metric", "pp-wave:exp", "--points", "2"]).0,
        1
    );
    assert_eq!(
        curvclass(&[
            "check",
            "hyper-recurrent",
            "--metric",
            "schwarzschild:1",
            "--points",
            "1"
        ])
        .0,
        3
    );
    let (code, _, err) = curvclass(&["check", "nonsense", "--metric", "sphere:3:1"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
    assert_eq!(curvclass(&["classify", "--named", "R", "--dim", "9"]).0, 2);
    assert_eq!(
        curvclass(&["check", "flat", "--metric", "sphere:3:1", "--tol", "-1"]).0,
        2
    );
}

#[test]
fn tolerance_from_environment() {
    // the sphere is not flat at any reasonable tolerance, but is at a huge one
    let out = Command::new(env!("CARGO_BIN_EXE_curvclass"))
        .args(["check", "flat", "--metric", "sphere:3:1", "--points", "2"])
        .env("CURVCLASS_TOL", "1e6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        curvclass(&["check", "flat", "--metric", "sphere:3:1", "--points", "2"]).0,
        1
    );
}

#[test]
fn verify_single_block() {
    let (code, out, _) = curvclass(&[
        "verify-theorems",
        "--dims",
        "3",
        "--seed",
        "1",
        "--points",
        "2",
        "--blocks",
        "9",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("[PASS] 9 "), "{out}");
    assert_eq!(curvclass(&["verify-theorems", "--dims", "2"]).0, 2);
}
