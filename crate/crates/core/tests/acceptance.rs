//! Acceptance run: one line per criterion at pinned tolerances.
//!
//! Two criteria fail as stated and are reported as FAIL:
//!
//! * `1`: the row `W2` is listed as class 4, but its three full traces vanish
//!   identically, which puts it in class 3. The run checks that `W2` is the
//!   only mismatch and confirms the vanishing traces numerically.
//! * `7b`: `D·M` and `D·P*` differ from `D·R` componentwise on generic metrics.
//!   The run checks that the condition-level statement (`D·R = 0` exactly when
//!   `D·T = 0`) holds on every sample.
//!
//! The binary exits nonzero if any other criterion fails or if a known failure
//! changes character.

use std::collections::BTreeSet;
use std::process::ExitCode;

use curvclass::btensor::{build_tensor, catalog as coefficient_row, classify, default_params, TensorName};
use curvclass::catalog;
use curvclass::structure::sample_packages;
use curvclass::verify::{listed_class, run, BlockResult, VerifyConfig};

const TRACE_TOL: f64 = 1e-10;

/// Names of listed rows whose computed class differs from the listing.
fn classifier_mismatches(dims: &[usize]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for &n in dims {
        for name in TensorName::all() {
            let Some(want) = listed_class(name) else { continue };
            let c = coefficient_row(name, n, &default_params(name)).unwrap();
            if classify(&c).class != want {
                out.insert(name.to_string());
            }
        }
    }
    out
}

/// Largest full trace of `W2` relative to `‖W2‖`, and the largest single trace
/// `g^{il} W2_{ijkl}` relative to `‖W2‖`, on a random metric.
fn w2_traces(n: usize) -> (f64, f64) {
    let m = catalog::get(&format!("random-polynomial:{n}:3")).unwrap();
    let pkgs = sample_packages(m.field.as_ref(), &m.sample_points(2, 0), 0).unwrap();
    let c = coefficient_row(TensorName::Wi(2), n, &default_params(TensorName::Wi(2))).unwrap();
    let (mut full, mut single) = (0.0f64, 0.0f64);
    for pkg in &pkgs {
        let b = build_tensor(&c, pkg).unwrap();
        let gi = pkg.metric().g_inv().clone();
        let gi = |a: usize, b: usize| *gi.get(&[a, b]);
        let at = |i: usize, j: usize, k: usize, l: usize| *b.get(&[i, j, k, l]);
        let scale = b.max_norm();
        let mut t = [0.0f64; 3];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = at(i, j, k, l);
                        t[0] += gi(i, j) * gi(k, l) * v;
                        t[1] += gi(i, k) * gi(j, l) * v;
                        t[2] += gi(i, l) * gi(j, k) * v;
                    }
                }
            }
        }
        full = full.max(t.iter().fold(0.0f64, |a, x| a.max(x.abs())) / scale);
        for j in 0..n {
            for k in 0..n {
                let s: f64 = (0..n)
                    .flat_map(|i| (0..n).map(move |l| (i, l)))
                    .map(|(i, l)| gi(i, l) * at(i, j, k, l))
                    .sum();
                single = single.max(s.abs() / scale);
            }
        }
    }
    (full, single)
}

fn known_failure_intact(r: &BlockResult, cfg: &VerifyConfig) -> Result<String, String> {
    match r.id.as_str() {
        "1" => {
            let bad = classifier_mismatches(&cfg.algebra_dims);
            if bad != BTreeSet::from(["W2".to_string()]) {
                return Err(format!("mismatches {bad:?}, expected only W2"));
            }
            for &n in &cfg.algebra_dims {
                let (full, single) = w2_traces(n);
                if full > TRACE_TOL || single < 1e-3 {
                    return Err(format!("W2 n={n}: full traces {full:.1e}, partial trace {single:.1e}"));
                }
            }
            Ok(format!(
                "W2 full traces < {TRACE_TOL:.0e} in n = {:?}, so W2 is class 3",
                cfg.algebra_dims
            ))
        }
        "7b" => {
            if r.detail.contains("checked, 0 failed") {
                Ok("condition-level form holds on every sample".into())
            } else {
                Err("condition-level form failed".into())
            }
        }
        _ => Err("unexpected failure".into()),
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::acceptance();
    let results = run(&cfg, &[]);
    let mut ok = true;
    for r in &results {
        println!("{}", r.line());
        if !r.passed {
            match known_failure_intact(r, &cfg) {
                Ok(note) => println!("    known failure: {note}"),
                Err(e) => {
                    println!("    UNEXPECTED: {e}");
                    ok = false;
                }
            }
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed} of {} criteria passed", results.len());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
