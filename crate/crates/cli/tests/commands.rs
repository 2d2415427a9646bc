use orbint_cli::{run, EXIT_FAILED, EXIT_INVALID, EXIT_OK, EXIT_SINGULAR};
use serde_json::Value;

fn json(args: &[&str]) -> Value {
    let out = run(std::iter::once("orbint").chain(args.iter().copied()));
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(std::iter::once("orbint").chain(args.iter().copied())).code
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--help"]), EXIT_OK);
    assert_eq!(code(&["frobnicate"]), EXIT_INVALID);
    assert_eq!(code(&["--preset", "bogus", "datum"]), EXIT_INVALID);
    assert_eq!(
        code(&["--preset", "sl2r", "tau", "--lambda", "0", "--t", "0"]),
        EXIT_SINGULAR
    );
    assert_eq!(
        code(&["--preset", "sl2r", "tau", "--lambda", "1/2", "--t", "1/5"]),
        EXIT_INVALID
    );
    assert_eq!(code(&["--preset", "A2", "datum"]), EXIT_INVALID);
    assert_eq!(
        code(&["--datum", "A2", "tau", "--lambda", "1,0", "--t", "1/3,2/3"]),
        EXIT_SINGULAR
    );
    assert_eq!(
        code(&[
            "--preset",
            "sl2r",
            "limit",
            "--lambda",
            "3",
            "--direction",
            "0"
        ]),
        EXIT_SINGULAR
    );
    // a family without the trivial K-type has no consistent dimensions
    assert_eq!(
        code(&["--preset", "compact(A1)", "tannaka", "--keys", "1;2"]),
        EXIT_FAILED
    );
}

#[test]
fn output_is_byte_identical() {
    let args = ["orbint", "--preset", "su21", "tannaka", "--seed", "4"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a, b);
    let args = [
        "orbint", "--preset", "sp4r", "limit", "--lambda", "1,3/2", "--seed", "2",
    ];
    assert_eq!(run(args), run(args));
}

#[test]
fn tau_reports_both_paths() {
    let v = json(&[
        "--preset", "su21", "tau", "--lambda", "1,0", "--t", "1/5,2/7",
    ]);
    let re = |k: &str| v[k]["re"].as_f64().unwrap();
    let im = |k: &str| v[k]["im"].as_f64().unwrap();
    assert!(
        (re("path_a") - re("path_b")).abs() < 1e-12 && (im("path_a") - im("path_b")).abs() < 1e-12
    );
    assert_eq!(v["regular"], Value::Bool(true));
    let v = json(&[
        "--preset",
        "su21",
        "tau",
        "--class",
        r#"[{"lambda":[1,0],"coeff":2}]"#,
        "--t",
        "non-elliptic",
    ]);
    assert_eq!(v["value"]["re"].as_f64(), Some(0.0));
}

#[test]
fn demo_and_packets() {
    let v = json(&["demo-sl2", "--t", "1/7"]);
    assert!(v["abs_error"].as_f64().unwrap() < 1e-12);
    assert!(v["schmid"]["im"].as_f64().unwrap().abs() < 1e-12);
    let v = json(&["--preset", "sl2r", "packet", "--lambda", "3", "--t", "1/7"]);
    let th = 2.0 * std::f64::consts::PI / 7.0;
    assert!((v["value"]["re"].as_f64().unwrap() - (3.0 * th).sin() / th.sin()).abs() < 1e-12);
    let v = json(&[
        "--preset",
        "sl2r",
        "schmid",
        "--hc",
        "0",
        "--t",
        "1/5",
        "--systems",
        "w0,w1",
    ]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn config_file_and_flags_agree() {
    let dir = std::env::temp_dir().join(format!("orbint-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("su21.json");
    std::fs::write(
        &path,
        r#"{"datum":"A2","real_form":{"compact_roots":[0,3]},"lattice":"spin-cover"}"#,
    )
    .unwrap();
    let from_file = json(&["--config", path.to_str().unwrap(), "weyl"]);
    let from_flags = json(&[
        "--datum",
        "A2",
        "--compact-roots",
        "0,3",
        "--lattice",
        "spin-cover",
        "weyl",
    ]);
    assert_eq!(from_file, from_flags);
    assert_eq!(from_file["coset_reps"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_suite_passes_on_presets() {
    for p in ["sl2r", "su21", "compact(B2)"] {
        let v = json(&["--preset", p, "check", "--samples", "4"]);
        assert_eq!(v["pass"], Value::Bool(true), "{p}: {v}");
    }
}
