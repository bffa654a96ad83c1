use std::process::Command;

fn polarlab(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polarlab")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn run_writes_header_and_passes() {
    let (code, out, _) =
        polarlab(&["run", "--experiment", "thm12", "--lambda", "2", "--s", "2", "--t", "2", "--pole", "0,inf"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("experiment,param,metric,value,pass"));
    assert!(out.contains("intensity=7;dilation=1/4"));
}

#[test]
fn identical_seed_identical_bytes() {
    let args = ["run", "--experiment", "interlacing", "--instances", "60", "--seed", "5"];
    let (_, a, _) = polarlab(&args);
    let (_, b, _) = polarlab(&args);
    assert_eq!(a, b);
    let (_, c, _) = polarlab(&["run", "--experiment", "interlacing", "--instances", "60", "--seed", "6"]);
    assert_eq!(c.lines().count(), a.lines().count());
}

#[test]
fn failing_gate_sets_exit_status() {
    let (code, out, _) = polarlab(&["run", "--experiment", "thm11", "--ladder", "8", "--tol", "1e-9"]);
    assert_eq!(code, 1);
    assert!(out.lines().last().unwrap().ends_with(",false"));
}

#[test]
fn bad_config_names_field() {
    let (code, _, err) = polarlab(&["run", "--experiment", "thm11", "--ladder", "64,32"]);
    assert_eq!(code, 2);
    assert!(err.contains("`ladder`"), "{err}");
    let (code, _, err) = polarlab(&["run", "--experiment", "atoms", "--weights", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("`weights`"), "{err}");
}

#[test]
fn toml_config_and_json_output() {
    let dir = std::env::temp_dir().join(format!("polarlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("exp.toml");
    std::fs::write(&cfg, "experiment = \"laguerre-flow\"\nladder = [2, 3, 4]\nlambda = [\"3/2\"]\n").unwrap();
    let (code, out, _) = polarlab(&["run", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(rows.as_array().unwrap().iter().all(|r| r["pass"] == true));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn derive_roots_hist() {
    let (code, out, _) = polarlab(&["derive", "--poly", "roots:-1,1,3", "--alpha", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"formal_degree":2,"coeffs":["8","-8","0"]}"#);

    let (_, out, _) = polarlab(&["roots", "--poly", "coeffs:2,-3,1", "--tol", "1/1024"]);
    assert_eq!(out.trim(), r#"{"roots":[{"lo":"1","hi":"1","mult":1},{"lo":"2","hi":"2","mult":1}],"at_infinity":0}"#);

    let (code, out, _) =
        polarlab(&["hist", "--poly", "laguerre:40:2", "--dilate", "1/40", "--bins", "4", "--chart", "arctan"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "kind,lo,hi,mass,density");
    assert_eq!(lines.len(), 6);
    assert!(lines[5].starts_with("at_infinity,inf,inf,0"));

    let (code, _, err) = polarlab(&["roots", "--poly", "bessel:3"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown polynomial family"));
}
