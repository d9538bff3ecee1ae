use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const PI1: &str = "ps[sgn^1*|.|^(-4/3), sgn^1*|.|^(1/2)]";
const PI2: &str = "ps[|.|^(1/3), sgn^1*|.|^(-1/2)]";

fn rslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rslab"))
        .args(args)
        .env_remove("RSLAB_JOBS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["schema"], 1);
    v
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn lfactor_worked_pair() {
    let out = rslab(&["lfactor", "--pi1", PI1, "--pi2", PI2]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("L(s, pi1 x pi2) = Γ_R(s+11/6)·Γ_R(s)^2·Γ_R(s-11/6)"));

    let v = json(&rslab(&["lfactor", "--json", "--pi1", PI1, "--pi2", PI2]));
    assert_eq!(v["factors"].as_array().unwrap().len(), 4);
    assert_eq!(v["l_function_text"], "Γ_R(s+11/6)·Γ_R(s)^2·Γ_R(s-11/6)");
    assert_eq!(v["factors"][1]["shift"]["re"], "11/6");
}

#[test]
fn lfactor_gl1_and_files() {
    let f1 = scratch("gl1_a.ps");
    let f2 = scratch("gl1_b.ps");
    fs::write(&f1, "# trivial\nps[|.|^(0)]\n").unwrap();
    fs::write(&f2, "ps[|.|^(0)]").unwrap();
    let out = rslab(&[
        "lfactor",
        "--pi1",
        f1.to_str().unwrap(),
        "--pi2",
        f2.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("L(s, pi1 x pi2) = Γ_R(s)\n"));
}

#[test]
fn exit_codes() {
    let mismatch = rslab(&["lfactor", "--pi1", "ps[|.|^(1/3)]", "--pi2", PI2]);
    assert_eq!(code(&mismatch), 3);
    assert!(String::from_utf8_lossy(&mismatch.stderr).contains("length mismatch"));

    let parse = rslab(&["lfactor", "--pi1", "ps[sgn^3 * |.|^0]", "--pi2", PI2]);
    assert_eq!(code(&parse), 2);
    assert!(String::from_utf8_lossy(&parse.stderr).contains("column 8"));

    let not_gp = rslab(&[
        "verify-lcm",
        "--pi1",
        "ps[|.|^(1/3), |.|^(4/3)]",
        "--pi2",
        PI2,
    ]);
    assert_eq!(code(&not_gp), 3);
    assert!(String::from_utf8_lossy(&not_gp.stderr).contains("general position"));

    let refusal = rslab(&["exceptional", "--pi1", PI1, "--pi2", PI2, "--s0", "1"]);
    assert_eq!(code(&refusal), 1);
    assert!(stdout(&refusal).contains("1 not in P_ex"));

    let divergent = rslab(&["tate", "--s", "-3"]);
    assert_eq!(code(&divergent), 3);

    let bad_json = rslab(&["--json", "exceptional", "--pi1", "ps[", "--pi2", PI2]);
    assert_eq!(code(&bad_json), 2);
    assert_eq!(json(&bad_json)["error"]["kind"], "parse_error");
}

#[test]
fn exceptional_reports() {
    let v = json(&rslab(&[
        "exceptional",
        "--json",
        "--pi1",
        PI1,
        "--pi2",
        PI2,
    ]));
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["multi_index"], serde_json::json!([1, 0]));
    assert_eq!(certs[0]["matching"], serde_json::json!([1, 2]));

    let v = json(&rslab(&[
        "exceptional",
        "--json",
        "--pi1",
        PI1,
        "--pi2",
        PI2,
        "--s0",
        "-2",
    ]));
    assert_eq!(
        v["certificates"][0]["multi_index"],
        serde_json::json!([3, 2])
    );
    assert_eq!(v["certificates"][0]["level"], 5);

    let v = json(&rslab(&[
        "exceptional",
        "--json",
        "--pi1",
        PI1,
        "--pi2",
        PI2,
        "--s0",
        "1",
    ]));
    assert_eq!(v["exceptional"], false);
    assert_eq!(v["reason"]["kind"], "no_match");
    assert_eq!(v["reason"]["j"], 1);

    let out = rslab(&[
        "exceptional",
        "--pi1",
        "ps[sgn^1*|.|^(-4/3), |.|^(1/5)]",
        "--pi2",
        PI2,
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("P_ex empty"));
}

#[test]
fn witness_for_a_simple_pole() {
    let v = json(&rslab(&[
        "witness", "--json", "--pi1", PI1, "--pi2", PI2, "--s0", "11/6",
    ]));
    assert_eq!(v["order"], 1);
    assert_eq!(v["left"], serde_json::json!([1]));
    assert_eq!(v["right"], serde_json::json!([2]));
    let not_pole = rslab(&["witness", "--pi1", PI1, "--pi2", PI2, "--s0", "1"]);
    assert_eq!(code(&not_pole), 3);
}

#[test]
fn verify_lcm_single_pair() {
    let out = rslab(&["verify-lcm", "--pi1", PI1, "--pi2", PI2]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("equal: true"));
    assert!(text.contains("k=1 I={1} J={2}: Γ_R(s-11/6)^-1"));
    let quiet = stdout(&rslab(&[
        "verify-lcm",
        "--quiet",
        "--pi1",
        PI1,
        "--pi2",
        PI2,
    ]));
    assert!(!quiet.contains("k=1"));

    let v = json(&rslab(&[
        "verify-lcm",
        "--json",
        "--pi1",
        PI1,
        "--pi2",
        PI2,
    ]));
    assert_eq!(v["equal"], true);
    assert_eq!(v["contributions"].as_array().unwrap().len(), 5);
}

#[test]
fn random_suite_is_deterministic_across_job_counts() {
    let run = |jobs: &str| {
        rslab(&[
            "verify-lcm",
            "--json",
            "--random",
            "n=3",
            "--count",
            "200",
            "--seed",
            "42",
            "--jobs",
            jobs,
        ])
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["equal"], 200);
    assert!(v["nonempty_p_ex"].as_u64().unwrap() >= 60);

    let text = stdout(&rslab(&[
        "verify-lcm",
        "--random",
        "2",
        "--count",
        "50",
        "--seed",
        "7",
    ]));
    assert!(text.starts_with("verify-lcm random n=2 seed=7: 50/50 equal"));
}

#[test]
fn derivative_components() {
    let out = rslab(&[
        "derivative",
        "ps[|.|^(1/3), |.|^(1/5), |.|^(1/7)]",
        "-k",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("3 components"));
    let bad = rslab(&["derivative", "ps[|.|^(1/3)]", "-k", "1"]);
    assert_eq!(code(&bad), 3);
}

#[test]
fn tate_trivial_characters() {
    let v = json(&rslab(&["tate", "--json", "--deg", "0", "--s", "2"]));
    let q = v["quadrature"][0].as_f64().unwrap();
    assert!((q - std::f64::consts::FRAC_1_PI).abs() < 1e-9);
    assert!(v["rel_err"].as_f64().unwrap() < 1e-6);

    let v = json(&rslab(&[
        "tate", "--json", "--c1", "sgn^1", "--deg", "2", "--s", "1.5,0.5",
    ]));
    assert_eq!(v["rel_err"], Value::Null);
    assert!(v["abs_err"].as_f64().unwrap() < 1e-10);
}

#[test]
fn spotcheck_files() {
    let lhs = scratch("lhs.json");
    let rhs = scratch("rhs.json");
    let other = scratch("other.json");
    let gamma =
        |shift: &str, exp: i64| format!(r#"{{"shift":{{"re":"{shift}","im":"0"}},"exp":{exp}}}"#);
    fs::write(&lhs, format!("[{},{}]", gamma("0", -2), gamma("11/6", -1))).unwrap();
    fs::write(&rhs, format!("[{},{}]", gamma("11/6", -1), gamma("0", -2))).unwrap();
    fs::write(
        &other,
        format!("[{},{}]", gamma("2", -2), gamma("11/6", -1)),
    )
    .unwrap();
    let (l, r, o) = (
        lhs.to_str().unwrap(),
        rhs.to_str().unwrap(),
        other.to_str().unwrap(),
    );

    let out = rslab(&["spotcheck", l, r, "--trials", "100"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "true");
    let out = rslab(&["spotcheck", l, o, "--trials", "100"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "false");
    let missing = rslab(&["spotcheck", l, "/nonexistent/f.json"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn json_output_is_byte_stable() {
    let args = ["verify-lcm", "--json", "--pi1", PI1, "--pi2", PI2];
    assert_eq!(rslab(&args).stdout, rslab(&args).stdout);
}
