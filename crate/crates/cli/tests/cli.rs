use std::process::{Command, Output};

use koornwinder::{compute_mk, LaurentPoly, ParameterPoint, Partition};
use serde_json::Value;

const PARAMS: &str = "q=1/3,t=1/2,t0=1/5,t1=2/7,t2=1/4,t3=3/8";

fn mkpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mkpoly"))
        .args(args)
        .output()
        .expect("run mkpoly")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn compute_askey_wilson_degree_two() {
    let v = json(&mkpoly(&["compute", "--n", "1", "--lambda", "2", "--params", PARAMS]));
    assert_eq!(v["nvars"], 1);
    let terms = v["terms"].as_array().unwrap();
    let coef = |e: i64| {
        terms
            .iter()
            .find(|t| t["exp"][0] == e)
            .map(|t| t["coef"]["a"].as_str().unwrap().to_string())
    };
    assert_eq!(coef(2).as_deref(), Some("1"));
    assert_eq!(coef(-2).as_deref(), Some("1"));
    assert_eq!(coef(1).as_deref(), Some("-7282/5037"));
    assert_eq!(coef(0).as_deref(), Some("1736905/866364"));
    assert!(terms.iter().all(|t| t["coef"]["b"] == "0"));
}

#[test]
fn compute_empty_partition_is_one() {
    let v = json(&mkpoly(&["compute", "--n", "0", "--lambda", "", "--params", PARAMS]));
    assert_eq!(
        v,
        serde_json::json!({"nvars": 0, "terms": [{"exp": [], "coef": {"a": "1", "b": "0"}}]})
    );
}

#[test]
fn compute_round_trips_and_is_deterministic() {
    let args = ["compute", "--n", "2", "--lambda", "2,1", "--params", PARAMS];
    let a = mkpoly(&args);
    let b = mkpoly(&args);
    assert_eq!(a.stdout, b.stdout);
    let parsed: LaurentPoly = serde_json::from_slice(&a.stdout).unwrap();
    let params: ParameterPoint = PARAMS.parse().unwrap();
    let direct = compute_mk(&Partition::new(vec![2, 1]).unwrap(), &params).unwrap();
    assert_eq!(parsed, direct);
    // a larger m gives the same polynomial
    let c = mkpoly(&["compute", "--n", "2", "--lambda", "2,1", "--m", "4", "--params", PARAMS]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn compute_writes_file() {
    let dir = std::env::temp_dir().join(format!("mkpoly-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.json");
    let out = mkpoly(&[
        "compute",
        "--n",
        "1",
        "--lambda",
        "1",
        "--params",
        PARAMS,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn branch_json_shape() {
    let v = json(&mkpoly(&["branch", "--lambda", "2,0", "--mu", "1", "--params", PARAMS]));
    assert_eq!(v["lambda"], serde_json::json!([2, 0]));
    assert_eq!(v["mu"], serde_json::json!([1]));
    assert_eq!(v["m"], 2);
    let d = v["d"].as_u64().unwrap() as usize;
    assert_eq!(v["B"].as_array().unwrap().len(), d + 1);
    assert_ne!(v["B"][d]["a"], "0");
    let top = json(&mkpoly(&["branch", "--lambda", "2,0", "--mu", "2", "--params", PARAMS]));
    assert_eq!(top["d"], 0);
    assert_eq!(top["B"], serde_json::json!([{"a": "1", "b": "0"}]));
    // Askey-Wilson degree 2 coefficients in the interpolation basis
    let aw = json(&mkpoly(&["branch", "--lambda", "2", "--mu", "", "--params", PARAMS]));
    assert_eq!(aw["B"][0]["a"], "140980323/7219700");
    assert_eq!(aw["B"][1]["a"], "158002/8395");
}

#[test]
fn pieri_table_json_shape() {
    let v = json(&mkpoly(&[
        "pieri-table",
        "--lambda",
        "0",
        "--n",
        "1",
        "--r",
        "1",
        "--params",
        PARAMS,
    ]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(
        rows[0],
        serde_json::json!({"lambda": [0], "mu": [0], "r": 1, "n": 1, "C": {"a": "-23199/5570", "b": "0"}})
    );
    assert_eq!(rows[1]["C"]["a"], "1");
}

#[test]
fn askey_wilson_matches_compute() {
    let a = mkpoly(&["askey-wilson", "--m", "3", "--params", PARAMS]);
    let b = mkpoly(&["compute", "--n", "1", "--lambda", "3", "--params", PARAMS]);
    assert_eq!(json(&a), json(&b));
}

#[test]
fn verify_okounkov_passes() {
    let dir = std::env::temp_dir().join(format!("mkpoly-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = mkpoly(&[
        "verify",
        "cauchy-okounkov",
        "--max-size",
        "4",
        "--seed",
        "9",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["cases_total"], 12);
    let again = mkpoly(&["verify", "cauchy-okounkov", "--max-size", "4", "--seed", "9"]);
    assert_eq!(out.stdout, again.stdout);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_other_suites_small() {
    for suite in ["pieri", "cauchy-mimachi", "m-indep", "strip-lemma", "special-values"] {
        let out = mkpoly(&["verify", suite, "--max-size", "2", "--points", "1", "--seed", "3"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{suite}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn usage_and_parameter_errors_exit_two() {
    assert_eq!(
        mkpoly(&[
            "compute",
            "--n",
            "1",
            "--lambda",
            "1",
            "--params",
            "q=0.3,t=1/2,t0=1/5,t1=2/7,t2=1/4,t3=3/8"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        mkpoly(&["compute", "--n", "1", "--lambda", "1,2", "--params", PARAMS])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mkpoly(&["compute", "--n", "1", "--lambda", "2,1", "--params", PARAMS])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(mkpoly(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(mkpoly(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        mkpoly(&["branch", "--lambda", "1,1,1", "--mu", "0,0", "--params", PARAMS])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn resonant_point_is_reported() {
    // t = q makes a pair-block denominator vanish
    let out = mkpoly(&[
        "pieri-table",
        "--lambda",
        "0,0",
        "--n",
        "2",
        "--r",
        "2",
        "--params",
        "q=1/3,t=1/3,t0=1/5,t1=2/7,t2=1/4,t3=3/8",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("resonant"), "{err}");
}

#[test]
fn thread_cap_is_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_mkpoly"))
        .args(["verify", "cauchy-okounkov", "--max-size", "2"])
        .env("MK_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
}
