use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn geolocal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geolocal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pipeline_on_the_four_qubit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = geolocal(&[
        "pipeline",
        s(&data("four_qubit.json")),
        "--L",
        "3",
        "--out",
        s(dir.path()),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for f in [
        "code.json",
        "complex.json",
        "code_L.json",
        "chainmap.json",
        "embedding.json",
        "report.json",
    ] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let report = read(&dir.path().join("report.json"));
    assert_eq!(report["k"], 2);
    assert_eq!(report["k_l"], 2);
    assert_eq!(report["commutation"], true);
    assert_eq!(report["chain_map"]["level0"], true);
    assert_eq!(report["chain_map"]["level1"], true);
    assert_eq!(report["complex"]["full_faces"], 2);
    assert_eq!(report["failed"], Value::Array(vec![]));
    assert_eq!(report["parameters"]["subdivided"]["value"]["d"]["exact"], 4);

    let check = geolocal(&["validate", s(&dir.path().join("code_L.json"))]);
    assert_eq!(json(&check)["validation"]["commutes"], true);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let out = geolocal(&[
            "pipeline",
            s(&data("steane.json")),
            "--L",
            "3",
            "--out",
            s(dir.path()),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    for f in [
        "code.json",
        "complex.json",
        "code_L.json",
        "chainmap.json",
        "embedding.json",
        "report.json",
    ] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert!(x == y, "{f} differs");
    }
    let p = geolocal(&["params", s(&data("steane.json"))]).stdout;
    assert_eq!(p, geolocal(&["params", s(&data("steane.json"))]).stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = geolocal(&[
        "pipeline",
        s(&data("noncommuting.json")),
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("commutation"));

    let flat = geolocal(&[
        "pipeline",
        s(&data("four_qubit.json")),
        "--D",
        "2",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(flat.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&flat.stderr).contains("D must be ≥ 3"));

    let missing = geolocal(&["validate", "/nonexistent/code.json"]);
    assert_eq!(missing.status.code(), Some(2));

    let even = geolocal(&["subdivide", s(&data("four_qubit.json")), "--L", "4"]);
    assert_eq!(even.status.code(), Some(2));

    let tight = dir.path().join("limits.json");
    std::fs::write(&tight, r#"{"exact_kernel_dim": 1}"#).unwrap();
    let refused = geolocal(&["--limits", s(&tight), "params", s(&data("steane.json"))]);
    assert_eq!(refused.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("refusing"));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{").unwrap();
    assert_eq!(geolocal(&["validate", s(&garbage)]).status.code(), Some(2));
}

#[test]
fn params_of_steane() {
    let p = json(&geolocal(&[
        "params",
        s(&data("steane.json")),
        "--distance",
        "exact",
    ]));
    assert_eq!(p["k"], 1);
    assert_eq!(p["d"]["exact"], 3);
    let b = json(&geolocal(&[
        "params",
        s(&data("steane.json")),
        "--distance",
        "bounded:2",
    ]));
    assert_eq!(b["d"]["greater_than"], 2);
}

#[test]
fn expansion_reports() {
    let t = json(&geolocal(&["expansion", "--object", "t", "--L", "5"]));
    assert_eq!(t["pass"], true);
    assert_eq!(t["L"], 5);
    assert_eq!(t["bound"]["beta_0"]["at_least"], "2/5");
    let beta: Vec<u64> = t["measured"]["beta_0"]
        .as_str()
        .unwrap()
        .split('/')
        .map(|x| x.parse().unwrap())
        .collect();
    assert!(beta[0] * 5 >= 2 * beta[1]);

    let s1 = json(&geolocal(&[
        "expansion",
        "--object",
        "s",
        "--L",
        "3",
        "--level",
        "1",
    ]));
    assert_eq!(s1["pass"], true);
    assert_eq!(s1["bound"]["eta_1"]["at_least"], "1/6");

    let sq = json(&geolocal(&[
        "expansion",
        "--object",
        "t",
        "--code",
        s(&data("steane.json")),
        "--vertex",
        "6",
    ]));
    assert_eq!(sq["pass"], true);

    let small = json(&geolocal(&[
        "expansion",
        "--object",
        "small-set",
        "--code",
        s(&data("steane.json")),
    ]));
    assert_eq!(small["measured"]["alpha"], "2/7");
    assert!(small.get("L").is_none());
}

#[test]
fn embedding_roundtrip_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    let emb = dir.path().join("emb.json");
    let code = data("four_qubit.json");
    let out = geolocal(&["embed", s(&code), "--L", "3", "--D", "3", "-o", s(&emb)]);
    assert!(out.status.success());
    let e = read(&emb);
    let ok = json(&geolocal(&[
        "verify-embedding",
        s(&emb),
        s(&code),
        "--L",
        "3",
    ]));
    assert_eq!(ok["pass"], true);
    assert_eq!(ok["b"], e["b"]);
    let strict = json(&geolocal(&[
        "verify-embedding",
        s(&emb),
        s(&code),
        "--L",
        "3",
        "--a-max",
        "1",
        "--b-max",
        "1",
    ]));
    assert_eq!(strict["pass"], false);
}

#[test]
fn alist_input_matches_json_input() {
    let dir = tempfile::tempdir().unwrap();
    let alist = "7 3\n3 4\n1 1 2 1 2 2 3\n4 4 4\n3 0 0\n2 0 0\n2 3 0\n1 0 0\n1 3 0\n1 2 0\n1 2 3\n4 5 6 7\n2 3 6 7\n1 3 5 7\n";
    let (hx, hz) = (dir.path().join("hx.alist"), dir.path().join("hz.alist"));
    std::fs::write(&hx, alist).unwrap();
    std::fs::write(&hz, alist).unwrap();
    let a = json(&geolocal(&["params", "--hx", s(&hx), "--hz", s(&hz)]));
    let b = json(&geolocal(&["params", s(&data("steane.json"))]));
    for key in ["n", "k", "d"] {
        assert_eq!(a[key], b[key], "{key}");
    }
}

#[test]
fn thread_count_from_environment() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_geolocal"))
            .env("GEOLOCAL_THREADS", threads)
            .args(["params", s(&data("steane.json"))])
            .output()
            .unwrap()
    };
    let one = run("1");
    assert!(one.status.success());
    assert_eq!(
        one.stdout,
        geolocal(&["--sequential", "params", s(&data("steane.json"))]).stdout
    );
    assert_eq!(run("many").status.code(), Some(2));
}

#[test]
fn stage_commands_chain_together() {
    let dir = tempfile::tempdir().unwrap();
    let p = |f: &str| dir.path().join(f);
    let code = data("steane.json");
    assert!(geolocal(&["minimalize", s(&code), "-o", s(&p("min.json"))])
        .status
        .success());
    assert!(geolocal(&[
        "extract-complex",
        s(&p("min.json")),
        "--dummy",
        "spanning",
        "-o",
        s(&p("cx.json"))
    ])
    .status
    .success());
    let out = geolocal(&[
        "chainmap",
        s(&p("min.json")),
        "--complex",
        s(&p("cx.json")),
        "--L",
        "5",
        "-o",
        s(&p("map.json")),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["level1"], true);
    assert_eq!(read(&p("map.json"))["f1"].as_array().unwrap().len(), 7);
    let sub = geolocal(&[
        "subdivide",
        s(&p("min.json")),
        "--complex",
        s(&p("cx.json")),
        "--L",
        "5",
    ]);
    assert!(
        sub.status.success(),
        "{}",
        String::from_utf8_lossy(&sub.stderr)
    );
}
