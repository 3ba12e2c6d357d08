use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", rel]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .env_remove("HECKE_MAX_LEN")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn algebra_eval() {
    let o = hecke(&["algebra", "eval", "-r", "2", "-p", "v", "-e", "s1^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(v-1)*T(2,1) + v*T(1,2)\n");

    let o = hecke(&["algebra", "eval", "-r", "2", "-p", "4", "-e", "t*t^-1"]);
    assert_eq!(stdout(&o), "T(1,2)\n");

    let o = hecke(&[
        "algebra",
        "eval",
        "-r",
        "3",
        "-p",
        "v",
        "-e",
        "t^2*s1 - s2*t^2",
    ]);
    assert_eq!(stdout(&o), "0\n");

    let o = hecke(&[
        "algebra", "eval", "-r", "2", "-p", "v", "-e", "s1", "--json",
    ]);
    let v = json(&o);
    assert_eq!(v["result"], "T(2,1)");
    assert_eq!(v["terms"][0]["window"], serde_json::json!([2, 1]));
}

#[test]
fn algebra_eval_input_errors() {
    for args in [
        vec!["algebra", "eval", "-r", "2", "-p", "v", "-e", "s1 +"],
        vec!["algebra", "eval", "-r", "2", "-p", "v", "-e", "s5"],
        vec!["algebra", "eval", "-r", "2", "-p", "v", "-e", "T(1,2,3)"],
        vec!["algebra", "eval", "-r", "2", "-p", "3", "-e", "v*s1"],
        vec!["algebra", "eval", "-r", "0", "-p", "3", "-e", "1"],
        vec!["algebra", "eval", "-r", "2"],
    ] {
        let o = hecke(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn relcheck() {
    let o = hecke(&["algebra", "relcheck", "-r", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["notes"][0], "vacuous at rank 1: R1, R2, R3, R4, R5");

    for r in ["2", "5"] {
        let o = hecke(&["algebra", "relcheck", "-r", r, "-p", "v"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).ends_with("PASS\n"));
    }
    assert_eq!(
        hecke(&["algebra", "relcheck", "-r", "7"]).status.code(),
        Some(2)
    );
}

#[test]
fn iso() {
    for p in ["v", "9"] {
        let o = hecke(&["iso", "-p", p, "-L", "4", "--json"]);
        assert_eq!(o.status.code(), Some(0), "p = {p}");
        let v = json(&o);
        assert_eq!(v["passed"], true);
        assert_eq!(v["failures"], serde_json::json!([]));
        assert!(v["checked_pairs"].as_u64().unwrap() > 0);
    }
    let o = hecke(&["iso", "-p", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("z + 1 ≠ 0"));
}

#[test]
fn length_guard_and_override() {
    assert_eq!(hecke(&["iso", "-p", "2", "-L", "9"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(["oracle", "weyl-bfs", "-r", "1", "-L", "9"])
        .env("HECKE_MAX_LEN", "9")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(["oracle", "weyl-bfs", "-r", "1", "-L", "11"])
        .env("HECKE_MAX_LEN", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle() {
    for (r, l) in [("2", "4"), ("4", "5")] {
        let o = hecke(&["oracle", "weyl-bfs", "-r", r, "-L", l, "--json"]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert_eq!(v["all_agree"], true);
        assert_eq!(v["disagreements"], 0);
    }
    assert_eq!(
        hecke(&["oracle", "weyl-bfs", "-r", "7"]).status.code(),
        Some(2)
    );
}

#[test]
fn bernstein_decompose() {
    let cases = [
        ("bernstein/cusp.json", "LaurentPoly(1)", "C[x,x^-1]", "Cusp"),
        (
            "bernstein/neqv.json",
            "LaurentPoly(2)",
            "C[y,z,y^-1,z^-1]",
            "Neqv",
        ),
        (
            "bernstein/eqv.json",
            "DihedralQuotient",
            "C~[s,t,t^-1]/<s^2-1, t^2*s-s*t^2>",
            "Eqv",
        ),
    ];
    for (file, kind, algebra, tri) in cases {
        let o = hecke(&["bernstein", "decompose", &fixture(file), "--json"]);
        assert_eq!(o.status.code(), Some(0), "{file}");
        let v = json(&o);
        assert_eq!(v["presentation"], kind);
        assert_eq!(v["presentation_algebra"], algebra);
        assert_eq!(v["trichotomy"], tri);
        assert_eq!(v["multiplicity"], "countably-infinite");
    }
    let v = json(&hecke(&[
        "bernstein",
        "decompose",
        &fixture("bernstein/eqv.json"),
        "--json",
    ]));
    assert_eq!(
        v["ss"],
        serde_json::json!([{"label": "A", "indices": [1, 2], "r": 2, "f": "2", "z": "4"}])
    );
    assert_eq!(v["morita_tag"], serde_json::json!(["A2generic"]));

    let v = json(&hecke(&[
        "bernstein",
        "decompose",
        &fixture("bernstein/cusp_n5.json"),
        "--json",
    ]));
    assert_eq!(v["presentation"], "LaurentPoly(1)");
    assert_eq!(v["trichotomy"], Value::Null);
    assert_eq!(v["ss"][0]["z"], "16");

    let v = json(&hecke(&[
        "bernstein",
        "decompose",
        &fixture("bernstein/gl3_eqv_q2.json"),
        "--json",
    ]));
    assert_eq!(v["presentation"], "TensorAffine");
    assert_eq!(v["normalized"], false);
    assert_eq!(v["notes"][0], "no normalized presentation");
}

#[test]
fn bernstein_input_errors() {
    for f in [
        "bernstein/inconsistent.json",
        "bernstein/nonintegral.json",
        "bernstein/bad_schema.json",
    ] {
        let o = hecke(&["bernstein", "decompose", &fixture(f)]);
        assert_eq!(o.status.code(), Some(2), "{f}");
    }
    let o = hecke(&[
        "bernstein",
        "decompose",
        &fixture("bernstein/nonintegral.json"),
        "--allow-nonintegral-f",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["ss"][0]["z"], "2");
    assert_eq!(
        hecke(&["bernstein", "decompose", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bernstein_fingerprint() {
    let a = json(&hecke(&[
        "bernstein",
        "fingerprint",
        &fixture("bernstein/gl3_eqv_q2.json"),
        "--json",
    ]));
    let b = json(&hecke(&[
        "bernstein",
        "fingerprint",
        &fixture("bernstein/gl3_eqv_q3.json"),
        "--json",
    ]));
    assert_eq!(a["morita_tag"], serde_json::json!(["Ar(3, 1/2)"]));
    assert_eq!(b["morita_tag"], serde_json::json!(["Ar(3, 1/3)"]));
}

#[test]
fn bernstein_compare() {
    let o = hecke(&[
        "bernstein",
        "compare",
        "--alg-a",
        "2,1",
        "--alg-b",
        "3,2",
        "--values",
        "1,2",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["multiplicity"], "countably-infinite");

    let o = hecke(&[
        "bernstein",
        "compare",
        "--alg-a",
        "2,1",
        "--alg-b",
        "3,2",
        "--values",
        "1,2",
        "--shapes",
        &fixture("bernstein/gl3_shapes.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("warning: UnsupportedShape: gl3-eqv"));
    assert!(text.ends_with("PASS\n"));

    // Only the unsupported shape: its tags differ, but it is not compared.
    let o = hecke(&[
        "bernstein",
        "compare",
        "--alg-a",
        "2,1",
        "--alg-b",
        "3,1",
        "--no-grid",
        "--shapes",
        &fixture("bernstein/gl3_shapes.json"),
        "--json",
    ]);
    let v = json(&o);
    assert_eq!(v["rows"][0]["status"], "unsupported-shape");
    assert_eq!(v["rows"][0]["tag_a"], serde_json::json!(["Ar(3, 1/2)"]));
    assert_eq!(v["rows"][0]["tag_b"], serde_json::json!(["Ar(3, 1/3)"]));

    assert_eq!(
        hecke(&["bernstein", "compare", "--alg-a", "6,1", "--alg-b", "2,1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn tadic_classify() {
    let v = json(&hecke(&[
        "tadic",
        "classify",
        &fixture("tadic/reducible.json"),
        "--json",
    ]));
    assert_eq!(v["reducible"], true);
    assert_eq!(v["kind"], "IV");
    assert_eq!(v["constituents"]["St"], "St(A|.|^(1/2))");
    assert_eq!(v["constituents"]["Sp"], "Sp(A|.|^(1/2))");
    assert_eq!(v["constituents"]["branch"], "+");

    let v = json(&hecke(&[
        "tadic",
        "classify",
        &fixture("tadic/irreducible.json"),
        "--json",
    ]));
    assert_eq!(v["kind"], "II");
    assert_eq!(v["reducible"], false);

    let v = json(&hecke(&[
        "tadic",
        "classify",
        &fixture("tadic/cuspidal.json"),
        "--json",
    ]));
    assert_eq!(v, serde_json::json!({"d": 2, "kind": "I"}));

    let v = json(&hecke(&[
        "tadic",
        "classify",
        &fixture("tadic/one_dimensional.json"),
        "--json",
    ]));
    assert_eq!(v["kind"], "III");

    let v = json(&hecke(&[
        "tadic",
        "classify",
        &fixture("tadic/reducible_quotient.json"),
        "--json",
    ]));
    assert_eq!(v["kind"], "IV-Sp");
    assert_eq!(v["constituents"]["branch"], "-");
    assert_eq!(v["constituents"]["midpoint"]["r"], "-1");

    assert_eq!(
        hecke(&["tadic", "classify", &fixture("tadic/bad_schema.json")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["iso", "-p", "v", "-L", "3", "--json"],
        vec!["algebra", "relcheck", "-r", "3", "--json"],
        vec!["oracle", "weyl-bfs", "-r", "3", "-L", "3"],
    ];
    for args in runs {
        assert_eq!(hecke(&args).stdout, hecke(&args).stdout, "{args:?}");
    }
    let compare = [
        "bernstein",
        "compare",
        "--alg-a",
        "2,1",
        "--alg-b",
        "5,3",
        "--json",
    ];
    assert_eq!(hecke(&compare).stdout, hecke(&compare).stdout);
}
