use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn solvlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solvlat"))
        .args(args)
        .output()
        .expect("runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = solvlat(&a);
    let v = serde_json::from_str(&stdout(&o))
        .unwrap_or_else(|e| panic!("{args:?}: not one JSON document: {e}"));
    (code(&o), v)
}

/// `key: value` lines of a text report.
fn field(text: &str, key: &str) -> Option<String> {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .map(str::to_string)
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn check_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "{name} differs from golden file");
}

#[test]
fn obstruct_example2_json() {
    let (c, v) = json(&["obstruct", "example2"]);
    assert_eq!(c, 0);
    assert_eq!(v["conclusion"], "obstructed");
    assert_eq!(v["values"]["n"], "3");
    assert_eq!(v["values"]["m"], "3");
    assert_eq!(v["values"]["z"], "1");
}

#[test]
fn obstruct_unsupported_target_is_usage_error() {
    let o = solvlat(&["obstruct", "heisenberg3"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no obstruction analysis"));
    assert_eq!(
        code(&solvlat(&["obstruct", "example3", "--order", "lex"])),
        1
    );
}

#[test]
fn order_flag_adds_root_basis_and_report_still_verifies() {
    let dir = tempfile::tempdir().unwrap();
    for order in ["lex", "grevlex"] {
        let out = dir.path().join(format!("{order}.json"));
        let o = solvlat(&[
            "obstruct",
            "example2",
            "--order",
            order,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["values"]["root_basis_order"], order);
        assert!(v["values"]["root_basis"].as_str().unwrap().contains("z"));
        let (c, r) = json(&["verify", out.to_str().unwrap()]);
        assert_eq!((c, &r["ok"]), (0, &Value::Bool(true)));
    }
}

#[test]
fn build_lattice_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let o = solvlat(&[
        "build-lattice",
        "--p",
        "5",
        "--q",
        "6",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&stdout(&o), "prop1_index").as_deref(), Some("8"));

    let o = solvlat(&["verify", cert.to_str().unwrap(), "--seed", "11"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(field(&stdout(&o), "ok").as_deref(), Some("true"));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    v["prop1_index"] = 4.into();
    std::fs::write(&cert, v.to_string()).unwrap();
    let (c, r) = json(&["verify", cert.to_str().unwrap()]);
    assert_eq!(c, 2);
    assert_eq!(r["ok"], false);
    assert!(r["error"].as_str().unwrap().contains("prop1"));
}

#[test]
fn build_lattice_width_and_bad_cubic() {
    let (c, v) = json(&["build-lattice", "--p", "5", "--q", "6", "--width", "1/1000"]);
    assert_eq!(c, 0);
    assert_eq!(v["roots"].as_array().unwrap().len(), 3);
    let (c, v) = json(&["build-lattice", "--p", "3", "--q", "3"]);
    assert_eq!(c, 1);
    assert!(v["error"].as_str().unwrap().contains("invalid cubic"));
}

#[test]
fn hard_lefschetz_kodaira_thurston_fails() {
    let o = solvlat(&["hard-lefschetz", "kodaira-thurston", "--omega", "X^W + Y^Z"]);
    assert_eq!(code(&o), 2);
    assert_eq!(field(&stdout(&o), "holds").as_deref(), Some("false"));
    assert_eq!(field(&stdout(&o), "failing_degree").as_deref(), Some("1"));
    let (c, v) = json(&["hard-lefschetz", "example2"]);
    assert_eq!((c, &v["holds"]), (0, &Value::Bool(true)));
}

#[test]
fn list_examples_is_stable() {
    let a = stdout(&solvlat(&["list-examples"]));
    assert!(a.contains("example2 (dim 8)"));
    assert!(a
        .lines()
        .any(|l| l.starts_with("g65(q)") && l.contains("squarefree")));
    assert_eq!(a, stdout(&solvlat(&["list-examples"])));
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(code(&solvlat(&["betti", "no-such-algebra"])), 1);
    assert_eq!(code(&solvlat(&["frobnicate"])), 1);
    assert_eq!(code(&solvlat(&["symplectic", "heisenberg3"])), 1);
    assert_eq!(code(&solvlat(&["build-lattice", "--p", "5"])), 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lie");
    std::fs::write(&bad, "dim 2\nbasis X Y\n[X, Y] = 2*Q\n").unwrap();
    let o = solvlat(&["betti", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn algebra_files_are_targets() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("h.lie");
    std::fs::write(&f, "dim 3\nbasis X Y Z\n[X, Y] = Z\n").unwrap();
    let (c, v) = json(&["betti", f.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["betti"], serde_json::json!([1, 2, 2, 1]));

    std::fs::write(&f, "dim 3\nbasis X Y Z\n[X, Y] = Z\n[Y, Z] = Y\n").unwrap();
    let (c, v) = json(&["validate", f.to_str().unwrap()]);
    assert_eq!((c, &v["valid"]), (2, &Value::Bool(false)));
}

#[test]
fn golden_outputs() {
    for (name, args) in [
        ("list-examples", vec!["list-examples"]),
        ("betti-example2", vec!["betti", "example2"]),
        (
            "hl-kodaira-thurston",
            vec!["hard-lefschetz", "kodaira-thurston", "--omega", "X^W + Y^Z"],
        ),
        ("validate-g65-2", vec!["validate", "g65(2)"]),
    ] {
        check_golden(&format!("{name}.txt"), &stdout(&solvlat(&args)));
        let mut a = args.clone();
        a.extend(["--format", "json"]);
        check_golden(&format!("{name}.json"), &stdout(&solvlat(&a)));
    }
}

#[test]
fn text_and_json_verdicts_agree() {
    let cases: [(&[&str], &[&str]); 5] = [
        (
            &["validate", "example3"],
            &["valid", "nilpotent", "solvable", "completely_solvable"],
        ),
        (
            &["symplectic", "example2"],
            &["closed", "nondegenerate", "symplectic"],
        ),
        (
            &["hard-lefschetz", "kodaira-thurston"],
            &["holds", "failing_degree"],
        ),
        (
            &["hard-lefschetz", "modified(1,-4)"],
            &["holds", "failing_degree"],
        ),
        (&["betti", "g65(0)"], &["euler"]),
    ];
    for (args, keys) in cases {
        let t = solvlat(args);
        let (c, v) = json(args);
        assert_eq!(code(&t), c, "{args:?}");
        let text = stdout(&t);
        for k in keys {
            let shown = field(&text, k).unwrap_or_else(|| panic!("{args:?}: no {k}"));
            let expected = match &v[k] {
                Value::Null => "-".to_string(),
                x => x.to_string(),
            };
            assert_eq!(shown, expected, "{args:?}: {k}");
        }
    }
    for ex in ["example2", "example3"] {
        let t = stdout(&solvlat(&["obstruct", ex]));
        let (_, v) = json(&["obstruct", ex]);
        let head = t.lines().next().unwrap();
        assert!(head.ends_with(v["conclusion"].as_str().unwrap()), "{head}");
        for (k, val) in v["values"].as_object().unwrap() {
            assert!(
                t.contains(&format!("  {k} = {}", val.as_str().unwrap())),
                "{ex}: {k}"
            );
        }
    }
}
