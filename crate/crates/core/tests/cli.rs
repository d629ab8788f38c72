use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn permcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permcx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn sub2(basis: Value) -> Value {
    json!({ "p": 2, "r": 2, "basis": basis })
}

/// Writes `E = 1 < F = <(1,0)>` and the collection `{1, F, G}` over `C_2^2`.
fn c2_squared_files(dir: &TempDir) -> (PathBuf, PathBuf, PathBuf) {
    let e = write(dir, "E.json", &sub2(json!([])));
    let f = write(dir, "F.json", &sub2(json!([[1, 0]])));
    let h = write(
        dir,
        "H.json",
        &json!([
            sub2(json!([])),
            sub2(json!([[1, 0]])),
            sub2(json!([[1, 0], [0, 1]]))
        ]),
    );
    (e, f, h)
}

#[test]
fn check_condition_lists_index_p_pairs() {
    let dir = TempDir::new().unwrap();
    let (_, _, h) = c2_squared_files(&dir);
    let o = permcx(&[
        "check-condition",
        "--group",
        "p=2,r=2",
        "--subgroups",
        s(&h),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["ok"], false);
    assert_eq!(v["violations"].as_array().unwrap().len(), 2);

    let ok = write(
        &dir,
        "ok.json",
        &json!([sub2(json!([])), sub2(json!([[1, 0], [0, 1]]))]),
    );
    let o = permcx(&[
        "check-condition",
        "--group",
        "p=2,r=2",
        "--subgroups",
        s(&ok),
        "--format",
        "json",
    ]);
    assert_eq!(stdout_json(&o)["ok"], true);
}

#[test]
fn counterexample_round_trips_through_verify_complex() {
    let dir = TempDir::new().unwrap();
    let (e, f, _) = c2_squared_files(&dir);
    let saved = dir.path().join("ce.json");
    let o = permcx(&[
        "counterexample",
        "--group",
        "p=2,r=2",
        "--pair",
        s(&e),
        s(&f),
        "--out",
        s(&saved),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let ce: Value = serde_json::from_str(&std::fs::read_to_string(&saved).unwrap()).unwrap();
    assert_eq!(ce["exact"], true);
    assert_eq!(ce["contractible"], false);
    let dims: Vec<u64> = ce["complex"]["modules"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![2, 4, 4, 2]);

    let complex = write(&dir, "complex.json", &ce["complex"]);
    let exact = permcx(&[
        "verify-complex",
        "--complex",
        s(&complex),
        "--expect-exact",
        "--format",
        "json",
    ]);
    assert_eq!(code(&exact), 0);
    let report = stdout_json(&exact);
    assert_eq!(report["verdict"], "CONSISTENT-WITH-THEOREM");
    assert_eq!(report["reason"], "hypothesis-void");
    assert_eq!(report["condition"]["ok"], false);

    let strict = permcx(&[
        "verify-complex",
        "--complex",
        s(&complex),
        "--expect-contractible",
    ]);
    assert_eq!(code(&strict), 1);

    let e1 = permcx(&[
        "e1-table",
        "--complex",
        s(&complex),
        "--max-degree",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&e1), 0);
    let table = stdout_json(&e1)["table"].clone();
    assert_eq!(table[0], json!([1, 1, 1, 1]));
    assert_eq!(table[1], json!([1, 0, 0, 1]));
}

#[test]
fn generated_complexes_are_deterministic() {
    let args = [
        "verify-complex",
        "--group",
        "p=3,r=2",
        "--seed",
        "5",
        "--format",
        "json",
        "--expect-contractible",
    ];
    let (a, b) = (permcx(&args), permcx(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let dir = TempDir::new().unwrap();
    let first = stdout_json(&a);
    let complex = write(&dir, "c.json", &first["complex"]);
    let again = permcx(&[
        "verify-complex",
        "--complex",
        s(&complex),
        "--format",
        "json",
    ]);
    let mut expected = first.clone();
    expected.as_object_mut().unwrap().remove("complex");
    assert_eq!(stdout_json(&again), expected);
    assert_eq!(expected["reason"], "theorem-confirmed");
}

#[test]
fn malformed_inputs_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let garbage = dir.path().join("bad.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    let o = permcx(&[
        "check-condition",
        "--group",
        "p=2,r=2",
        "--subgroups",
        s(&garbage),
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));

    let dependent = write(&dir, "dep.json", &json!([sub2(json!([[1, 0], [1, 0]]))]));
    assert_eq!(
        code(&permcx(&[
            "check-condition",
            "--group",
            "p=2,r=2",
            "--subgroups",
            s(&dependent)
        ])),
        2
    );

    let (e, f, _) = c2_squared_files(&dir);
    let o = permcx(&[
        "counterexample",
        "--group",
        "p=2,r=2",
        "--pair",
        s(&e),
        s(&f),
        "--format",
        "json",
    ]);
    let mut complex = stdout_json(&o)["complex"].clone();
    let twisted = json!([
        { "rows": 2, "cols": 2, "entries": [[0, 1], [1, 0]] },
        { "rows": 2, "cols": 2, "entries": [[1, 1], [0, 1]] }
    ]);
    complex["modules"][0]["action"] = twisted;
    complex["modules"][0]
        .as_object_mut()
        .unwrap()
        .remove("tags");
    let path = write(&dir, "twisted.json", &complex);
    assert_eq!(code(&permcx(&["verify-complex", "--complex", s(&path)])), 2);

    assert_eq!(code(&permcx(&["verify-complex", "--group", "p=2,r=2"])), 2);
    assert_eq!(
        code(&permcx(&[
            "cohomology",
            "--group",
            "p=4,r=1",
            "--module",
            "trivial",
            "--max-degree",
            "2"
        ])),
        2
    );
    assert_eq!(code(&permcx(&["no-such-command"])), 2);
    assert_eq!(code(&permcx(&["--help"])), 0);
}

#[test]
fn cohomology_and_necessity_outputs() {
    let o = permcx(&[
        "cohomology",
        "--group",
        "p=2,r=2",
        "--module",
        "trivial",
        "--max-degree",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(stdout_json(&o)["dims"], json!([1, 2, 3, 4]));
    let o = permcx(&[
        "cohomology",
        "--group",
        "p=3,r=2",
        "--module",
        "free",
        "--max-degree",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(stdout_json(&o)["dims"], json!([1, 0, 0]));

    let dir = TempDir::new().unwrap();
    let (_, _, h) = c2_squared_files(&dir);
    let o = permcx(&[
        "necessity",
        "--group",
        "p=2,r=2",
        "--subgroups",
        s(&h),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let reports = stdout_json(&o);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports
        .iter()
        .all(|r| r["exact"] == true && r["contractible"] == false));
}

#[test]
fn regular_pair_on_worked_example() {
    let dir = TempDir::new().unwrap();
    let sub3 = |b: Value| json!({ "p": 2, "r": 3, "basis": b });
    let h = write(
        &dir,
        "H.json",
        &json!([
            sub3(json!([[1, 0, 0], [0, 1, 0]])),
            sub3(json!([[0, 1, 0], [0, 0, 1]])),
            sub3(json!([[1, 1, 1]]))
        ]),
    );
    let o = permcx(&["regular-pair", "--group", "p=2,r=3", "--subgroups", s(&h)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("u = (x1+x2)"), "{text}");
    assert!(text.contains("verified: true"), "{text}");
}

#[test]
fn selftest_writes_one_report_per_criterion() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("reports");
    let o = permcx(&["selftest", "--filter", "cohomology", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let mut names: Vec<String> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 4, "{names:?}");
    assert!(names
        .iter()
        .all(|n| n.starts_with("criterion-0") && n.ends_with(".json")));
    for n in &names {
        let v: Value =
            serde_json::from_str(&std::fs::read_to_string(out.join(n)).unwrap()).unwrap();
        assert_eq!(v["passed"], true);
    }
    assert_eq!(
        code(&permcx(&["selftest", "--filter", "nothing-matches"])),
        2
    );
}
