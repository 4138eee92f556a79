use std::fs;
use std::process::{Command, Output};

fn qverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qverify"))
        .args(args)
        .env_remove("QVERIFY_DEFAULT_ORDER")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SMALL: &str = r#"
identity "rr1" order 40 {
  lhs = sum(n >= 0; q^(n^2) / poch(q; q; n))
  rhs = 1 / poch(q, q^4; q^5; inf)
}
identity "euler" {
  lhs = poch(q; q; inf) * sum(n >= 0; q^n / poch(q; q; n))
  rhs = 1
}
"#;

fn write(dir: &tempfile::TempDir, text: &str) -> String {
    let path = dir.path().join("cat.qid");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bundled_catalog_passes() {
    let o = qverify(&["check", "--jobs", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 40);
    assert!(!out.contains("FAIL"));
}

#[test]
fn mutated_entry_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, &SMALL.replace("q^(n^2)", "q^(n^2 + 1)"));
    let o = qverify(&["check", &path]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let fail = out.lines().find(|l| l.starts_with("FAIL")).unwrap();
    assert!(fail.contains("rr1") && fail.contains("first_diff_exp=0"), "{fail}");
    assert!(out.lines().any(|l| l.starts_with("PASS") && l.contains("euler")));
}

#[test]
fn parse_error_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "identity \"x\" { lhs = (1 + q rhs = 1 }");
    let o = qverify(&["check", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column 22"));
    assert_eq!(qverify(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qverify(&["check", "/nonexistent.qid"]).status.code(), Some(2));
}

#[test]
fn json_reports_have_the_expected_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, &SMALL.replace("rhs = 1\n", "rhs = 1 + q^3\n"));
    let json = dir.path().join("out.json");
    let o = qverify(&["check", &path, "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    let keys = |i: usize| {
        let mut k: Vec<&str> = reports[i].as_object().unwrap().keys().map(String::as_str).collect();
        k.sort();
        k
    };
    assert_eq!(keys(0), ["ms", "name", "order", "status"]);
    assert_eq!(reports[0]["status"], "PASS");
    assert_eq!(reports[0]["order"], 40);
    assert_eq!(keys(1), ["first_diff_exp", "lhs_coeff", "ms", "name", "order", "rhs_coeff", "status"]);
    assert_eq!(reports[1]["status"], "FAIL");
    assert_eq!(reports[1]["first_diff_exp"], 3);
    assert_eq!(reports[1]["lhs_coeff"], "0");
    assert_eq!(reports[1]["rhs_coeff"], "1");
}

fn strip_ms(s: &str) -> String {
    s.lines()
        .map(|l| l.split(", ").next().unwrap().to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn jobs_do_not_change_the_output() {
    let one = qverify(&["check", "--jobs", "1", "--order", "60"]);
    let four = qverify(&["check", "--jobs", "4", "--order", "60"]);
    assert_eq!(one.status.code(), four.status.code());
    assert_eq!(strip_ms(&stdout(&one)), strip_ms(&stdout(&four)));
}

#[test]
fn order_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, SMALL);
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qverify"));
        c.args(["check", &path]).args(extra).env_remove("QVERIFY_DEFAULT_ORDER");
        if let Some(v) = env {
            c.env("QVERIFY_DEFAULT_ORDER", v);
        }
        stdout(&c.output().unwrap())
    };
    let out = run(None, &[]);
    assert!(out.contains("rr1 (order 40") && out.contains("euler (order 200"), "{out}");
    let out = run(Some("25"), &[]);
    assert!(out.contains("rr1 (order 40") && out.contains("euler (order 25"), "{out}");
    let out = run(Some("25"), &["--order", "30"]);
    assert!(out.contains("rr1 (order 30") && out.contains("euler (order 30"), "{out}");
    let mut c = Command::new(env!("CARGO_BIN_EXE_qverify"));
    let bad = c.args(["check", &path]).env("QVERIFY_DEFAULT_ORDER", "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn only_selects_entries() {
    let o = qverify(&["check", "--only", "RR1", "Lebesgue"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let names: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with("PASS"))
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(names, ["RR1", "Lebesgue"]);
    assert_eq!(qverify(&["check", "--only", "no-such-entry"]).status.code(), Some(2));
}

#[test]
fn expand_and_ct() {
    let o = qverify(&["expand", "1/(poch(q;q^5;inf)*poch(q^4;q^5;inf))", "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0:1 1:1 2:1 3:1 4:2 5:2 6:3 7:3 8:4 9:5");
    let o = qverify(&["expand", "poch(a;q;2)", "--order", "3"]);
    assert_eq!(stdout(&o).trim(), "0:-a+1 1:a^2-a");
    let o = qverify(&["ct", "jtp_theta()", "--order", "5"]);
    assert_eq!(stdout(&o).trim(), "0:1");
    let o = qverify(&["ct", "z * jtp_theta()", "--order", "3"]);
    assert_eq!(stdout(&o).trim(), "0:-1");
    assert_eq!(qverify(&["expand", "q^n"]).status.code(), Some(2));
}
