use std::path::Path;
use std::process::{Command, Output};

use frobcy::table::{parse_markdown, reference_row};

fn frobcy(args: &[&str], cache: &Path) -> Output {
    frobcy_with_forms(args, cache, None)
}

fn frobcy_with_forms(args: &[&str], cache: &Path, forms: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_frobcy"));
    cmd.args(args)
        .env("FROBCY_CACHE_DIR", cache)
        .env_remove("FROBCY_FORMS_DIR");
    if let Some(dir) = forms {
        cmd.env("FROBCY_FORMS_DIR", dir);
    }
    cmd.output().expect("run frobcy")
}

fn stdout(args: &[&str], cache: &Path) -> String {
    let out = frobcy(args, cache);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str], cache: &Path) -> serde_json::Value {
    serde_json::from_str(&stdout(args, cache)).unwrap()
}

#[test]
fn table_markdown_matches_reference_rows() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(
        &["table", "--operator", "A*a", "--primes", "3..7", "--format", "markdown"],
        dir.path(),
    );
    let rows = parse_markdown(&text);
    assert_eq!(rows.len(), 3);
    for ((name, p), cells) in rows {
        assert_eq!(Some(&cells), reference_row(&name, p), "{name} {p}");
    }
}

#[test]
fn table_output_is_independent_of_jobs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["table", "--operator", "C*c", "--primes", "5,7"];
    let cold = stdout(&[&base[..], &["--no-cache"]].concat(), dir.path());
    let one = stdout(&[&base[..], &["--jobs", "1"]].concat(), dir.path());
    let warm = stdout(&[&base[..], &["--jobs", "3"]].concat(), dir.path());
    assert_eq!(cold, one);
    assert_eq!(cold, warm);
    assert!(cold.starts_with("operator,p,z,status,"));
}

#[test]
fn corrupted_cache_files_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table", "--operator", "A*a", "--primes", "5,7", "--format", "json"];
    let first = stdout(&args, dir.path());
    let files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert!(!files.is_empty());
    for f in &files {
        let text = std::fs::read_to_string(f).unwrap();
        std::fs::write(f, &text[..text.len() / 2]).unwrap();
    }
    assert_eq!(stdout(&args, dir.path()), first);
    for f in &files {
        let text = std::fs::read_to_string(f).unwrap();
        assert!(
            serde_json::from_str::<serde_json::Value>(&text).is_ok(),
            "{}",
            f.display()
        );
    }
}

#[test]
fn frob_reports_worked_and_singular_cells() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(
        &["frob", "--operator", "A*a", "--prime", "7", "--point", "2"],
        dir.path(),
    );
    assert_eq!((v["a"].as_i64(), v["b"].as_i64()), (Some(-8), Some(2)));
    assert_eq!(v["status"]["kind"], "smooth");
    let v = json(
        &["frob", "--operator", "A*a", "--prime", "5", "--point", "4"],
        dir.path(),
    );
    assert_eq!(v["status"]["kind"], "singular");
    assert_eq!(
        (v["status"]["chi"].as_i64(), v["status"]["ap"].as_i64()),
        (Some(-1), Some(-2))
    );
}

#[test]
fn frob_accepts_an_operator_file() {
    let dir = tempfile::tempdir().unwrap();
    let op = stdout(&["catalog", "A*a"], dir.path());
    let path = dir.path().join("op.json");
    std::fs::write(&path, op).unwrap();
    let v = json(
        &[
            "frob",
            "--operator",
            path.to_str().unwrap(),
            "--prime",
            "7",
            "--point",
            "2",
        ],
        dir.path(),
    );
    assert_eq!((v["a"].as_i64(), v["b"].as_i64()), (Some(-8), Some(2)));
}

#[test]
fn legendre_trace() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&["legendre", "--prime", "7", "--point", "3"], dir.path());
    assert_eq!(v["ap"], 4);
    assert_eq!(v["zeta_numerator"], serde_json::json!([1, -4, 7]));
}

#[test]
fn wedge_and_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&["wedge", "--operator", "A*a"], dir.path());
    assert!(v.is_object());
    let list = stdout(&["catalog"], dir.path());
    assert_eq!(list.lines().count(), 24);
    assert!(list.lines().any(|l| l.starts_with("A*a\t")));
}

#[test]
fn congruence_passes_for_a_known_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "congruence",
        "--sequence",
        "A",
        "--primes",
        "3,5",
        "--n-max",
        "10",
        "--s-max",
        "2",
    ];
    let v = json(&args, dir.path());
    assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn classify_emits_modular_comparisons() {
    let dir = tempfile::tempdir().unwrap();
    let out = frobcy(&["classify", "--operator", "A*a", "--primes", "5..7"], dir.path());
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.lines().any(|l| l.starts_with("A*a,5,4,singular,")));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(!stderr.is_empty());
}

#[test]
fn errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["frob", "--operator", "no-such-operator", "--prime", "7", "--point", "2"][..],
        &["frob", "--operator", "A*a", "--prime", "9", "--point", "2"],
        &["table", "--operator", "A*a", "--primes", "x..y"],
        &["legendre", "--prime", "7", "--point", "0"],
    ] {
        let out = frobcy(args, dir.path());
        assert!(!out.status.success(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("frobcy: "), "{args:?}");
    }
}

#[test]
fn classify_reads_form_fixtures_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["classify", "--operator", "A*a", "--primes", "5..7"];
    let stderr = String::from_utf8(frobcy(&args, dir.path()).stderr).unwrap();
    assert!(stderr.contains("no modular form fixture for 64/5"), "{stderr}");

    // 1/128 is z = 2 mod 5 and z = 4 mod 7
    let ap = |p: &str, z: &str| {
        let v = json(&["frob", "--operator", "A*a", "--prime", p, "--point", z], dir.path());
        v["status"]["ap"].as_i64().unwrap()
    };
    let (a5, a7) = (ap("5", "2"), ap("7", "4"));
    for (a7_fixture, expected) in [(a7, true), (a7 + 1, false)] {
        let forms = tempfile::tempdir().unwrap();
        let fixture = serde_json::json!({"label": "64/5", "weight": 4, "ap": {"5": a5, "7": a7_fixture}});
        std::fs::write(forms.path().join("64_5.json"), fixture.to_string()).unwrap();
        let out = frobcy_with_forms(&args, dir.path(), Some(forms.path()));
        assert!(out.status.success());
        let line = String::from_utf8(out.stderr)
            .unwrap()
            .lines()
            .find(|l| l.contains("\"form\":\"64/5\""))
            .map(str::to_string)
            .expect("comparison for 64/5");
        let m: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(m["all_match"], expected, "{line}");
    }
}
