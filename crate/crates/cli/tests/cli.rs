use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scorepot"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn ten_name_csv() -> String {
    let rows = [
        ("a", 4000, 0),
        ("b", 3999, 1),
        ("c", 3031, 0),
        ("d", 2900, 0),
        ("e", 2500, 1),
        ("f", 2455, 1),
        ("g", 2100, 0),
        ("h", 1900, 0),
        ("i", 1600, 0),
        ("j", 500, 0),
    ];
    let mut s = String::from("id,score,response\n");
    for (id, score, resp) in rows {
        s.push_str(&format!("{id},{score},{resp}\n"));
    }
    s
}

#[test]
fn evaluate_ten_names_text() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "ten_names.csv", &ten_name_csv());
    let out = run(&["evaluate", path.to_str().unwrap(), "--buckets", "10"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Exact from individual ranks: P↑ = 20, P↓ = 27, PoP = 74%"));
}

#[test]
fn exit_codes_distinguish_failures() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.csv");
    assert_eq!(run(&["evaluate", missing.to_str().unwrap()]).status.code(), Some(3));

    let bad = write(dir.path(), "bad.csv", "id,score,response\na,1,2\n");
    assert_eq!(run(&["evaluate", bad.to_str().unwrap()]).status.code(), Some(4));

    let dup = write(dir.path(), "dup.csv", "id,score,response\na,1,1\na,2,0\n");
    assert_eq!(run(&["evaluate", dup.to_str().unwrap()]).status.code(), Some(4));

    let quiet = write(dir.path(), "quiet.csv", "id,score,response\na,1,0\nb,2,0\n");
    let out = run(&["evaluate", quiet.to_str().unwrap(), "--buckets", "2"]);
    assert_eq!(out.status.code(), Some(10));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no responders"));

    let t3 = write(dir.path(), "t3.csv", &ten_name_csv());
    assert_eq!(run(&["evaluate", t3.to_str().unwrap(), "--buckets", "3"]).status.code(), Some(11));
    assert_eq!(run(&["evaluate", t3.to_str().unwrap(), "--target", "120"]).status.code(), Some(12));

    let fig = dir.path().join("f.svg");
    let out = run(&["compare", t3.to_str().unwrap(), "--figure", fig.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(5));

    assert_eq!(run(&["evaluate", t3.to_str().unwrap(), "--ties", "random"]).status.code(), Some(2));
    assert_eq!(run(&["evaluate", t3.to_str().unwrap(), "--cutoffs", "0"]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run(&[
            "gen", "--size", "200", "--rate", "0.05", "--quality", "0.4", "--seed", "17", "-o",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().count(), 201);
    assert_eq!(text.lines().skip(1).filter(|l| l.ends_with(",1")).count(), 10);
}

#[test]
fn compare_writes_figure_and_csv() {
    let dir = TempDir::new().unwrap();
    let mut paths = Vec::new();
    for (i, q) in ["0.2", "0.6", "1.0"].iter().enumerate() {
        let p = dir.path().join(format!("q{i}.csv"));
        let out = run(&[
            "gen", "--size", "100", "--rate", "0.04", "--quality", q, "--seed", "5", "-o",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        paths.push(p.to_str().unwrap().to_owned());
    }
    let fig = dir.path().join("fig.svg");
    let mut args = vec!["compare".to_owned()];
    args.extend(paths.iter().cloned());
    args.extend(["--format", "csv", "--figure", fig.to_str().unwrap()].map(String::from));
    let out = bin().args(&args).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    let first = csv.lines().nth(1).unwrap();
    assert!(first.starts_with("1,q2,"), "{csv}");
    let svg = fs::read_to_string(&fig).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains(r#"class="pop""#) && svg.contains(r#"class="beni""#));
}

#[test]
fn duplicate_stems_use_paths() {
    let dir = TempDir::new().unwrap();
    fs::create_dir(dir.path().join("x")).unwrap();
    fs::create_dir(dir.path().join("y")).unwrap();
    let a = write(&dir.path().join("x"), "m.csv", &ten_name_csv());
    let b = write(&dir.path().join("y"), "m.csv", &ten_name_csv());
    let out = run(&["compare", a.to_str().unwrap(), b.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.contains(a.to_str().unwrap()) && csv.contains(b.to_str().unwrap()));
}

#[test]
fn econ_command() {
    let out = run(&["econ", "--total-cost", "50000", "--addresses", "100000", "--responders", "4000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Cost per thousand   500\n"));
    assert!(text.contains("Cost per responder  12.5\n"));
    assert!(text.contains("500 - 12.5 = 487.5"));

    let out = run(&["econ", "--total-cost", "10", "--addresses", "100", "--responders", "0"]);
    assert_eq!(out.status.code(), Some(10));
    let out = run(&["econ", "--total-cost", "ten", "--addresses", "100", "--responders", "1"]);
    assert_eq!(out.status.code(), Some(12));

    let out = run(&["econ", "--total-cost", "1000", "--addresses", "1000", "--responders", "10", "--format", "json"]);
    let json = String::from_utf8(out.stdout).unwrap();
    assert!(json.contains(r#""cost_per_responder": 100.0"#), "{json}");
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let t3 = write(dir.path(), "t3.csv", &ten_name_csv());
    let report = dir.path().join("r.json");
    let out = run(&["evaluate", t3.to_str().unwrap(), "--format", "json", "-o", report.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let json = fs::read_to_string(report).unwrap();
    assert!(json.contains(r#""model_id": "t3""#));
}
