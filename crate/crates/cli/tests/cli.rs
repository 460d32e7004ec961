use std::path::Path;
use std::process::{Command, Output};

fn moment_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moment-lab"))
        .args(args)
        .env_remove("MOMENT_LAB_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn orthogonality_rows_for_35() {
    let o = moment_lab(&["chars", "--q1", "5", "--q2", "7", "--verify", "orth1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 25, "{text}");
}

#[test]
fn lvalue_json_carries_settings_and_value() {
    let o = moment_lab(&["lvalue", "--q", "35", "--char-index", "5", "--method", "factored"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["settings"]["q"], 35);
    let re = v["result"]["value_re"].as_f64().unwrap();
    let im = v["result"]["value_im"].as_f64().unwrap();
    assert!((re - 0.19997496181604).abs() < 1e-9 && (im + 0.24712715715069).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    let short = moment_lab(&["moment", "--Q", "35", "--n", "1000"]);
    assert_eq!(short.status.code(), Some(4));
    let synthetic = moment_lab(&["lvalue", "--q", "13", "--char-index", "1", "--provider", "synthetic-unit"]);
    assert_eq!(synthetic.status.code(), Some(2));
    let bad_delta = moment_lab(&["moment", "--Q", "35", "--delta", "0.7"]);
    assert_eq!(bad_delta.status.code(), Some(2));
    let missing = moment_lab(&["run", "--config", "/nonexistent/config.toml"]);
    assert_eq!(missing.status.code(), Some(2));
}

fn write_config(dir: &Path, extra: &str) -> std::path::PathBuf {
    let path = dir.join("config.toml");
    let out = dir.join("out");
    std::fs::write(
        &path,
        format!(
            "seed = 3\n{extra}\n[family]\nladder = [20.0]\ndelta = 0.3\n\n[afe]\nmethod = \"factored\"\n\n[luo]\ny = [10.0]\n\n[scan]\ngrid = 8\nlog2_max = 12\n\n[output]\ndir = \"{}\"\n",
            out.display()
        ),
    )
    .unwrap();
    path
}

#[test]
fn unknown_config_field_is_named() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "colour = 1");
    let o = moment_lab(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn run_writes_reports_twice_identically() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "");
    let out = tmp.path().join("out");
    let read_all = || -> Vec<(String, Vec<u8>)> {
        let mut v: Vec<_> = std::fs::read_dir(&out)
            .unwrap()
            .map(|e| e.unwrap())
            .map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap()))
            .collect();
        v.sort();
        v
    };
    assert_eq!(moment_lab(&["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(0));
    let first = read_all();
    assert_eq!(moment_lab(&["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(first, read_all());
    let names: Vec<&str> = first.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["config.toml", "luo.csv", "moment.csv", "scan.csv", "summary.json"]);
    let moment = String::from_utf8(first[2].1.clone()).unwrap();
    assert!(moment.lines().any(|l| l.starts_with("Q,delta,size")));
}

#[test]
fn selftest_passes() {
    let o = moment_lab(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
