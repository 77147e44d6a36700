use std::path::Path;
use std::process::{Command, Output};

fn symrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symrank"))
        .args(args)
        .env_remove("SYMRANK_DATA_DIR")
        .output()
        .expect("run symrank")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn matrix(rows: &[[i64; 3]]) -> String {
    let e: Vec<String> = rows.iter().flatten().map(|x| x.to_string()).collect();
    format!(r#"{{"rows":3,"cols":3,"entries":[{}]}}"#, e.join(","))
}

// signed permutations of Z^3
fn write_b3(dir: &Path) -> std::path::PathBuf {
    let s1 = matrix(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
    let s2 = matrix(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
    let s3 = matrix(&[[1, 0, 0], [0, 1, 0], [0, 0, -1]]);
    let path = dir.join("b3.json");
    std::fs::write(&path, format!(r#"{{"dim":3,"generators":[{s1},{s2},{s3}],"label":"W(B3)"}}"#)).unwrap();
    path
}

#[test]
fn rdim_json_values() {
    let o = symrank(&["--format", "json", "rdim", "--max-n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let got: Vec<&str> = v["result"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(got, ["2", "6", "12", "24", "40", "72", "128", "256"]);
    assert_eq!(v["fixture_comparison"]["match"], true);
}

#[test]
fn table_rank_filter_and_csv_columns() {
    let o = symrank(&["--format", "csv", "rootsys", "table", "--max-rank", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("root_system,lattice,symrank,generator,span_matches"));
    let mut systems: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    systems.dedup();
    assert_eq!(systems, ["A1", "A2", "B2", "G2"]);
}

#[test]
fn full_table_reports_mismatch() {
    let o = symrank(&["rootsys", "table", "--max-rank", "8"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("fixture: MISMATCH"));
    assert!(text.contains("D4 Λ: orbit of λ_1 spans"));
}

#[test]
fn group_file_orbit_mode() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_b3(dir.path());
    let g = g.to_str().unwrap();
    let o = symrank(&["--format", "json", "symrank", "--group", g, "--mode", "orbit", "--vector", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["orbit_size"], 6);
    assert_eq!(v["result"]["generates"], true);

    let o = symrank(&["--format", "json", "symrank", "--group", g, "--mode", "orbit", "--vector", "1,1,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["orbit_size"], 8);
    assert_eq!(v["result"]["generates"], false);
}

#[test]
fn group_file_with_sublattice() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_b3(dir.path());
    // even-sum sublattice, spanned by the orbit of (1,1,0)
    let lat = dir.path().join("d3.json");
    std::fs::write(&lat, matrix(&[[1, 1, 0], [1, -1, 0], [0, 1, 1]])).unwrap();
    let o = symrank(&[
        "--format",
        "json",
        "symrank",
        "--group",
        g.to_str().unwrap(),
        "--lattice-file",
        lat.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["upper_bound"], "12");
}

#[test]
fn low_dims_without_data_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = symrank(&["--data", dir.path().to_str().unwrap(), "verify", "low-dims", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("partial"));
}

#[test]
fn cap_exceeded_exits_4() {
    let o = symrank(&["--cap", "5", "symrank", "--root-system", "E8", "--lattice", "root"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn gf2_factor_p7() {
    let o = symrank(&["--format", "csv", "gf2", "factor-xp1", "--p", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("x^3 + x + 1"));
    assert!(text.contains("x^3 + x^2 + 1"));
}

#[test]
fn thm_a2_thresholds_in_windows() {
    let o = symrank(&["verify", "thmA2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fixture: match"));
}

#[test]
fn bad_lattice_kind_is_an_error() {
    let o = symrank(&["symrank", "--root-system", "A2", "--lattice", "spin"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}
