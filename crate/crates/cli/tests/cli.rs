use std::process::{Command, Output};

use kummer_core::configuration::type_one_weber;
use kummer_core::isometry_group::keum::{KeumFile, KeumRecord};
use kummer_core::isometry_group::LatticeIsometry;
use serde_json::Value;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_report(path: &std::path::Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn find<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["assertions"].as_array().unwrap().iter().find(|a| a["id"] == id).unwrap()
}

#[test]
fn config_suite_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = verify(&["config", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS    config.gopel_count"));
    let r = read_report(&out);
    let g = &find(&r, "config.gopel_count")["witness"];
    assert_eq!((g["total"].as_u64(), g["type1"].as_u64(), g["type2"].as_u64()), (Some(60), Some(45), Some(15)));
    let w = &find(&r, "config.weber_count")["witness"];
    assert_eq!(w["total"], 192);
    assert_eq!(w["type1"], 120);
    assert_eq!(w["type2"], 72);
    assert_eq!(w["dual_pairs"], 60);
    assert_eq!(r["summary"]["fail"], 0);
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = verify(&["lattice", "isometry", "--seed", "11", "--output", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn chamber_without_keum_skips_mixed_homing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = verify(&["chamber", "--sweep", "representatives", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r = read_report(&out);
    assert_eq!(find(&r, "chamber.homing_mixed")["status"], "SKIPPED");
    assert_eq!(find(&r, "chamber.homing_z_g")["status"], "PASS");
    let faces: Vec<&Value> = r["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["id"].as_str().unwrap().starts_with("chamber.face["))
        .collect();
    assert!(faces.len() >= 8);
    assert!(faces.iter().all(|a| a["status"] == "PASS"));
}

#[test]
fn cremona_single_specialization() {
    let o = verify(&["cremona", "--samples", "1", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS    cremona.jacobian"));
}

#[test]
fn usage_and_data_errors_exit_two() {
    assert_eq!(verify(&["nonsense"]).status.code(), Some(2));
    assert_eq!(verify(&["config", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(verify(&["config", "--keum-file", "/nonexistent/keum.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(verify(&["import-keum", empty.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn import_rejects_property_violations() {
    // Identity matrices are well formed but miss the Weyl shift.
    let file = KeumFile {
        entries: type_one_weber()
            .iter()
            .map(|w| KeumRecord::from_isometry(w, &LatticeIsometry::identity()))
            .collect(),
    };
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("keum.json");
    std::fs::write(&path, serde_json::to_vec(&file).unwrap()).unwrap();
    let o = verify(&["import-keum", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("z(w'') = w'' + 2 r_w"), "{err}");
    assert!(!dir.path().join("keum.json.sha256").exists());
    // A run that loads the same file is a data error.
    let o = verify(&["chamber", "--keum-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
