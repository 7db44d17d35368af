use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use verlinde_core::exact::YCoeff;
use verlinde_core::series::TruncatedSeries;

fn verlinde(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verlinde")).args(args).env("VERLINDE_CACHE_DIR", cache).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cache_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn instanton_cache_starts_with_one_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let o = verlinde(dir.path(), &["universal", "inst", "--order", "2", "--window", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    for j in 1..=11 {
        assert!(out.contains(&format!("A{} q^0: (1)\n", j)), "{}", out);
    }
    let first = cache_files(dir.path());
    assert_eq!(first.len(), 1);

    let again = verlinde(dir.path(), &["universal", "inst", "--order", "2", "--window", "4"]);
    assert!(stdout(&again).contains("loaded from cache"));

    std::fs::remove_file(dir.path().join(&first[0].0)).unwrap();
    let o = verlinde(dir.path(), &["--threads", "1", "universal", "inst", "--order", "2", "--window", "4"]);
    assert!(o.status.success());
    assert_eq!(cache_files(dir.path()), first);
}

#[test]
fn stale_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["universal", "inst", "--order", "1", "--window", "2", "--genus", "holomorphic"];
    assert!(verlinde(dir.path(), &args).status.success());
    let files = cache_files(dir.path());
    let path = dir.path().join(&files[0].0);
    let text = String::from_utf8(files[0].1.clone()).unwrap();
    // same key, tampered payload
    std::fs::write(&path, text.replacen("\"1\"", "\"2\"", 1)).unwrap();
    let o = verlinde(dir.path(), &args);
    assert!(stdout(&o).contains("stale cache entry replaced"), "{}", stdout(&o));
    assert_eq!(cache_files(dir.path()), files);
}

#[test]
fn monopole_c1_second_coefficient() {
    let dir = tempfile::tempdir().unwrap();
    let o = verlinde(dir.path(), &["universal", "mono", "--order", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let c1 = out.lines().find(|l| l.starts_with("C1 = ")).unwrap();
    assert_eq!(c1, "C1 = (1) + (y^-2 + 10 + y^2)*q^2");
}

#[test]
fn verify_targets() {
    let dir = tempfile::tempdir().unwrap();
    let o = verlinde(dir.path(), &["verify", "conj1", "--lattice", "k3", "--c1", "1", "--L", "1,1", "--max-vd", "6", "--strong-form"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("vd=6: 10"));

    let o = verlinde(dir.path(), &["verify", "conj3", "--lattice", "k3", "--c1", "1", "--L", "0,1", "--max-vd", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("vd=2: 0\n") && out.contains("vd=6: 0\n"), "{}", out);

    let o = verlinde(dir.path(), &["verify", "closed-forms", "--lattice", "k3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS jacobi triple product mod x^50"));
    assert!(stdout(&o).contains("PASS thm2 C3 mod q^24"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = verlinde(dir.path(), &["verify", "conj1", "--lattice", "no-such-surface", "--c1", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = verlinde(dir.path(), &["verify", "conj1", "--lattice", "k3", "--c1", "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23"]);
    assert_eq!(o.status.code(), Some(2));
    let o = verlinde(dir.path(), &["universal", "inst", "--order", "0"]);
    assert_eq!(o.status.code(), Some(2));

    // With a polarization that excludes both SW classes the weak form sees
    // nothing, while the closed formula does not vanish.
    let src = verlinde_core::lattice::K3_BLOWUP_TOML.replace(
        "canonical =",
        "polarization = [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1]\ncanonical =",
    );
    let f = dir.path().join("polarized.toml");
    std::fs::write(&f, src).unwrap();
    let o = verlinde(dir.path(), &["verify", "conj1", "--lattice", f.to_str().unwrap(), "--c1", "0", "--max-vd", "3"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn k3_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = verlinde(dir.path(), &["table", "--lattice", "k3", "--L", "0", "--c1", "0", "--formula", "conj1", "--max-vd", "6"]);
    assert!(o.status.success());
    let rows: Vec<String> = stdout(&o).lines().skip(2).map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect();
    assert_eq!(rows, ["1", "0", "2", "0", "3", "0", "4"]);
}

#[test]
fn empty_sw_table_gives_zero_table() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("empty.toml");
    std::fs::write(&f, "name = 'no sw'\nchi_o = 2\nblocks = ['U', 'U', 'U', 'E8(-1)', 'E8(-1)']\ncanonical = 'zero'\n").unwrap();
    for formula in ["conj1", "conj2", "conj3", "gn"] {
        let o = verlinde(dir.path(), &["table", "--lattice", f.to_str().unwrap(), "--formula", formula, "--max-vd", "8"]);
        assert!(o.status.success(), "{}", formula);
        let out = stdout(&o);
        let values: Vec<&str> = out.lines().skip(2).map(|l| l.split_whitespace().nth(1).unwrap()).collect();
        assert_eq!(values.len(), 9);
        assert!(values.iter().all(|v| *v == "0"), "{} {:?}", formula, values);
    }
}

#[test]
fn json_table_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = verlinde(dir.path(), &["table", "--lattice", "general-type-k1-chi2", "--L", "1", "--c1", "0,1", "--formula", "conj2", "--max-vd", "8", "--format", "json"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s = TruncatedSeries::<YCoeff>::from_json(&doc["series"]).unwrap();
    assert_eq!(s.to_json(), doc["series"]);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 9);
    assert_eq!(doc["rows"][3]["value"].as_str().unwrap(), s.coeff1(3).to_string());
}
