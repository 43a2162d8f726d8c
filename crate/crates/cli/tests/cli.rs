use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use origami_veech::json::{CertificateJson, OrigamiJson};
use tempfile::TempDir;

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Sandbox {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn cache(&self) -> PathBuf {
        self.dir.path().join("cache")
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_origami-veech"))
            .args(args)
            .current_dir(self.dir.path())
            .env("ORIGAMI_VEECH_CACHE", self.cache())
            .output()
            .unwrap()
    }

    /// Run `make` and save the origami under `name`.
    fn make(&self, name: &str, family: &[&str]) -> String {
        let mut args = vec!["make"];
        args.extend_from_slice(family);
        let out = self.run(&args);
        assert!(out.status.success());
        let path = self.dir.path().join(name);
        std::fs::write(&path, &out.stdout).unwrap();
        name.to_string()
    }

    fn write(&self, name: &str, text: &str) -> String {
        std::fs::write(self.dir.path().join(name), text).unwrap();
        name.to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn read_origami(path: &Path) -> origami_veech::RegularOrigami {
    let j: OrigamiJson = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    j.to_origami().unwrap()
}

#[test]
fn dihedral_cylinders() {
    let s = Sandbox::new();
    let f = s.make("d8.json", &["dihedral", "--k", "4"]);
    let out = s.run(&["cylinders", &f, "--m", "0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("w=")).collect();
    assert_eq!(rows, vec!["w=4 h=1 inverse_modulus=4"; 2]);
    assert!(text.contains("parabolic = (1 4; 0 1)"));

    let out = s.run(&["cylinders", &f, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["parabolic"], serde_json::json!([[1, 4], [0, 1]]));
    assert_eq!(v["cylinders"].as_array().unwrap().len(), 2);
}

#[test]
fn torus_cylinders() {
    let s = Sandbox::new();
    let f = s.make("torus.json", &["torus"]);
    let text = stdout(&s.run(&["cylinders", &f]));
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("w=")).collect();
    assert_eq!(rows, vec!["w=1 h=1 inverse_modulus=1"]);
}

#[test]
fn alternating_cylinders_in_shear_direction() {
    let s = Sandbox::new();
    let f = s.make("a5.json", &["alternating", "--n", "5"]);
    let o = read_origami(&s.path(&f));
    let expected = format!("inverse_modulus={}", (o.x() * o.y()).order());
    let text = stdout(&s.run(&["cylinders", &f, "--m", "1"]));
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("w=")).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ends_with(&expected)), "{text}");
}

#[test]
fn malformed_input_exits_with_two() {
    let s = Sandbox::new();
    let bad = s.write("bad.json", "{\"group\": 3}");
    assert_eq!(code(&s.run(&["cylinders", &bad])), 2);
    assert_eq!(code(&s.run(&["cylinders", "missing.json"])), 2);
    let not_generating = s.write(
        "ng.json",
        r#"{"group": {"degree": 4, "generators": [[[1,2,3,4]], [[2,4]]]}, "x": [[1,2,3,4]], "y": [[1,3],[2,4]]}"#,
    );
    let out = s.run(&["veech", &not_generating]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not generate"));
    assert_eq!(code(&s.run(&["frobnicate"])), 2);
    assert_eq!(code(&s.run(&["make", "alternating", "--n", "4"])), 2);
}

#[test]
fn veech_reports() {
    let s = Sandbox::new();
    let a5 = s.make("a5.json", &["alternating", "--n", "5"]);
    let torus = s.make("torus.json", &["torus"]);
    assert!(stdout(&s.run(&["veech", &a5])).starts_with("index 9\n"));
    assert!(stdout(&s.run(&["veech", &torus])).starts_with("index 1\n"));
}

#[test]
fn cache_is_consistent_with_fresh_computation() {
    let s = Sandbox::new();
    let d8 = s.make("d8.json", &["dihedral", "--k", "4"]);
    let fresh = stdout(&s.run(&["veech", &d8, "--no-cache"]));
    assert!(!s.cache().exists());
    let first = stdout(&s.run(&["veech", &d8]));
    let entries: Vec<_> = std::fs::read_dir(s.cache()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let cached = stdout(&s.run(&["veech", &d8]));
    assert_eq!(fresh, first);
    assert_eq!(fresh, cached);

    // A corrupt entry is ignored and rewritten.
    let entry = entries[0].as_ref().unwrap().path();
    std::fs::write(&entry, "not json").unwrap();
    assert_eq!(stdout(&s.run(&["veech", &d8])), fresh);
    assert!(std::fs::read_to_string(&entry).unwrap().starts_with('{'));
}

#[test]
fn certify_exit_codes() {
    let s = Sandbox::new();
    let a5 = s.make("a5.json", &["alternating", "--n", "5"]);
    let out = s.run(&["certify", &a5, "--method", "proposition"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for p in ["p=2 ", "p=3 ", "p=5 "] {
        assert!(text.contains(p), "{text}");
    }

    let out = s.run(&["certify", &a5, "--abc", "2,4,5"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not pairwise coprime"));

    let psl = s.make("psl.json", &["psl2-abc", "--q", "7", "--abc", "2,3,7"]);
    assert_eq!(code(&s.run(&["certify", &psl, "--abc", "2,3,7"])), 0);
    assert_eq!(code(&s.run(&["certify", &psl, "--method", "abc"])), 2);

    let d8 = s.make("d8.json", &["dihedral", "--k", "4"]);
    let out = s.run(&["certify", &d8]);
    assert_eq!(code(&out), 3);
    let text = stdout(&out);
    assert_eq!(text.trim(), "criterion not satisfied");
    assert!(!text.contains("congruence"));
}

#[test]
fn certificate_json_round_trips() {
    let s = Sandbox::new();
    let a5 = s.make("a5.json", &["alternating", "--n", "5"]);
    let out = s.run(&["certify", &a5, "--json"]);
    assert_eq!(code(&out), 0);
    let j: CertificateJson = serde_json::from_slice(&out.stdout).unwrap();
    let cert = j.to_certificate().unwrap();
    assert!(cert.verify().unwrap());
    assert_eq!(cert.origami, read_origami(&s.path(&a5)));
    assert_eq!(CertificateJson::from_certificate(&cert), j);
}

#[test]
fn made_origamis_round_trip() {
    let s = Sandbox::new();
    for (name, family) in [
        ("t.json", vec!["torus"]),
        ("d.json", vec!["dihedral", "--k", "5"]),
        ("a.json", vec!["alternating", "--n", "7"]),
    ] {
        let f = s.make(name, &family);
        let text = std::fs::read_to_string(s.path(&f)).unwrap();
        let o = read_origami(&s.path(&f));
        let again = serde_json::to_string_pretty(&OrigamiJson::from_origami(&o)).unwrap();
        assert_eq!(text.trim_end(), again);
    }
}

#[test]
fn surjectivity_tables() {
    let s = Sandbox::new();
    let a5 = s.make("a5.json", &["alternating", "--n", "5"]);
    let text = stdout(&s.run(&["surjectivity", &a5, "--max-n", "24"]));
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 23);
    assert!(rows.iter().all(|r| r.ends_with(" true")));

    let torus = s.make("torus.json", &["torus"]);
    let text = stdout(&s.run(&["surjectivity", &torus, "--max-n", "12"]));
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().all(|r| r.ends_with(" true")));

    let out = s.run(&["surjectivity", &torus, "--max-n", "1"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(code(&s.run(&["surjectivity", &torus, "--max-n", "61"])), 2);
}

#[test]
fn surface_report() {
    let s = Sandbox::new();
    let d8 = s.make("d8.json", &["dihedral", "--k", "4"]);
    let text = stdout(&s.run(&["surface", &d8]));
    assert!(text.contains("cone angles (units of 2pi) 2 2 2 2"));
    assert!(text.contains("genus 3"));
}
