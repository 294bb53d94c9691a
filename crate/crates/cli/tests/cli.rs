use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sheafloci"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn random_config(dir: &TempDir, degree: usize, seed: u64, stratum: &str) -> String {
    let p = dir.path().join(format!("d{degree}-{seed}-{stratum}.json"));
    let out = run(&[
        "random",
        "--degree",
        &degree.to_string(),
        "--seed",
        &seed.to_string(),
        "--stratum",
        stratum,
        "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    p.to_str().unwrap().to_owned()
}

fn read_json(path: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(Path::new(path)).unwrap()).unwrap()
}

#[test]
fn random_is_deterministic_per_seed() {
    let a = run(&["random", "--degree", "6", "--seed", "7"]);
    let b = run(&["random", "--degree", "6", "--seed", "7"]);
    let c = run(&["random", "--degree", "6", "--seed", "8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let v = json(&a);
    assert_eq!(v["simple"].as_array().unwrap().len(), 10);
    assert_eq!(v["fat"].as_array().unwrap().len(), 0);
}

#[test]
fn random_double_has_one_fat_point() {
    let v = json(&run(&["random", "--degree", "6", "--seed", "7", "--stratum", "double"]));
    assert_eq!(v["simple"].as_array().unwrap().len(), 8);
    let fat = v["fat"].as_array().unwrap();
    assert_eq!(fat.len(), 1);
    assert_eq!(fat[0]["mult"], 2);
}

#[test]
fn analyze_generic_quintic() {
    let dir = TempDir::new().unwrap();
    let cfg = random_config(&dir, 5, 3, "generic");
    let out = run(&["analyze", "--config", &cfg, "--degree", "5", "--subset", "1,2,3,4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["fibre_dim"], 14);
    assert_eq!(v["stratum"], "distinct");
    assert!(v["violations"].as_array().unwrap().is_empty());
    let loci = v["loci"].as_array().unwrap();
    assert_eq!(loci.len(), 6);
    assert!(loci.iter().all(|l| l["codim"] == 2 && l["normal_dim"] == 2));
    let inter = v["intersections"].as_array().unwrap();
    assert_eq!(inter.len(), 15 + 20 + 1);
    let extra = inter
        .iter()
        .find(|e| e["set"] == serde_json::json!([1, 2, 3, 4]))
        .unwrap();
    assert_eq!(extra["codim"], 8);
}

#[test]
fn analyze_output_does_not_depend_on_jobs() {
    let dir = TempDir::new().unwrap();
    let cfg = random_config(&dir, 6, 5, "double");
    let one = dir.path().join("one.json");
    let four = dir.path().join("four.json");
    for (jobs, path) in [("1", &one), ("4", &four)] {
        let out = run(&[
            "analyze",
            "--config",
            &cfg,
            "--degree",
            "6",
            "--jobs",
            jobs,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (a, b) = (fs::read(&one).unwrap(), fs::read(&four).unwrap());
    assert_eq!(a, b);
    let v = read_json(one.to_str().unwrap());
    assert_eq!(v["stratum"], "one-double");
    assert_eq!(v["fibre_dim"], 17);
}

#[test]
fn analyze_rejects_degree_mismatch_and_bad_input() {
    let dir = TempDir::new().unwrap();
    let cfg = random_config(&dir, 5, 1, "generic");
    assert_eq!(code(&run(&["analyze", "--config", &cfg, "--degree", "6"])), 1);
    let bad = write(&dir, "bad.json", "{\"degree\": 5, \"simple\": [[1, 2]]}");
    assert_eq!(code(&run(&["analyze", "--config", &bad, "--degree", "5"])), 1);
    assert_eq!(
        code(&run(&[
            "analyze", "--config", &cfg, "--degree", "5", "--subset", "1,99"
        ])),
        1
    );
    assert_eq!(code(&run(&["random", "--degree", "3", "--seed", "1"])), 1);
}

#[test]
fn points_on_a_conic_are_not_generic() {
    let dir = TempDir::new().unwrap();
    // Six points on x1^2 = x0*x2.
    let cfg = write(
        &dir,
        "conic.json",
        r#"{"degree": 5, "simple": [[1,0,0],[1,1,1],[1,2,4],[1,3,9],[1,-1,1],[0,0,1]]}"#,
    );
    let out = run(&["analyze", "--config", &cfg, "--degree", "5"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("x1^2"), "{err}");
    assert_eq!(code(&run(&["kronecker", "--config", &cfg])), 2);
}

#[test]
fn deeper_strata_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "triple.json",
        r#"{"degree": 5, "simple": [[0,1,0],[0,0,1],[1,1,1]],
            "fat": [{"chart": [[1,0,0],[0,1,0],[0,0,1]], "h": [0,0,1], "mult": 3}]}"#,
    );
    let out = run(&["analyze", "--config", &cfg, "--degree", "5"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["stratum"], "other");
}

#[test]
fn builtin_sextic_passes() {
    let out = run(&["verify-remark6"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS"));
    let v = json(&out);
    assert_eq!(v["codim_first_four"], 8);
    assert_eq!(v["codim_first_five"], 9);
    assert_eq!(v["pairs_all_four"], true);
}

#[test]
fn generic_sextic_fails_the_sextic_check() {
    let dir = TempDir::new().unwrap();
    let cfg = random_config(&dir, 6, 11, "generic");
    let out = run(&["verify-remark6", "--config", &cfg]);
    assert_eq!(code(&out), 4);
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert_eq!(v["codim_first_five"], 10);
}

#[test]
fn kronecker_of_the_standard_triangle() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "tri.json",
        r#"{"degree": 4, "simple": [[1,0,0],[0,1,0],[0,0,1]]}"#,
    );
    let out = run(&["kronecker", "--config", &cfg]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["module"]["n"], 3);
    let rows = v["module"]["entries"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 2));
    assert_eq!(v["minors"].as_array().unwrap().len(), 3);
}

#[test]
fn kronecker_on_sampled_configurations() {
    let dir = TempDir::new().unwrap();
    for (seed, stratum) in [(1, "generic"), (2, "double")] {
        let cfg = random_config(&dir, 6, seed, stratum);
        let out = run(&["kronecker", "--config", &cfg]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["resolution"], true);
        assert_eq!(v["injective"], true);
        assert_eq!(v["module"]["n"], 5);
    }
}

#[test]
fn localfree_verdicts() {
    let free = json(&run(&["localfree", "--poly", "x - y^2", "--h", "0", "--mult", "2"]));
    assert_eq!(free["free"], true);
    assert_eq!(free["oracle"], true);
    assert_eq!(free["u0"], "1");

    let out = run(&["localfree", "--poly", "x^2 - y^3", "--h", "0", "--mult", "2"]);
    assert_eq!(code(&out), 0);
    let cusp = json(&out);
    assert_eq!(cusp["free"], false);
    assert_eq!(cusp["regular"], false);
    assert_eq!(cusp["oracle"], false);
}

#[test]
fn localfree_from_file_and_errors() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "germ.json", r#"{"f": "x*y - y^3", "h": ["0", "0"], "mult": 1}"#);
    let out = run(&["localfree", "--in", &input]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["free"], false);

    let outside = run(&["localfree", "--poly", "x - y", "--h", "0", "--mult", "2"]);
    assert_eq!(code(&outside), 1);
    assert_eq!(json(&outside)["member"], false);

    assert_eq!(
        code(&run(&["localfree", "--poly", "x - 1", "--h", "0", "--mult", "1"])),
        1
    );
    assert_eq!(code(&run(&["localfree", "--poly", "x +* y", "--mult", "1"])), 1);
    assert_eq!(
        code(&run(&["localfree", "--poly", "x", "--mult", "2", "--truncation", "2"])),
        1
    );
}
