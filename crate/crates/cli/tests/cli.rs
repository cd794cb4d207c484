use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    root.join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-basic"))
        .args(args)
        .env_remove("TORIC_BASIC_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_slice(&run(&all).stdout).expect("json report")
}

#[test]
fn validate_exit_codes() {
    let ok = run(&["validate", &corpus("cp2.fan")]);
    assert_eq!(ok.status.code(), Some(0));
    let missing = run(&["validate", &corpus("invalid/cp2-missing-cone.fan")]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stdout(&missing).contains("pseudomanifold_walls  FAIL"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fan");
    std::fs::write(
        &bad,
        "{\n  \"schema\": \"markedfan/1\",\n  \"dim\": 2,,\n}\n",
    )
    .unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn invalid_fixtures_are_rejected() {
    for (file, check) in [
        ("cp2-missing-cone", "pseudomanifold_walls"),
        ("overlapping-cones", "wall_separation"),
        ("dependent-facet", "facet_independence"),
        ("marking-outside-lattice", "lattice_membership"),
        ("odd-wall", "pseudomanifold_walls"),
        ("rank-deficient", "marking_rank"),
    ] {
        let path = corpus(&format!("invalid/{file}.fan"));
        let report = json(&["validate", "--mode", "exact", &path]);
        let checks = report["results"][0]["checks"].as_array().unwrap();
        let failed = checks.iter().find(|c| c["name"] == check).unwrap();
        assert_eq!(failed["passed"], false, "{file}");
        assert_eq!(run(&["betti", &path]).status.code(), Some(1), "{file}");
    }
}

#[test]
fn betti_examples() {
    assert_eq!(
        stdout(&run(&["betti", &corpus("cp2.fan")])),
        "b^0=1 b^2=1 b^4=1\n"
    );
    assert_eq!(
        stdout(&run(&["betti", &corpus("square.fan")])),
        "b^0=1 b^2=2 b^4=1\n"
    );
    assert_eq!(stdout(&run(&["betti", &corpus("ghost2.fan")])), "b^0=1\n");
    let ring = stdout(&run(&["betti", "--ring", "--cup", &corpus("cp2.fan")]));
    assert!(ring.contains("v1*v2*v3"));
    assert!(ring.contains("v1 - v3, v2 - v3"));
    assert!(ring.contains("v3 * v3") && ring.contains("= v3^2"));
}

#[test]
fn betti_equals_hidden_h_vector() {
    let dir = PathBuf::from(corpus(""));
    let mut files: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension().is_some_and(|x| x == "fan")).then(|| p.display().to_string())
        })
        .collect();
    files.sort();
    assert!(files.len() >= 16);
    let mut args = vec!["betti", "--debug-hvector"];
    args.extend(files.iter().map(String::as_str));
    let report = json(&args);
    for r in report["results"].as_array().unwrap() {
        assert_eq!(r["betti"], r["h_vector"], "{}", r["file"]);
    }
}

#[test]
fn iso_examples() {
    let yes = stdout(&run(&[
        "iso",
        &corpus("cp2.fan"),
        &corpus("cp2-relabeled.fan"),
    ]));
    assert!(yes.starts_with("isomorphic"));
    assert!(yes.contains("p-equivalent") && yes.contains("transversely equivalent"));
    let r = json(&["iso", &corpus("cp2.fan"), &corpus("cp2-relabeled.fan")]);
    assert_eq!(r["results"][0]["sigma"].as_array().unwrap().len(), 3);
    for (a, b) in [
        ("cp2.fan", "square.fan"),
        ("square.fan", "square-scaled.fan"),
    ] {
        let o = run(&["iso", &corpus(a), &corpus(b)]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("not isomorphic"), "{a} {b}");
    }
}

#[test]
fn realize_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (file, m, pad) in [
        ("cp2.fan", 4, 1),
        ("square.fan", 4, 0),
        ("ghost2.fan", 2, 0),
    ] {
        let out = dir.path().join("r.json");
        let o = run(&["realize", &corpus(file), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{file}");
        assert!(
            stdout(&o).contains(&format!("padding             {pad}")),
            "{}",
            stdout(&o)
        );
        let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(r["m"], m);
        assert_eq!(r["kernel"].as_array().unwrap().len() % 2, 0);
    }
    let r = json(&["realize", &corpus("sqrt2-square.fan")]);
    assert_eq!(r["results"][0]["realization"]["rational"], false);
    let r = json(&["realize", &corpus("square.fan")]);
    assert!(r["results"][0]["note"]
        .as_str()
        .unwrap()
        .contains("Seifert"));
}

#[test]
fn koszul_examples() {
    let oct = stdout(&run(&["koszul", &corpus("octahedron.fan")]));
    assert!(oct
        .lines()
        .nth(1)
        .unwrap()
        .split_whitespace()
        .eq(["i=0", "1", "3", "3", "1"]));
    assert!(!oct.contains("CONSISTENCY FAILURE"));
    let r = json(&["koszul", &corpus("cp2.fan"), "--max-degree", "4"]);
    assert_eq!(r["results"][0]["higher_vanish"], true);
    let g = json(&["koszul", &corpus("ghost2.fan")]);
    assert_eq!(
        g["results"][0]["table"]["entries"],
        serde_json::json!([[1]])
    );
}

#[test]
fn json_is_stable_and_seeded() {
    let args = ["validate", "--seed", "7", &corpus("16-cell.fan")];
    let a = run(&[&args[..], &["--format", "json"]].concat());
    let b = run(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_toric-basic"))
        .args(["validate", "--format", "json", &corpus("cp2.fan")])
        .env("TORIC_BASIC_SEED", "99")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(v["results"][0]["seed"], 99);
    assert_eq!(v["schema"], "report/1");
}

#[test]
fn jobs_do_not_change_output() {
    let files = [
        corpus("cp3.fan"),
        corpus("octahedron.fan"),
        corpus("stacked3-s1.fan"),
    ];
    let mut one = vec!["betti", "--jobs", "1"];
    one.extend(files.iter().map(String::as_str));
    let mut many = vec!["betti", "--jobs", "4"];
    many.extend(files.iter().map(String::as_str));
    assert_eq!(run(&one).stdout, run(&many).stdout);
}

#[test]
fn corpus_command_reproduces_bundled_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["corpus", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let written = PathBuf::from(line);
        let rel = written.strip_prefix(dir.path()).unwrap();
        let bundled = std::fs::read_to_string(corpus(rel.to_str().unwrap())).unwrap();
        assert_eq!(
            std::fs::read_to_string(&written).unwrap(),
            bundled,
            "{}",
            rel.display()
        );
    }
}
