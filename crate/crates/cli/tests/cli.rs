use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-seeds")).args(args).env_remove("TORIC_SEEDS_THREADS").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const HEXAGON: &str = "6 2\n1 2\n2 3\n3 4\n4 5\n5 6\n1 6\n";

#[test]
fn orbit_counts() {
    for (n, count) in [(2, 7), (7, 28), (11, 1)] {
        let text = stdout(&["orbits", "--n", &n.to_string()]);
        assert!(text.starts_with(&format!("# n={n} p=4 orbits={count}\n")), "{text}");
        assert_eq!(text.lines().count(), count + 1);
    }
}

#[test]
fn enumerate_small_universes() {
    let dir = tempfile::tempdir().unwrap();
    let tetra = write(dir.path(), "tetra.cplx", "4 3\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    assert!(stdout(&["enumerate", "--universe", &tetra]).ends_with("complexes=1\n"));
    let edges = write(dir.path(), "edges.cplx", "4 2\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    assert!(stdout(&["enumerate", "--universe", &edges]).ends_with("complexes=7\n"));
}

#[test]
fn enumerate_from_a_characteristic_map() {
    let dir = tempfile::tempdir().unwrap();
    let lambda = write(dir.path(), "l.mat", "2 4 Z2\n1 0 1 0\n0 1 0 1\n");
    let out = dir.path().join("found.cplx");
    let text = stdout(&["enumerate", "--lambda", &lambda, "--out", out.to_str().unwrap()]);
    // bases are the four edges 12 14 23 34, which form the square
    assert!(text.ends_with("complexes=1\n"), "{text}");
    let found = toric_seeds::format::read_complexes(&out).unwrap();
    assert_eq!(found, vec![toric_seeds::PureComplex::polygon(4)]);
}

#[test]
fn enumerate_union_matches_the_library() {
    let text = stdout(&["enumerate", "--n", "2", "--props", "ubt"]);
    let db = toric_seeds::classify::SeedDatabase::bootstrap();
    let report = toric_seeds::classify::pipeline(2, &db, &Default::default()).unwrap();
    assert!(text.ends_with(&format!("complexes={}\n", report.line7)), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("universe ")).count(), 7);
}

#[test]
fn output_does_not_depend_on_threads() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for t in ["1", "2", "4"] {
        let out = dir.path().join(format!("t{t}.cplx"));
        stdout(&["--threads", t, "enumerate", "--n", "3", "--orbit", "5", "--out", out.to_str().unwrap()]);
        files.push(fs::read(&out).unwrap());
    }
    assert!(files.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn pipeline_writes_the_database() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("db");
    let seeds = dir.path().join("seeds.cplx");
    let text = stdout(&["pipeline", "--n", "3", "--seed-db", db.to_str().unwrap(), "--out", seeds.to_str().unwrap()]);
    assert!(text.contains("COUNTS line7="), "{text}");
    assert!(text.contains("line15=5 line19=4"), "{text}");
    assert!(text.contains("total seeds:                 4"), "{text}");
    assert_eq!(toric_seeds::format::read_complexes(&seeds).unwrap().len(), 4);
    let index = fs::read_to_string(db.join("index.txt")).unwrap();
    assert!(index.lines().any(|l| l == "4 3 4"), "{index}");
    assert!(index.lines().any(|l| l == "4 2 1"), "{index}");
}

#[test]
fn verify_suites_pass() {
    let text = stdout(&["verify"]);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("ok   wpm m=4 n=2 facets=6: 7 vs brute force 7"));
    assert!(text.contains("ok   cyclic n=4: bound 20, facets 20"));
    assert!(text.contains("ok   projective plane: [1, 1, 1]"));
    assert!(text.contains("ok   isomorphism: 200/200 agree"));
}

#[test]
fn analyze_reference_complexes() {
    let dir = tempfile::tempdir().unwrap();
    let hex = write(dir.path(), "hex.cplx", HEXAGON);
    let lambda = write(dir.path(), "hex.mat", "2 6 Z\n1 0 -1 -1 0 1\n0 1 1 0 -1 -1\n");
    let text = stdout(&["analyze", &hex, "--lambda", &lambda]);
    for line in ["seed: yes", "IDCM: yes", "integer lift: yes", "partitions: 4", "optimal partition: {1 4} {2 5} {3 6}"] {
        assert!(text.contains(line), "missing {line:?} in\n{text}");
    }
    let oct = write(dir.path(), "oct.cplx", "6 3\n1 3 5\n1 3 6\n1 4 5\n1 4 6\n2 3 5\n2 3 6\n2 4 5\n2 4 6\n");
    assert!(stdout(&["analyze", &oct]).contains("suspension: yes"));
    let pent = write(dir.path(), "pent.cplx", "5 2\n1 2\n2 3\n3 4\n4 5\n1 5\n");
    assert!(stdout(&["analyze", &pent]).contains("partitions: none"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.cplx", "6 2\n1 9\n");
    assert_eq!(run(&["analyze", &bad]).status.code(), Some(2));

    let hex = write(dir.path(), "hex.cplx", HEXAGON);
    let pin = write(dir.path(), "pin.cplx", "6 2\n1 2\n");
    assert_eq!(run(&["enumerate", "--universe", &hex, "--require", &pin, "--forbid", &pin]).status.code(), Some(3));

    let db = dir.path().join("db");
    fs::create_dir(&db).unwrap();
    fs::write(db.join("index.txt"), "# p n count\n").unwrap();
    assert_eq!(run(&["pipeline", "--n", "2", "--seed-db", db.to_str().unwrap()]).status.code(), Some(4));

    assert_eq!(run(&["--cap", "3", "enumerate", "--n", "5"]).status.code(), Some(5));
    assert_eq!(run(&["orbits"]).status.code(), Some(2));
}
