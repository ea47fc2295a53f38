use std::path::PathBuf;
use std::process::{Command, Output};

const ENTRIES: [(&str, &[&str]); 11] = [
    ("diffusion", &["forward", "symmetric", "crank-nicholson"]),
    ("murray", &["forward", "symmetric"]),
    ("burgers", &["forward", "symmetric"]),
    ("fisher", &["forward", "symmetric"]),
    ("huxley", &["forward", "symmetric"]),
    ("burgers-fisher", &["forward", "symmetric"]),
    ("burgers-huxley", &["forward", "symmetric"]),
    ("fitzhugh-nagumo", &["forward", "symmetric"]),
    ("reaction-kinetics", &["forward", "symmetric", "crank-nicholson"]),
    ("chromatography", &["forward", "symmetric"]),
    ("reaction-kinetics-linear", &["forward", "symmetric", "crank-nicholson"]),
];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigstrength")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares against a stored file; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn golden_strength_reports() {
    for (name, schemes) in ENTRIES {
        for scheme in schemes {
            let text = stdout(&["strength", name, "--scheme", scheme]);
            check_golden(&format!("strength-{name}-{scheme}.txt"), &text);
        }
    }
    check_golden("catalog-list.txt", &stdout(&["catalog-list"]));
}

#[test]
fn reported_psi_matches_catalog() {
    let list = stdout(&["catalog-list", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&list).unwrap();
    for row in rows.as_array().unwrap() {
        let name = row["name"].as_str().unwrap();
        for form in row["forms"].as_array().unwrap() {
            let scheme = form["scheme"].as_str().unwrap();
            let report: serde_json::Value =
                serde_json::from_str(&stdout(&["strength", name, "--scheme", scheme, "--format", "json"])).unwrap();
            assert_eq!(report["psi"], form["psi"], "{name} {scheme}");
        }
    }
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, schemes) in ENTRIES {
        for scheme in schemes {
            let path = dir.path().join(format!("{name}-{scheme}.json"));
            let path = path.to_str().unwrap();
            stdout(&["discretize", name, "--scheme", scheme, "--export", path]);
            let from_catalog = stdout(&["strength", name, "--scheme", scheme]);
            let from_file = stdout(&["strength", path]);
            let body = |s: &str| s.lines().skip(1).collect::<Vec<_>>().join("\n");
            assert_eq!(body(&from_catalog), body(&from_file), "{name} {scheme}");

            // Exporting the re-read file reproduces it byte for byte.
            let text = std::fs::read_to_string(path).unwrap();
            let again = stdout(&["discretize", name, "--scheme", scheme, "--format", "json"]);
            assert_eq!(text, again);
        }
    }
}

#[test]
fn point_commands() {
    assert!(stdout(&["phi", "(2,0) (-1,1) (1,-1) (-2,-1)"]).starts_with("phi = 5t\n"));
    assert!(stdout(&["phi", "(1,1) (-2,1) (1,-1) (-2,-1)"]).starts_with("phi = 6t - 1\n"));
    assert!(stdout(&["omega", "--m", "2"]).contains("binomial = C(t+2,2)\n"));
    assert!(stdout(&["phi", "(0,0)"]).starts_with("phi = 0\n"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["omega", "(2,0) (1,1) (2,2)", "--format", "json"])).unwrap();
    assert_eq!(json["minimal"], serde_json::json!([[1, 1], [2, 0]]));
}

#[test]
fn catalog_examples() {
    let report = stdout(&["strength", "diffusion"]);
    assert!(report.contains("psi = 5t\n"));
    for leader in ["a1^2 y", "a1^-1 a2 y", "a1 a2^-1 y", "a1^-2 a2^-1 y"] {
        assert!(report.contains(&format!("leader {leader}:")), "{leader}");
    }
    let cs = stdout(&["charset", "diffusion", "--scheme", "symmetric"]);
    assert!(cs.contains("(2 elements)"));
    assert!(cs.contains("leader a1 y:") && cs.contains("leader a1^-2 y:"));
    let flipped = stdout(&["strength", "fisher", "--scheme", "symmetric", "--ranking", "a2>a1"]);
    assert!(flipped.contains("ranking: a2 > a1\n") && flipped.contains("psi = 4t\n"));
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "reaction-kinetics-linear", "--seed", "5", "--format", "json"]);
    let b = run(&["verify", "reaction-kinetics-linear", "--seed", "5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_str(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    assert_eq!(report["total"], 12);
    // Beyond the origin every grid count matches the polynomial.
    for check in report["checks"].as_array().unwrap() {
        if check["r"] != 0 {
            assert_eq!(check["grid_count"].to_string(), check["psi"].as_str().unwrap());
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["phi", "(1,0) (2,x)"]).status.code(), Some(1));
    assert_eq!(run(&["strength", "no-such-entry"]).status.code(), Some(1));
    assert_eq!(run(&["strength", "diffusion", "--scheme", "sideways"]).status.code(), Some(1));
    assert_eq!(run(&["strength", "murray", "--scheme", "crank-nicholson"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "fisher"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "diffusion"]).status.code(), Some(3));
    let big: Vec<String> = (0..30).map(|i| format!("({i},{})", 30 - i)).collect();
    assert_eq!(run(&["omega", &big.join(" ")]).status.code(), Some(4));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"m\": 2,\n \"translations\": [\"a1\", \"a2\"],\n \"indeterminates\": [\"y\"],\n \"polynomials\": [[{\"coeff\": \"1/\"}]]}").unwrap();
    let out = run(&["strength", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column"));
}
