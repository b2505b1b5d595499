use std::process::Command;

use zdclass::cli::{main_with, EXIT_CAP, EXIT_OK, EXIT_SPEC, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("zdclass").chain(args.iter().copied());
    let code = main_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("zdclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn graph_text_lists_classes_and_edges() {
    let (code, out, _) = run(&["graph", "Z12"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("Z12: 4 vertices, 3 edges"));
    for line in ["[2] -- [6]", "[3] -- [4]", "[4] -- [6]"] {
        assert!(out.contains(line), "{out}");
    }
}

#[test]
fn graph_dot_and_json() {
    let (code, out, _) = run(&["graph", "Z8", "--format", "dot"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "graph \"Z8\" {\n  0 [label=\"[2]\"];\n  1 [label=\"[4]\"];\n  0 -- 1;\n}\n"
    );

    let (code, out, _) = run(&["graph", "Z8", "--format", "json", "--classic"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["gamma"]["vertices"], serde_json::json!(["2", "4", "6"]));
    assert_eq!(v["gamma_e"]["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(v["gamma_e"]["vertices"][1]["is_max_in_F"], true);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec![
            "graph",
            "quot(Z2; t,x,y; t^2+t+1, x^2, y^2)",
            "--format",
            "json",
        ],
        vec!["check", "product(Z4,Z4)", "--format", "json"],
        vec!["ass", "Z108"],
    ] {
        assert_eq!(run(&args), run(&args));
    }
}

#[test]
fn ass_lists_primes() {
    let (code, out, _) = run(&["ass", "Z108"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "Z108: 2 associated primes\n  [36] ann size 36 degree 7 maximal in F\n  [54] ann size 54 degree 6 maximal in F\n"
    );
}

#[test]
fn check_prints_one_line_per_check() {
    let (code, out, _) = run(&["check", "product(Z4,Z4)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 15);
    assert!(out.lines().all(|l| !l.contains(" FAIL ")), "{out}");
}

#[test]
fn bad_specs_exit_2() {
    let (code, _, err) = run(&["graph", "quot(Z3; x; x^2"]);
    assert_eq!(code, EXIT_SPEC);
    assert!(err.contains("position"), "{err}");
    assert_eq!(run(&["graph", "Z1"]).0, EXIT_SPEC);
    assert_eq!(
        run(&["sweep", "Z12", "--var", "y", "--from", "2", "--to", "3"]).0,
        EXIT_SPEC
    );
}

#[test]
fn caps_exit_3() {
    let (code, _, err) = run(&["--element-cap", "10", "graph", "Z12"]);
    assert_eq!(code, EXIT_CAP);
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&["graph"]).0, EXIT_USAGE);
    assert_eq!(run(&["graph", "Z4", "--format", "xml"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn census_from_file() {
    let path = temp_file("specs.txt", "# two rings\nZ12\n\nproduct(Z2,Z3)\n");
    let (code, out, _) = run(&["census", "--file", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.starts_with("rings: 2  distinct graphs: 2  failures: 0  errors: 0"),
        "{out}"
    );

    let (code, out, _) = run(&[
        "census",
        "--file",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 2);
    for line in out.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

#[test]
fn screen_reads_json_and_dot() {
    let c4 = temp_file("c4.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}"#);
    let (code, out, _) = run(&["screen", c4.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.starts_with("fails:") && out.contains("NOCYCLE"),
        "{out}"
    );

    let p3 = temp_file("p3.dot", "graph p { a -- b; b -- c; }\n");
    let (code, out, _) = run(&["screen", p3.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passes_necessary"], true);
}

#[test]
fn sweep_reports_verdict_and_scope() {
    let (code, out, _) = run(&[
        "sweep",
        "quot(Z3; x,y; x^3, x*y)",
        "--var",
        "y",
        "--from",
        "3",
        "--to",
        "5",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verdict: stabilized at N=3"), "{out}");
    assert_eq!(out.matches("out-of-scope-exact").count(), 2);
}

#[test]
fn binary_exit_codes_and_seed_env() {
    let bin = env!("CARGO_BIN_EXE_zdclass");
    let status = |args: &[&str], seed: Option<&str>| {
        let mut cmd = Command::new(bin);
        cmd.args(args);
        match seed {
            Some(s) => cmd.env("ZDCLASS_SEED", s),
            None => cmd.env_remove("ZDCLASS_SEED"),
        };
        cmd.output().unwrap()
    };
    assert_eq!(status(&["graph", "Z12"], None).status.code(), Some(EXIT_OK));
    assert_eq!(status(&["nope"], None).status.code(), Some(EXIT_USAGE));
    assert_eq!(
        status(&["graph", "Z4"], Some("x")).status.code(),
        Some(EXIT_SPEC)
    );
    let a = status(&["graph", "Z12", "--format", "json"], Some("7"));
    let b = status(&["graph", "Z12", "--format", "json", "--seed", "7"], None);
    assert_eq!(a.stdout, b.stdout);
}
