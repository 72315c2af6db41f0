use std::io::Write;
use std::process::Command;

use motivic_cli::run;

fn golden(name: &str) -> String {
    format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn temp_file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("motivic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn jets_from_flags() {
    let out = run(["motivic", "jets", "--vars", "x", "--level", "0", "x"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "a_0\n"));
    let out = run(["motivic", "jets", "--vars", "x,y", "--level", "1", "x"]);
    assert_eq!(out.stdout, "a_0\na_1\n");
    let out = run(["motivic", "jets", "--vars", "x,y", "--level", "0", "x - y"]);
    assert_eq!(out.stdout, "a_0 - b_0\n");
    let out = run(["motivic", "jets", "--vars", "x,y", "--level", "1", "x +* y"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("offset 3"), "{}", out.stderr);
}

#[test]
fn compose_and_compare_from_flags() {
    let out =
        run(["motivic", "--cap", "7", "compose", "--vars", "x,y", "--arc", "0,0,1;0,0,0,1", "y^2 - x^3"]);
    assert_eq!(out.stdout, "O(t^8)\n");
    let out = run(["motivic", "compose", "--vars", "x", "--arc", "1/2,1", "2*x"]);
    assert_eq!(out.stdout, "1 + 2*t + O(t^13)\n");
    let out = run(["motivic", "compare", "u^-2 + O(u^-9)", "u^-1 + O(u^-9)"]);
    assert_eq!(out.stdout, "less\n");
    let out = run(["motivic", "--format", "json", "compare", "u^-1 + O(u^-9)", "u^-1 + O(u^-9)"]);
    assert!(out.stdout.contains("\"result\": \"equal\""));
}

#[test]
fn hx_from_flags() {
    let out = run(["motivic", "hx", "--vars", "x,y,z", "x^2 - z*y^2"]);
    assert_eq!(out.stdout, "-2*y*z\n-y^2\n2*x\n");
    let out = run(["motivic", "hx", "--vars", "x", "3"]);
    assert_eq!(out.code, 1);
}

#[test]
fn measure_and_integrate_from_bare_resolution_files() {
    let res =
        r#"{"ambient_dim": 1, "strata": [{"name": "0", "index_set": [1], "class": "1", "p_mults": [0]}]}"#;
    let path = temp_file("line.json", res);
    let out = run(["motivic", "--floor", "-10", "measure", &path]);
    assert_eq!(out.stdout, "u^-1 + O(u^-10)\n");

    let payload = r#"{"resolution": {"ambient_dim": 1, "strata": [{"name": "0", "index_set": [1], "class": "1", "p_mults": [1]}]}, "alpha": [[1]]}"#;
    let path = temp_file("weighted.json", payload);
    let closed = run(["motivic", "--floor", "-12", "integrate", &path]);
    let summed = run(["motivic", "--floor", "-12", "integrate", &path, "--e-max", "40"]);
    assert_eq!(closed.code, 0);
    assert_eq!(closed.stdout, summed.stdout);
}

#[test]
fn flags_override_file_options() {
    let out = run(["motivic", "--floor", "-6", "run", &golden("cusp_measure.json")]);
    assert_eq!(out.stdout, "u^-2 - u^-3 + u^-4 - u^-5 + O(u^-6)\n");
    let out = run(["motivic", "--format", "json", "run", &golden("cusp_measure.json")]);
    assert!(out.stdout.contains("\"floor\": -10"));
}

#[test]
fn schema_errors_exit_2_with_paths() {
    let wrong_version = temp_file("v2.json", r#"{"schema": 2, "kind": "jets", "payload": {}}"#);
    let out = run(["motivic", "run", &wrong_version]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("at schema"));

    let unknown = temp_file(
        "unknown.json",
        r#"{"schema": 1, "kind": "hx", "payload": {"vars": ["x"], "f": "x^2", "g": 1}}"#,
    );
    let out = run(["motivic", "run", &unknown]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unknown field `g`"), "{}", out.stderr);

    let bad_kind = temp_file("kind.json", r#"{"schema": 1, "kind": "zeta", "payload": {}}"#);
    assert_eq!(run(["motivic", "run", &bad_kind]).code, 2);

    let bad_class = temp_file(
        "class.json",
        r#"{"ambient_dim": 1, "strata": [{"name": "0", "index_set": [1], "class": "u +", "p_mults": [0]}]}"#,
    );
    let out = run(["motivic", "measure", &bad_class]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("strata[0].class"), "{}", out.stderr);

    let missing_q = temp_file(
        "noq.json",
        r#"{"diagram": {"ambient_dim": 1, "strata": [{"name": "0", "index_set": [1], "class": "1", "p_mults": [0]}]}, "mu_x": "u^-1 + O(u^-8)", "mu_y": "u^-1 + O(u^-8)"}"#,
    );
    let out = run(["motivic", "check-map", &missing_q]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("diagram.strata[0]"), "{}", out.stderr);
}

#[test]
fn check_map_text_format() {
    let out = run(["motivic", "--format", "text", "run", &golden("check_map_identity.json")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("conclusion: inverse_arc_analytic"));
    assert!(out.stdout.contains("hypothesis bounded_below: passed"));
}

#[test]
fn explicit_theorem_choice() {
    let body = r#"{"diagram": {"ambient_dim": 1, "strata": [{"name": "0", "index_set": [1], "class": "1", "p_mults": [1], "q_mults": [0]}]},
        "mu_x": {"resolution": {"ambient_dim": 1, "strata": [{"name": "0", "index_set": [1], "class": "1", "p_mults": [1]}]}},
        "mu_y": "u^-1 + O(u^-16)", "theorem": "inverse_mapping"}"#;
    let out = run(["motivic", "check-map", &temp_file("ift.json", body)]);
    assert_eq!(out.code, 4);
    assert!(out.stdout.contains("\"conclusion\": \"inconclusive\""));
}

#[test]
fn selfcheck_is_seeded() {
    let a = run(["motivic", "--seed", "7", "selfcheck", "--cases", "20"]);
    let b = run(["motivic", "--seed", "7", "selfcheck", "--cases", "20"]);
    assert_eq!(a, b);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout.lines().count(), 4);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(run(["motivic", "frobnicate"]).code, 2);
    let help = run(["motivic", "--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("check-map"));
}

#[test]
fn binary_matches_library_entry_point() {
    let path = golden("cusp_measure.json");
    let out = Command::new(env!("CARGO_BIN_EXE_motivic")).args(["run", &path]).output().unwrap();
    let lib = run(["motivic", "run", &path]);
    assert_eq!(out.status.code(), Some(lib.code));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.stdout);

    let out = Command::new(env!("CARGO_BIN_EXE_motivic"))
        .args(["run", &golden("divergent_integral.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
