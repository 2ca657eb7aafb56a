//! Golden tests: each invocation must produce byte-identical output across
//! runs, and exit codes must follow the 0/1/2 contract (verdict produced /
//! usage error / computation error).

use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests");
    p.push("data");
    p.push(name);
    p.to_str().unwrap().to_string()
}

fn qpw(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qpw"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn hilbert_of_kronecker_path_algebra() {
    let (code, stdout, _) = qpw(&["hilbert", &data("kq-kronecker.alg"), "--up-to", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0:2 1:2 2:0 3:0\n");
}

#[test]
fn koszul_verdict_of_kronecker_preprojective() {
    let (code, stdout, _) = qpw(&[
        "koszul",
        &data("kronecker-pi.alg"),
        "--steps",
        "5",
        "--bound",
        "8",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("linear: yes\nsteps-checked: 5\n"), "{stdout}");
}

#[test]
fn almost_koszul_of_a2_preprojective() {
    let (code, stdout, _) = qpw(&["almost-koszul", &data("pi-a2.alg"), "--bound", "6"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "(p,q) = (1,2)\nsocle-dim: 2\n");
}

#[test]
fn ext_generation_of_kronecker_preprojective() {
    let (code, stdout, _) = qpw(&[
        "ext-gen",
        &data("kronecker-pi.alg"),
        "--steps",
        "4",
        "--bound",
        "8",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("generated-in-degree-one: yes\n"), "{stdout}");
}

#[test]
fn cut_census_of_kronecker_preprojective() {
    let (code, stdout, _) = qpw(&[
        "cuts",
        "enumerate",
        &data("kronecker-pi.alg"),
        "--n",
        "1",
        "--bound",
        "4",
    ]);
    assert_eq!(code, 0);
    let valid: Vec<&str> = stdout.lines().filter(|l| l.ends_with(": valid")).collect();
    assert_eq!(valid, vec!["cut {a,b}: valid", "cut {a*,b*}: valid"]);
    assert_eq!(stdout.lines().count(), 17); // 16 subsets + count line
    assert!(stdout.ends_with("valid-count: 2\n"), "{stdout}");
}

#[test]
fn cut_check_reports_slices_and_gldim() {
    let (code, stdout, _) = qpw(&[
        "cut",
        "check",
        &data("kronecker-pi.alg"),
        "--cut",
        "a*,b*",
        "--n",
        "1",
        "--bound",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "cut {a*,b*}: valid\ndegree-zero-gldim: 1\nslices: 0:4 1:12 2:20\n"
    );
}

#[test]
fn cut_check_invalid_is_still_a_verdict() {
    let (code, stdout, _) = qpw(&[
        "cut",
        "check",
        &data("kronecker-pi.alg"),
        "--cut",
        "a",
        "--n",
        "1",
        "--bound",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("cut {a}: invalid:"), "{stdout}");
}

#[test]
fn cut_mutation_swaps_the_kronecker_cuts() {
    let (code, stdout, _) = qpw(&[
        "cut",
        "mutate",
        &data("kronecker-pi.alg"),
        "--cut",
        "a*,b*",
        "--vertex",
        "e",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "mutated: {a,b}\n");
    let (code, stdout, _) = qpw(&[
        "cut",
        "mutate",
        &data("kronecker-pi.alg"),
        "--cut",
        "a*,b*",
        "--vertex",
        "f",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("mutated: none\nreason:"), "{stdout}");
}

#[test]
fn conjugation_by_a_lists_all_images() {
    let (code, stdout, _) = qpw(&["conjugate", &data("kronecker-pi.alg"), "--by", "a"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "a: a\n\
         a*: a* + b.b* + b.b*.a - b*.b\n\
         b: b\n\
         b*: -a.b* - a.b*.a + b* + b*.a\n\
         e: e + a\n\
         f: f - a\n"
    );
}

#[test]
fn nilpotency_of_kronecker_elements() {
    let (code, stdout, _) = qpw(&[
        "nilpotency",
        &data("kronecker-pi.alg"),
        "--elements",
        "a, a*.a",
        "--bound",
        "12",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "a: nilpotent 2\na*.a: unknown beyond 12\n");
}

#[test]
fn graded_radical_comparison_specs() {
    for w2 in ["cut:a*,b*", "conj:a"] {
        let (code, stdout, _) = qpw(&[
            "gradical-compare",
            &data("kronecker-pi.alg"),
            "--w1",
            "pathlen",
            "--w2",
            w2,
            "--bound",
            "6",
        ]);
        assert_eq!(code, 0);
        assert_eq!(stdout, "verdict: equal\n", "w2 = {w2}");
    }
}

#[test]
fn preproj_output_round_trips_through_other_verbs() {
    let (code, stdout, _) = qpw(&[
        "preproj",
        &data("kq-kronecker.alg"),
        "--n",
        "1",
        "--bound",
        "6",
    ]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join("qpw-golden");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("kronecker-preproj.alg");
    std::fs::write(&file, &stdout).unwrap();
    let (code, table, _) = qpw(&["hilbert", file.to_str().unwrap(), "--up-to", "2"]);
    assert_eq!(code, 0);
    assert!(table.contains("1,0:2\n"), "{table}");
    assert!(table.contains("1,1:2\n"), "{table}");
    assert!(table.contains("2,1:6\n"), "{table}");
    // the emitted text is byte-stable across runs
    let (_, again, _) = qpw(&[
        "preproj",
        &data("kq-kronecker.alg"),
        "--n",
        "1",
        "--bound",
        "6",
    ]);
    assert_eq!(stdout, again);
}

#[test]
fn double_and_classical_preproj_agree_on_the_quiver() {
    let (code, doubled, _) = qpw(&["double", &data("kq-kronecker.alg")]);
    assert_eq!(code, 0);
    let (code, classical, _) = qpw(&["classical-preproj", &data("kq-kronecker.alg")]);
    assert_eq!(code, 0);
    let arrows = |s: &str| -> Vec<String> {
        s.lines()
            .filter(|l| l.starts_with("arrow:"))
            .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
            .collect()
    };
    assert_eq!(arrows(&doubled), vec!["a", "a*", "b", "b*"]);
    assert_eq!(arrows(&doubled), arrows(&classical));
    assert!(classical.lines().any(|l| l.starts_with("relation:")));
}

#[test]
fn qdual_of_kronecker_preprojective_is_quadratic() {
    let (code, stdout, _) = qpw(&["qdual", &data("kronecker-pi.alg")]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("arrow:")).count(), 4);
    assert_eq!(
        stdout.lines().filter(|l| l.starts_with("relation:")).count(),
        6
    );
}

#[test]
fn exit_codes_follow_the_contract() {
    // usage error: unknown flag
    let (code, _, _) = qpw(&["hilbert", &data("kq-kronecker.alg"), "--upto", "3"]);
    assert_eq!(code, 1);
    // usage error: unknown verb
    let (code, _, _) = qpw(&["frobnicate"]);
    assert_eq!(code, 1);
    // computation error: unreadable input
    let (code, _, stderr) = qpw(&["hilbert", "/nonexistent.alg", "--up-to", "2"]);
    assert_eq!(code, 2);
    assert!(stderr.starts_with("error:"), "{stderr}");
    // help is not an error
    let (code, _, _) = qpw(&["--help"]);
    assert_eq!(code, 0);
}
