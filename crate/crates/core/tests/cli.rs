use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ndet::cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
use ndet::list::ListSemantics;
use ndet::{ChoiceBag, Observer, SemError, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ndet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ndet"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn in_process(args: &[&str], extra: &[(&str, &dyn Observer)]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ndet").chain(args.iter().copied());
    let code = run(argv, extra, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn run_prints_permutations() {
    let o = ndet(&[
        "run",
        "--prog",
        "perm",
        "--backend",
        "list",
        "--input",
        "1,2,3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "[[1,2,3],[2,1,3],[2,3,1],[1,3,2],[3,1,2],[3,2,1]]\n"
    );
    let chunked = ndet(&[
        "run",
        "--prog",
        "perm",
        "--backend",
        "chunked",
        "--input",
        "1,2,3",
    ]);
    assert_eq!(stdout(&chunked), stdout(&o));
}

#[test]
fn empty_input_is_the_empty_list() {
    let o = ndet(&["run", "--prog", "perm", "--input", ""]);
    assert_eq!(stdout(&o), "[[]]\n");
}

#[test]
fn analyze_prints_degree() {
    let o = ndet(&["analyze", "--prog", "perm", "--input", "1,2,3"]);
    assert_eq!(stdout(&o), "{\"can_fail\":true,\"choices\":\"inf\"}\n");
}

#[test]
fn compile_then_exec_matches_run() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.sexp");
    let f = file.to_str().unwrap();
    let c = ndet(&["compile", "--prog", "perm", "--input", "1,2,3", "--out", f]);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    let e = ndet(&["exec", f]);
    let r = ndet(&["run", "--prog", "perm", "--input", "1,2,3"]);
    assert_eq!(e.stdout, r.stdout);

    let to_stdout = ndet(&["compile", "--prog", "perm", "--input", "1,2,3"]);
    assert_eq!(stdout(&to_stdout), fs::read_to_string(&file).unwrap());
}

#[test]
fn term_files_run_and_bad_ones_name_the_position() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.term");
    fs::write(
        &good,
        "; a comment\n(choice (list 1 2)\n        (cons (int 3) (nil)))\n",
    )
    .unwrap();
    let o = ndet(&["run", "--term-file", good.to_str().unwrap()]);
    assert_eq!(stdout(&o), "[[1,2],[3]]\n");

    let bad = dir.path().join("bad.term");
    fs::write(&bad, "(choice (nil)\n  (cons (nil) (nil)))").unwrap();
    let o = ndet(&["run", "--term-file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let msg = String::from_utf8(o.stderr).unwrap();
    assert!(msg.contains(&format!("{}:2:9", bad.display())), "{msg}");
}

#[test]
fn bad_target_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.sexp");
    fs::write(&p, "(cons (int 1)").unwrap();
    let o = ndet(&["exec", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("x.sexp:1:"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["run"],
        vec!["run", "--prog", "perm", "--term-file", "x"],
        vec!["run", "--prog", "quicksort"],
        vec!["run", "--prog", "perm", "--input", "1,two"],
        vec!["run", "--prog", "perm", "--backend", "abacus"],
        vec!["frobnicate"],
        vec!["exec", "/definitely/not/here.sexp"],
    ] {
        let (code, _, err) = in_process(&args, &[]);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = in_process(&["--help"], &[]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("crosscheck"));
}

#[test]
fn checks_pass_on_real_backends() {
    for backend in ["list", "chunked", "compiled"] {
        let (code, out, _) =
            in_process(&["check-laws", "--backend", backend, "--count", "60"], &[]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.ends_with("violations: 0\n"));
    }
    let (code, out, _) = in_process(&["crosscheck", "--count", "100", "--seed", "3"], &[]);
    assert_eq!(code, EXIT_OK, "{out}");
    let o = ndet(&["crosscheck", "--prog", "sort", "--input", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
}

/// Behaves like the list back-end except that, for a seeded subset of
/// terms, it silently drops the last choice.
struct FaultInjector {
    seed: u64,
}

impl Observer for FaultInjector {
    fn backend_name(&self) -> &str {
        "faulty"
    }

    fn observe(&self, t: &Term) -> Result<ChoiceBag, SemError> {
        let mut bag = ListSemantics.observe(t)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ t.size() as u64);
        if !bag.is_empty() && rng.gen_bool(0.3) {
            bag.0.pop();
        }
        Ok(bag)
    }
}

#[test]
fn violations_exit_one() {
    let faulty = FaultInjector { seed: 11 };
    let extra: [(&str, &dyn Observer); 1] = [("faulty", &faulty)];

    let (code, out, _) = in_process(
        &["check-laws", "--backend", "faulty", "--count", "50"],
        &extra,
    );
    assert_eq!(code, EXIT_VIOLATION);
    assert!(out.contains("[FAIL]") && out.contains("violation of"));

    let (code, out, _) = in_process(
        &["crosscheck", "--backend", "faulty", "--count", "50"],
        &extra,
    );
    assert_eq!(code, EXIT_VIOLATION);
    assert!(out.contains("`faulty` observed"));

    let (code, _, _) = in_process(
        &["crosscheck", "--backend", "list", "--count", "50"],
        &extra,
    );
    assert_eq!(code, EXIT_OK);
}

#[test]
fn check_reports_are_reproducible() {
    let faulty = FaultInjector { seed: 5 };
    let extra: [(&str, &dyn Observer); 1] = [("faulty", &faulty)];
    for args in [
        ["check-laws", "--backend", "faulty", "--seed", "9"],
        ["crosscheck", "--backend", "faulty", "--seed", "9"],
    ] {
        let a = in_process(&args, &extra);
        let b = in_process(&args, &extra);
        assert_eq!(a, b);
    }
}

#[test]
fn compile_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2)
        .map(|i| dir.path().join(format!("s{i}.sexp")))
        .collect();
    for p in &paths {
        let o = ndet(&[
            "compile",
            "--prog",
            "sort",
            "--input",
            "3,1,2",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let read = |p: &Path| fs::read(p).unwrap();
    assert_eq!(read(&paths[0]), read(&paths[1]));
}
