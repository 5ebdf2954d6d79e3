use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn mauto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mauto")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mauto-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn validate_reports_kind() {
    for (file, prefix) in [
        ("counter-z.dautomaton", "OK, deterministic, 1 states"),
        ("sign-guess.automaton", "OK, nondeterministic"),
        ("anbn.pda", "OK, pda"),
        ("z-2z.scenario", "OK, scenario, 2 letters, subgroup parity"),
    ] {
        let o = mauto(&["validate", &fixture(file)]);
        assert_eq!(o.status.code(), Some(0), "{file}");
        assert!(stdout(&o).starts_with(prefix), "{file}: {}", stdout(&o));
    }
}

#[test]
fn validate_points_at_the_bad_line() {
    let o = mauto(&["validate", &fixture("invalid/two-edges.dautomaton")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 9"), "{}", stderr(&o));
    let o = mauto(&["validate", &fixture("invalid/unknown-monoid.automaton")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 2") && stderr(&o).contains("bicyclic"), "{}", stderr(&o));
}

#[test]
fn run_traces_the_register() {
    let counter = fixture("counter-z.dautomaton");
    let o = mauto(&["run", &counter, "aA"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("ACCEPT register=[0]\n"));
    assert_eq!(stdout(&o).lines().count(), 4);

    let o = mauto(&["run", &counter, "aa"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("REJECT register-not-identity [2]\n"));

    let o = mauto(&["run", &counter]);
    assert_eq!(o.status.code(), Some(0));

    let o = mauto(&["run", &counter, "ax"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("unknown letter 'x'"));
}

#[test]
fn run_nondeterministic_lists_configurations() {
    let o = mauto(&["run", &fixture("sign-guess.automaton"), "aA"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().starts_with("ACCEPT configurations="));
}

#[test]
fn schreier_output_validates_and_agrees() {
    let scenario = fixture("dinf-translations.scenario");
    let out = scratch("dinf.dautomaton");
    let o = mauto(&["schreier", &scenario, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = mauto(&["validate", out.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("OK, deterministic, 2 states"), "{}", stdout(&o));
    let o = mauto(&["agree", out.to_str().unwrap(), &scenario]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("RESULT pass\n"));

    // Without --out the automaton goes to stdout and matches the checked-in fixture.
    let o = mauto(&["schreier", &scenario]);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("dinf-translations.dautomaton")).unwrap());
    assert!(stderr(&o).contains("RESULT pass"));
}

#[test]
fn theorem_passes_on_the_dihedral_scenario() {
    let o = mauto(&["theorem", &fixture("dinf-translations.scenario")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("RESULT pass\n"));
}

#[test]
fn agree_fails_on_a_guessing_automaton() {
    let o = mauto(&["agree", &fixture("sign-guess.automaton"), &fixture("z-2z.scenario"), "--max-len", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn gallery_refuter() {
    let o = mauto(&["gallery", "refuter-2-state"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("29318 of 29318"));
}

#[test]
fn usage_errors() {
    assert_eq!(mauto(&["bogus"]).status.code(), Some(64));
    assert_eq!(mauto(&["gallery", "nope"]).status.code(), Some(64));
    assert_eq!(mauto(&["agree", "x", "y", "--max-len", "0"]).status.code(), Some(64));
    assert_eq!(mauto(&["--help"]).status.code(), Some(0));
    assert_eq!(mauto(&["validate", "/nonexistent/file"]).status.code(), Some(3));
}
