use std::path::Path;
use std::process::{Command, Output};

fn mcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcs")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn magic_construction_verifies_pandiagonal() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t3.tbl");
    let out = mcs(&["construct", "magic", "C3xC3", "--center-subgroup", "10", "-o", path_str(&file)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = mcs(&["verify", path_str(&file), "--pandiagonal"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("pandiagonal magic: pass"));
    // identical to the bundled fixture
    let fixture = mcs(&["fixture", "table3"]);
    let written = std::fs::read_to_string(&file).unwrap();
    assert_eq!(stdout(&fixture), written);
}

#[test]
fn magic_construction_reports_failed_hypotheses() {
    let out = mcs(&["construct", "magic", "C9", "--center-subgroup", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("1. exp(G) divides k: FAILED"));
    let out = mcs(&["construct", "magic", "C2xC2", "--center-subgroup", "10", "--reps", "00", "01"]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert!(text.contains("3. product of N is 1: FAILED"));
    assert!(text.contains("1. exp(G) divides k: ok"));
}

#[test]
fn nonabelian_magic_needs_reps() {
    let out = mcs(&["construct", "magic", "S3xS3", "--center-subgroup", "123"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn search_outcomes_and_exit_codes() {
    let out = mcs(&["search", "C9"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("outcome: nonexistence"));
    let out = mcs(&["search", "C3 x C3", "--mode", "pandiagonal", "--replay"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("outcome: witness"));
    assert!(stdout(&out).contains("replay: ok"));
    let out = mcs(&["search", "C4 x C4"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("outcome: inconclusive"));
    assert_eq!(code(&mcs(&["search", "C6"])), 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["search", "C3 x C3", "--mode", "pandiagonal"],
        vec!["construct", "sudoku", "S4", "--subgroup", "2134", "3412"],
        vec!["construct", "embed", "S3"],
        vec!["group", "Heis(5) x C5"],
    ] {
        let a = mcs(&args);
        let b = mcs(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let one = mcs(&["search", "C3xC3", "--threads", "1"]);
    let many = mcs(&["search", "C3xC3", "--threads", "4"]);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn certificates_replay_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("z9.cert");
    assert_eq!(code(&mcs(&["search", "C9", "--certificate", path_str(&cert)])), 0);
    let out = mcs(&["replay", "C9", path_str(&cert)]);
    assert_eq!(code(&out), 0);
    let tampered = std::fs::read_to_string(&cert).unwrap().replace("phase1_survivors: 0", "phase1_survivors: 3");
    std::fs::write(&cert, tampered).unwrap();
    assert_eq!(code(&mcs(&["replay", "C9", path_str(&cert)])), 2);
}

#[test]
fn verify_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    for (name, flags, expected) in [
        ("table1", vec![], 0),
        ("table1", vec!["--magic"], 2),
        ("table2", vec!["--modular"], 0),
        ("table3", vec!["--pandiagonal", "--left-to-right"], 0),
    ] {
        let file = dir.path().join(format!("{name}.tbl"));
        std::fs::write(&file, mcs(&["fixture", name]).stdout).unwrap();
        let mut args = vec!["verify", path_str(&file)];
        args.extend(flags.iter().copied());
        assert_eq!(code(&mcs(&args)), expected, "{name} {flags:?}");
    }
}

#[test]
fn applications_end_to_end() {
    let out = mcs(&["construct", "embed", "S3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("G: S3 x S3 x C6 x C6 (order 1296)"));
    for kind in ["expP", "expP2"] {
        let out = mcs(&["construct", "extraspecial", "3", kind]);
        assert_eq!(code(&out), 0);
        assert!(stdout(&out).contains("double products trivial: yes"));
    }
    assert_eq!(code(&mcs(&["construct", "extraspecial", "4", "expP"])), 1);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.tbl");
    std::fs::write(&file, "group_spec: C3\nelement_names: 0 1 2\nblock_rows: 1\nblock_cols: 1\nbody:\n0 7\n").unwrap();
    let out = mcs(&["verify", path_str(&file)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(code(&mcs(&["verify", "/nonexistent/file"])), 1);
    assert_eq!(code(&mcs(&["group", "Heis(2)"])), 1);
    assert_eq!(code(&mcs(&["group", "C3 x"])), 1);
    assert_eq!(code(&mcs(&["construct", "sudoku", "C9", "--subgroup", "12"])), 1);
    assert_eq!(code(&mcs(&["bogus"])), 1);
    assert_eq!(code(&mcs(&["--help"])), 0);
    assert_eq!(code(&mcs(&["--version"])), 0);
}

#[test]
fn group_summary() {
    let out = mcs(&["group", "C2 x C4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("order: 8"));
    assert!(text.contains("involutions: 3"));
    assert!(text.contains("product of all elements: 00"));
    let text = stdout(&mcs(&["group", "S3"]));
    assert!(text.contains("center size: 1"));
    assert!(!text.contains("product of all"));
}
