use std::path::PathBuf;

use assert_cmd::Command;

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn instance(name: &str) -> String {
    manifest().join("instances").join(name).to_string_lossy().into_owned()
}

fn fixture(name: &str) -> String {
    manifest().join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn dercheck() -> Command {
    Command::cargo_bin("dercheck").unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = dercheck().args(args).output().unwrap();
    String::from_utf8(out.stdout).unwrap()
}

/// Compares machine output with the stored golden file; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(instance_file: &str, golden: &str) {
    let out = stdout(&["full", &instance(instance_file), "--format", "machine"]);
    let path = manifest().join("tests/golden").join(golden);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let stored = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, stored, "golden mismatch for {instance_file}");
}

#[test]
fn golden_intersection() {
    check_golden("planes_in_a4.toml", "planes_in_a4.machine");
}

#[test]
fn golden_fixed_locus() {
    check_golden("reflection_fixed_locus.toml", "reflection_fixed_locus.machine");
}

#[test]
fn golden_orbifold() {
    check_golden("swap_orbifold.toml", "swap_orbifold.machine");
}

#[test]
fn transversal_tor_passes() {
    let out = stdout(&["tor", &fixture("transversal.toml"), "--format", "machine"]);
    assert!(out.contains("check tor:resolve_x=resolve_y left resolve_x (0,0)=1\n"), "{out}");
    assert!(out.ends_with("overall pass\n"));
    dercheck().args(["tor", &fixture("transversal.toml")]).assert().code(0);
}

#[test]
fn sign_orbifold_full_passes() {
    let out = stdout(&["full", &instance("sign_orbifold.toml"), "--format", "machine"]);
    assert!(out.contains("check hh_cohomology right oracle_invariants"));
    assert!(out.ends_with("overall pass\n"), "{out}");
}

#[test]
fn falsified_expectation_exits_one() {
    let out = dercheck().args(["tor", &fixture("falsified.toml"), "--format", "machine"]).assert().code(1);
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(text.contains("check expected:tor:resolve_x=resolve_y verdict fail"));
    assert!(text.contains("diff (-1,1)=1/0"));
}

#[test]
fn invalid_inputs_exit_two() {
    let stderr = |file: &str| {
        let out = dercheck().args(["fixed", &fixture(file)]).assert().code(2);
        String::from_utf8(out.get_output().stderr.clone()).unwrap()
    };
    assert!(stderr("corrupted.toml").contains("`phi`"));
    assert!(stderr("infinite_order.toml").contains("no finite order"));
    dercheck().args(["fixed", "/nonexistent/instance.toml"]).assert().code(2);
    dercheck().args(["hh", &instance("planes_in_a4.toml")]).assert().code(2);
    dercheck().args(["ext", &instance("swap_orbifold.toml")]).assert().code(2);
    dercheck().args(["tor", &instance("planes_in_a4.toml"), "--routes", "diag", "--no-oracle"]).assert().code(2);
    dercheck().args(["tor", &instance("planes_in_a4.toml"), "--window", "3", "1"]).assert().code(2);
}

#[test]
fn empty_tables_are_marked() {
    let file = instance("reflection_fixed_locus.toml");
    let out = stdout(&["fixed", &file, "--window", "-3", "-1"]);
    assert!(out.contains("(all zero on window)"), "{out}");
    let machine = stdout(&["fixed", &file, "--window", "-3", "-1", "--format", "machine"]);
    assert!(machine.contains("check fixed_locus left tor zero\n"), "{machine}");
}

#[test]
fn route_selection_and_oracle_switch() {
    let x = stdout(&["tor", &instance("planes_in_a4.toml"), "--routes", "x", "--format", "machine"]);
    assert!(x.contains("check tor:resolve_x=excess verdict pass"));
    let no_oracle = stdout(&["full", &instance("planes_in_a4.toml"), "--no-oracle", "--format", "machine"]);
    assert!(!no_oracle.contains("diagonal"));
    let orbifold = stdout(&["hh", &instance("swap_orbifold.toml"), "--no-oracle", "--format", "machine"]);
    assert!(orbifold.contains("right class_representatives"));
    assert!(!orbifold.contains("oracle_invariants"));
}

#[test]
fn window_flag_overrides_instance() {
    let out = stdout(&["fixed", &instance("reflection_fixed_locus.toml"), "--window", "1", "2", "--format", "machine"]);
    assert!(out.contains("window 1 2\n"));
    assert!(out.contains("left tor (-1,1)=1 (-1,2)=1 (0,1)=1 (0,2)=1\n"), "{out}");
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    dercheck().args(["excess", &instance("planes_in_a4.toml"), "--format", "machine", "--out", path.to_str().unwrap()]).assert().code(0).stdout("");
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("dercheck-machine 1\n"));
    assert!(text.contains("check excess fact excess_rank 1"));
}

#[test]
fn table_format_shows_timing_and_both_sides() {
    let out = stdout(&["excess", &instance("planes_in_a4.toml")]);
    assert!(out.contains("[PASS] excess"));
    assert!(out.contains("wedge_excess_dual:"));
    assert!(out.contains("elapsed: "));
}
