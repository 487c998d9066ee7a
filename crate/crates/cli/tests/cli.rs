use std::path::PathBuf;
use std::process::{Command, Output};

fn compmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compmat")).args(args).output().expect("spawn compmat")
}

fn stdout(args: &[&str]) -> String {
    let out = compmat(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("compmat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn companion_matrices() {
    assert_eq!(stdout(&["companion", "--u", "4,3,2,1"]), "matrix 3x3\n-2,-3,-4;1,0,0;0,1,0\n");
    assert_eq!(
        stdout(&["companion", "--u", "4,3,2,1", "--kind", "right"]),
        "matrix 3x3\n0,0,-4;1,0,-3;0,1,-2\n"
    );
    let inv = stdout(&["power", "--u", "4,3,2,1", "--k", "-1"]);
    assert_eq!(inv, stdout(&["companion", "--u", "4,3,2,1", "--kind", "bottom"]));
}

#[test]
fn bezoutian_of_worked_pair() {
    assert_eq!(stdout(&["bezout", "--u", "4,3,2,1", "--v", "1,1,1,1"]), "matrix 3x3\n3,2,1;2,4,2;1,2,3\n");
    assert_eq!(
        stdout(&["q", "--u", "4,3,2,1", "--v", "1,1,1,1"]),
        "matrix 3x3\n-1,-2,-3;-2,-4,-2;-3,-2,-1\n"
    );
}

#[test]
fn completed_band_chains_through_files() {
    let band = stdout(&["complete", "--u", "4,3,2,1", "--free=-1,0,0"]);
    assert_eq!(band, "band 3x3\n-1,0,0,1/4,-3/16\n");
    let path = scratch("band.txt", &band);
    let arg = format!("@{}", path.display());
    assert_eq!(stdout(&["invert", "--band", &arg]), "matrix 3x3\n0,4,0;0,3,4;-1,0,0\n");
    assert_eq!(stdout(&["invert", "--band", &arg, "--dense"]), stdout(&["invert", "--band", &arg]));
    let report = stdout(&["similar", "--u", "4,3,2,1", "--band", &arg]);
    assert!(report.starts_with("report toeplitz-similarity\n"));
    assert!(report.ends_with("all-true true\n"), "{report}");
}

#[test]
fn simulation_trajectory() {
    let state = scratch("state.txt", "1,1,1\n");
    let inputs = scratch("inputs.txt", "vector 3\n1,0,2\n");
    let out = stdout(&[
        "simulate",
        "--u",
        "4,3,2,1",
        "--v",
        "1,1,1,1",
        "--state",
        state.to_str().unwrap(),
        "--inputs",
        inputs.to_str().unwrap(),
    ]);
    assert_eq!(
        out,
        "trajectory 3x3\nstates 1,1,1;1,1,-7/4;1,-7/4,9/16;-7/4,9/16,-19/64\noutputs 5/4,13/16,-31/64\ninputs 1,0,2\n"
    );
}

#[test]
fn hankel_gohberg_semencul_flags_known_issue() {
    let out = stdout(&["bezout", "--u", "4,3,2,1", "--v", "1,1,1,1", "--hankel", "--gs"]);
    assert!(out.contains("known issue"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(compmat(&["companion", "--u", "1,x"]).status.code(), Some(1));
    assert_eq!(compmat(&["companion"]).status.code(), Some(1));
    assert_eq!(compmat(&["invert", "--band", "@/nonexistent/band.txt"]).status.code(), Some(1));
    let singular = compmat(&["invert", "--band", "1,1,1"]);
    assert_eq!(singular.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&singular.stderr).contains("singular"));
}

#[test]
fn output_is_deterministic() {
    let args = ["extend", "--u", "4,3,2,1", "--k", "2", "--l", "-1", "--s", "1", "--t", "-1"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn selftest_small_run() {
    let out = stdout(&["selftest", "--instances", "3", "--seed", "7"]);
    assert!(out.ends_with("checks, 0 failed\n"), "{out}");
    assert!(out.contains("KNOWN"));
}
