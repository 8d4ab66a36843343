//! End-to-end checks of the command-line interface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_colcodes"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> TempDir {
        let dir = std::env::temp_dir().join(format!("colcodes-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_round_trips_through_the_file_format() {
    let dir = TempDir::new("construct");
    let out = dir.path("code.txt");
    let result = run(&[
        "construct",
        "--q",
        "3",
        "--k",
        "2",
        "--delta",
        "1",
        "--construction",
        "1",
        "--out",
        path_str(&out),
    ]);
    assert!(result.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("3 3 1 2 1 1 1\n"));
    // Re-reading and re-writing reproduces the file byte for byte.
    let code = colcodes::fileio::read_code(&text).unwrap();
    assert_eq!(colcodes::fileio::write_code(&code), text);
}

#[test]
fn distances_prints_the_profile() {
    let dir = TempDir::new("distances");
    let out = dir.path("code.txt");
    run(&[
        "construct",
        "--q",
        "2",
        "--k",
        "1",
        "--delta",
        "2",
        "--construction",
        "1",
        "--out",
        path_str(&out),
    ]);
    let result = run(&[
        "distances",
        "--code",
        path_str(&out),
        "--jmax",
        "3",
        "--oracle",
    ]);
    assert!(result.status.success());
    let text = stdout(&result);
    assert!(text.starts_with("4 6 8 8\n"), "got: {text}");
    assert!(text.contains("oracle agrees"));
}

#[test]
fn decode_reproduces_the_worked_example() {
    let dir = TempDir::new("decode");
    let code_path = dir.path("code.txt");
    // G(z) = (1+z^2, 1+z+z^2) over GF(2), a custom code file.
    std::fs::write(&code_path, "2 2 1 1 2 2 0\n1 1\n0 1\n1 1\n").unwrap();
    let rx_path = dir.path("rx.txt");
    std::fs::write(&rx_path, "1 1 0 1 0 0 1 1 1 1\n").unwrap();
    for algo in ["viterbi", "ml"] {
        let result = run(&[
            "decode",
            "--code",
            path_str(&code_path),
            "--rx",
            path_str(&rx_path),
            "--algo",
            algo,
        ]);
        assert!(result.status.success());
        let text = stdout(&result);
        assert_eq!(text, "1 0 1\nmetric 1\n", "algo {algo}");
    }
}

#[test]
fn encode_channel_decode_pipeline() {
    let dir = TempDir::new("pipeline");
    let code_path = dir.path("code.txt");
    run(&[
        "construct",
        "--q",
        "3",
        "--k",
        "2",
        "--delta",
        "1",
        "--construction",
        "1",
        "--out",
        path_str(&code_path),
    ]);
    let msg_path = dir.path("msg.txt");
    std::fs::write(&msg_path, "1 2\n0 1\n2 2\n0 0\n").unwrap();
    let tx_path = dir.path("tx.txt");
    let result = run(&[
        "encode",
        "--code",
        path_str(&code_path),
        "--message",
        path_str(&msg_path),
        "--N",
        "5",
        "--out",
        path_str(&tx_path),
    ]);
    assert!(result.status.success());

    let rx_path = dir.path("rx.txt");
    let result = run(&[
        "channel",
        "--code",
        path_str(&code_path),
        "--in",
        path_str(&tx_path),
        "--out",
        path_str(&rx_path),
        "--epsilon",
        "0.05",
        "--seed",
        "7",
    ]);
    assert!(result.status.success());
    assert!(stdout(&result).starts_with("errors "));

    let fast = run(&[
        "decode",
        "--code",
        path_str(&code_path),
        "--rx",
        path_str(&rx_path),
        "--algo",
        "fast",
    ]);
    let viterbi = run(&[
        "decode",
        "--code",
        path_str(&code_path),
        "--rx",
        path_str(&rx_path),
        "--algo",
        "viterbi",
    ]);
    assert!(fast.status.success() && viterbi.status.success());
    let fast_metric = stdout(&fast).lines().nth(1).unwrap().to_string();
    let viterbi_metric = stdout(&viterbi).lines().nth(1).unwrap().to_string();
    assert_eq!(fast_metric, viterbi_metric);
}

#[test]
fn bench_emits_csv() {
    let dir = TempDir::new("bench");
    let code_path = dir.path("code.txt");
    run(&[
        "construct",
        "--q",
        "2",
        "--k",
        "1",
        "--delta",
        "2",
        "--construction",
        "1",
        "--out",
        path_str(&code_path),
    ]);
    let result = run(&[
        "bench",
        "--code",
        path_str(&code_path),
        "--N",
        "7",
        "--trials",
        "2",
    ]);
    assert!(result.status.success());
    let text = stdout(&result);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("algo,t,additions,comparisons,bound"));
    assert_eq!(lines.count(), 14); // two algos, seven steps each
}

#[test]
fn verify_runs_the_whole_suite() {
    let result = run(&["verify"]);
    let text = stdout(&result);
    assert!(result.status.success(), "verify failed:\n{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);
    assert!(text.contains("all 11 criteria passed"));
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new("usage");
    let missing = dir.path("missing.txt");
    let result = run(&["distances", "--code", path_str(&missing), "--jmax", "2"]);
    assert_eq!(result.status.code(), Some(2));
    let result = bin().arg("nonsense").output().unwrap();
    assert_eq!(result.status.code(), Some(2));
}
