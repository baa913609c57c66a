//! End-to-end CLI checks: golden outputs, exit codes, determinism, config
//! precedence.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zspiral"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn zspiral")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("missing golden {name}: {e}"))
}

#[test]
fn golden_eval_cesaro() {
    let got = stdout(&["eval", "--sigma", "0.75", "--t", "279.229250928", "--method", "cesaro"]);
    assert_eq!(got, golden("eval_cesaro.txt"));
}

#[test]
fn golden_spiral() {
    let got = stdout(&["spiral", "--sigma", "0.75", "--t", "279.229250928", "--count", "5"]);
    assert_eq!(got, golden("spiral_small.csv"));
}

#[test]
fn golden_afe() {
    let got = stdout(&["afe", "--sigma", "0.5", "--t", "100"]);
    assert_eq!(got, golden("afe_t100.csv"));
}

#[test]
fn golden_chi() {
    let got = stdout(&["chi", "--t", "1000"]);
    assert_eq!(got, golden("chi_t1000.csv"));
}

#[test]
fn golden_zeros() {
    let got = stdout(&["zeros", "--from", "14", "--to", "15", "--step", "0.05"]);
    assert_eq!(got, golden("zeros_first.csv"));
}

#[test]
fn golden_basepoints() {
    let got = stdout(&["basepoints", "--from-k", "2", "--to-k", "4"]);
    assert_eq!(got, golden("basepoints_2_4.csv"));
}

#[test]
fn golden_census() {
    let got = stdout(&["census", "--t", "100"]);
    assert_eq!(got, golden("census_100.csv"));
}

#[test]
fn golden_figure_csv() {
    let dir = std::env::temp_dir().join(format!("zspiral-fig-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("avg.csv");
    let out = run(&[
        "figure",
        "--id",
        "average_vectors",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let got = std::fs::read_to_string(&path).unwrap();
    assert_eq!(got, golden("figure_average_vectors.csv"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn every_figure_id_renders_svg() {
    let dir = std::env::temp_dir().join(format!("zspiral-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.svg");
    let ids = [
        "s1_1",
        "s3_1",
        "s7_1",
        "absolute_angles",
        "relative_angles",
        "curvature_radius",
        "average_vectors",
        "reverse_spiral",
        "ratio_chi",
        "lambda_func",
        "projections",
        "delta_varphi_r",
        "frac_part",
    ];
    for id in ids {
        let out = run(&["figure", "--id", id, "--format", "svg", "--out", path.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "figure {id}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let svg = std::fs::read_to_string(&path).unwrap();
        assert!(svg.starts_with("<svg"), "figure {id} not svg");
        assert!(svg.trim_end().ends_with("</svg>"), "figure {id} unterminated");
        assert!(svg.contains("polyline"), "figure {id} draws nothing");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn zeros_output_independent_of_threads() {
    let a = stdout(&["zeros", "--from", "100", "--to", "120", "--step", "0.05", "--threads", "1"]);
    let b = stdout(&["zeros", "--from", "100", "--to", "120", "--step", "0.05", "--threads", "4"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 1 + 9); // header + nine zeros in [100, 120]
}

#[test]
fn exit_code_domain() {
    let out = run(&["eval", "--sigma", "0.5", "--t", "1", "--method", "afe"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert_eq!(msg.lines().count(), 1, "one-line diagnostic, got: {msg}");
}

#[test]
fn exit_code_io() {
    let out = run(&[
        "census",
        "--t",
        "50",
        "--out",
        "/nonexistent-dir-zspiral/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_code_usage() {
    // unknown figure id lists the valid ones
    let out = run(&["figure", "--id", "bogus"]);
    assert_eq!(out.status.code(), Some(4));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("frac_part") && msg.contains("s3_1"), "expected id list: {msg}");
    // missing required values
    let out = run(&["eval", "--t", "5.0", "--method", "cesaro"]);
    assert_eq!(out.status.code(), Some(4));
    // malformed flags
    let out = run(&["eval", "--sigma", "abc", "--t", "1", "--method", "cesaro"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn config_file_defaults_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("zspiral-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(
        &cfg,
        "# defaults for the paper point\nsigma=0.75\nt=279.229250928\nmethod=cesaro\n",
    )
    .unwrap();
    let from_cfg = stdout(&["eval", "--config", cfg.to_str().unwrap()]);
    assert_eq!(from_cfg, golden("eval_cesaro.txt"));
    // a flag beats the config value
    let overridden = stdout(&[
        "eval",
        "--config",
        cfg.to_str().unwrap(),
        "--method",
        "euler_maclaurin",
    ]);
    assert!(overridden.contains("method=euler_maclaurin"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn afe_trailer_schema() {
    let got = stdout(&["afe", "--sigma", "0.25", "--t", "150"]);
    let lines: Vec<&str> = got.lines().collect();
    assert_eq!(lines[0], "kind,n,x,y");
    let trailer_at = lines.iter().position(|l| *l == "L1x,L1y,L2x,L2y,phiL,phiM,zetaL,zetaM");
    assert!(trailer_at.is_some());
    assert_eq!(trailer_at.unwrap() + 2, lines.len(), "one row after the trailer header");
    // m = floor(sqrt(150/2pi)) = 4: rows are X*4, Y*4, R
    assert_eq!(trailer_at.unwrap(), 1 + 4 + 4 + 1);
}
