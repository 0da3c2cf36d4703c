use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use framekit_core::io::{kernel_to_json, save_frame, ReportFile};
use framekit_core::{CMatrix, CVector, FrameSystem, KernelMatrix, C64};
use tempfile::TempDir;

fn framekit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framekit"))
        .args(args)
        .current_dir(dir)
        .env_remove("FRAMEKIT_TOL")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(dir: &Path, frame: &str) -> (i32, ReportFile) {
    let out = framekit(dir, &["analyze", frame, "--json"]);
    (code(&out), ReportFile::from_json(&stdout(&out)).unwrap())
}

fn write_frame(dir: &Path, name: &str, dim: usize, vectors: &[&[f64]]) {
    let labels = (0..vectors.len()).map(|i| format!("v{i}")).collect();
    let vectors = vectors
        .iter()
        .map(|v| CVector::from_iterator(dim, v.iter().map(|&x| C64::new(x, 0.0))))
        .collect();
    save_frame(
        &FrameSystem::new(dim, labels, vectors).unwrap(),
        dir.join(name),
    )
    .unwrap();
}

#[test]
fn harmonic_frame_reports_its_constant() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        code(&framekit(
            dir.path(),
            &["gen", "harmonic", "--n", "3", "-o", "f.json"]
        )),
        0
    );
    let (status, r) = report(dir.path(), "f.json");
    assert_eq!(status, 0);
    assert_eq!(r.classification.as_str(), "TIGHT");
    assert!((r.tight_constant.unwrap() - 2.0 / 3.0).abs() < 1e-12);
    assert!((r.bounds.lower - 1.5).abs() < 1e-12 && (r.bounds.upper - 1.5).abs() < 1e-12);
}

#[test]
fn invalid_parameters_exit_two() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["gen", "harmonic", "--n", "2"][..],
        &["gen", "sinc", "--p", "2", "--window", "4", "--extent", "5"],
        &["gen", "haar-tower", "--levels", "0"],
        &["gen", "random", "--dim", "0", "--count", "2"],
        &["analyze", "missing.json"],
        &["analyze"],
        &["frobnicate"],
        &["--tol", "-1", "analyze", "x.json"],
    ] {
        let out = framekit(dir.path(), args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn random_generation_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["gen", "random", "--dim", "3", "--count", "5", "--seed", "9"];
    let a = framekit(dir.path(), &args);
    let b = framekit(dir.path(), &args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let other = framekit(
        dir.path(),
        &[
            "gen", "random", "--dim", "3", "--count", "5", "--seed", "10",
        ],
    );
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn span_deficient_frames_exit_one() {
    let dir = TempDir::new().unwrap();
    write_frame(dir.path(), "one.json", 2, &[&[1.0, 0.0]]);
    let (status, r) = report(dir.path(), "one.json");
    assert_eq!(status, 1);
    assert_eq!(r.classification.as_str(), "FRAME_ON_SPAN");
}

#[test]
fn canonical_of_scaled_basis_is_orthonormal() {
    let dir = TempDir::new().unwrap();
    write_frame(dir.path(), "b.json", 2, &[&[2.0, 0.0], &[0.0, 2.0]]);
    assert_eq!(
        code(&framekit(
            dir.path(),
            &["canonical", "b.json", "-o", "c.json"]
        )),
        0
    );
    let (status, r) = report(dir.path(), "c.json");
    assert_eq!(status, 0);
    assert_eq!(r.classification.as_str(), "ONB");
}

#[test]
fn tensor_multiplies_constants() {
    let dir = TempDir::new().unwrap();
    framekit(dir.path(), &["gen", "harmonic", "--n", "3", "-o", "h.json"]);
    assert_eq!(
        code(&framekit(
            dir.path(),
            &["tensor", "h.json", "h.json", "-o", "t.json"]
        )),
        0
    );
    let (_, r) = report(dir.path(), "t.json");
    assert!((r.tight_constant.unwrap() - 4.0 / 9.0).abs() < 1e-10);
}

#[test]
fn equiv_reports_witness_or_none() {
    let dir = TempDir::new().unwrap();
    framekit(
        dir.path(),
        &["gen", "harmonic", "--n", "3", "-o", "h3.json"],
    );
    framekit(
        dir.path(),
        &["gen", "harmonic", "--n", "4", "-o", "h4.json"],
    );
    let none = framekit(dir.path(), &["equiv", "h3.json", "h4.json"]);
    assert_eq!(code(&none), 1);
    assert_eq!(stdout(&none), "none\n");

    let found = framekit(dir.path(), &["equiv", "h3.json", "h3.json"]);
    assert_eq!(code(&found), 0);
    assert_eq!(stdout(&found), "witness:\n  1 -> 1\n  2 -> 2\n  3 -> 3\n");

    // The ±1/2 pair needs the phase (1, −1).
    for (name, off) in [("k1.json", 0.5), ("k2.json", -0.5)] {
        let entries =
            CMatrix::from_row_slice(2, 2, &[1.0, off, off, 1.0].map(|x| C64::new(x, 0.0)));
        let kernel = KernelMatrix::with_numeric_labels(entries).unwrap();
        fs::write(dir.path().join(name), kernel_to_json(&kernel).unwrap()).unwrap();
    }
    assert_eq!(
        code(&framekit(dir.path(), &["equiv", "k1.json", "k2.json"])),
        1
    );
    let phased = framekit(dir.path(), &["equiv", "k1.json", "k2.json", "--phases"]);
    assert_eq!(code(&phased), 0);
    assert_eq!(
        stdout(&phased),
        "witness:\n  1 -> 1  phase [1.0000000000000000e0, 0.0000000000000000e0]\n  \
         2 -> 2  phase [-1.0000000000000000e0, 0.0000000000000000e0]\n"
    );
    let json = framekit(
        dir.path(),
        &["equiv", "k1.json", "k2.json", "--phases", "--json"],
    );
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["equivalent"], true);
    assert_eq!(value["mapping"][1][1], "2");
}

#[test]
fn equiv_respects_max_size() {
    let dir = TempDir::new().unwrap();
    framekit(
        dir.path(),
        &["gen", "harmonic", "--n", "9", "-o", "h9.json"],
    );
    assert_eq!(
        code(&framekit(dir.path(), &["equiv", "h9.json", "h9.json"])),
        2
    );
    assert_eq!(
        code(&framekit(
            dir.path(),
            &["equiv", "h9.json", "h9.json", "--max-size", "9"]
        )),
        0
    );
}

#[test]
fn gram_then_factorize_preserves_classification() {
    let dir = TempDir::new().unwrap();
    framekit(dir.path(), &["gen", "harmonic", "--n", "5", "-o", "h.json"]);
    assert_eq!(
        code(&framekit(dir.path(), &["gram", "h.json", "-o", "k.json"])),
        0
    );
    assert_eq!(
        code(&framekit(
            dir.path(),
            &["factorize", "k.json", "-o", "f.json"]
        )),
        0
    );
    let (_, r) = report(dir.path(), "f.json");
    assert_eq!(r.classification.as_str(), "TIGHT");
    assert_eq!(r.rank, 2);
    // A frame file is not a kernel file.
    assert_eq!(code(&framekit(dir.path(), &["factorize", "h.json"])), 2);
}

#[test]
fn nearly_hermitian_kernels_warn() {
    let dir = TempDir::new().unwrap();
    let text = "{\"format\": \"framekit-kernel/1\", \"labels\": [\"a\", \"b\"], \
                \"entries\": [[[1, 0], [0.5, 1e-10]], [[0.5, 0], [1, 0]]]}";
    fs::write(dir.path().join("k.json"), text).unwrap();
    let out = framekit(dir.path(), &["factorize", "k.json"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn reconstruct_accepts_fractional_constants() {
    let dir = TempDir::new().unwrap();
    framekit(dir.path(), &["gen", "harmonic", "--n", "3", "-o", "h.json"]);
    let out = framekit(
        dir.path(),
        &[
            "reconstruct",
            "h.json",
            "--vector",
            "[[1, 2], -3]",
            "--c",
            "2/3",
            "--json",
        ],
    );
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(value["relative_error"].as_f64().unwrap() < 1e-12);
    let implicit = framekit(
        dir.path(),
        &["reconstruct", "h.json", "--vector", "[1, 0]", "--json"],
    );
    let value: serde_json::Value = serde_json::from_slice(&implicit.stdout).unwrap();
    assert!((value["constant"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(
        code(&framekit(
            dir.path(),
            &["reconstruct", "h.json", "--vector", "[1, 0, 0]"]
        )),
        2
    );
    assert_eq!(
        code(&framekit(
            dir.path(),
            &["reconstruct", "h.json", "--vector", "[\"x\"]"]
        )),
        2
    );
}

#[test]
fn subdivide_builds_block_diagonal_gram() {
    let dir = TempDir::new().unwrap();
    framekit(dir.path(), &["gen", "harmonic", "--n", "3", "-o", "h.json"]);
    assert_eq!(
        code(&framekit(
            dir.path(),
            &["subdivide", "h.json", "--levels", "2", "-o", "s.json"]
        )),
        0
    );
    let (status, r) = report(dir.path(), "s.json");
    // Six vectors spanning a 4-dimensional subspace of ℂ⁸.
    assert_eq!(status, 1);
    assert_eq!(r.rank, 4);
    assert!((r.bounds.lower - 1.5).abs() < 1e-10 && (r.bounds.upper - 1.5).abs() < 1e-10);

    framekit(
        dir.path(),
        &["gen", "haar-tower", "--levels", "3", "-o", "t.json"],
    );
    let with_tower = framekit(
        dir.path(),
        &["subdivide", "h.json", "--levels", "2", "--tower", "t.json"],
    );
    assert_eq!(
        with_tower.stdout,
        fs::read(dir.path().join("s.json")).unwrap()
    );
    assert_eq!(
        code(&framekit(
            dir.path(),
            &["subdivide", "h.json", "--levels", "3", "--tower", "t.json"]
        )),
        2
    );
    assert_eq!(
        code(&framekit(
            dir.path(),
            &["subdivide", "h.json", "--levels", "0"]
        )),
        2
    );
}

#[test]
fn tolerance_flag_overrides_environment() {
    let dir = TempDir::new().unwrap();
    write_frame(
        dir.path(),
        "near.json",
        2,
        &[&[1.0, 0.0], &[0.0, 1.0 + 1e-6]],
    );
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_framekit"));
        cmd.args(args)
            .current_dir(dir.path())
            .env_remove("FRAMEKIT_TOL");
        if let Some(v) = env {
            cmd.env("FRAMEKIT_TOL", v);
        }
        let out = cmd.output().unwrap();
        ReportFile::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap()
    };
    let analyze = ["analyze", "near.json", "--json"];
    assert_eq!(run(None, &analyze).classification.as_str(), "FRAME");
    assert_eq!(run(Some("1e-4"), &analyze).classification.as_str(), "ONB");
    let flagged = run(
        Some("1e-4"),
        &["analyze", "near.json", "--json", "--tol", "1e-9"],
    );
    assert_eq!(flagged.classification.as_str(), "FRAME");
    assert_eq!(flagged.tolerances.eq_tol, 1e-9);
}
