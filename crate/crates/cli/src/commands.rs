use std::fs;
use std::path::Path;

use framekit_core::frames::{
    canonical_parseval, classify, gram, reconstruct, tensor, Classification,
};
use framekit_core::generators::{haar_tower, harmonic_frame, random_bessel, sinc_frame};
use framekit_core::io::{
    detect_format, digest_hex, frame_from_json, frame_to_json, kernel_from_json, kernel_to_json,
    tower_from_json, tower_to_json, write_file, ReportFile, FRAME_FORMAT, KERNEL_FORMAT,
};
use framekit_core::kernels::kolmogorov_factorize;
use framekit_core::subband::subdivide;
use framekit_core::symmetry::phase_equivalence;
use framekit_core::{
    CVector, Error, FrameSystem, KernelMatrix, Result, SincFrameSpec, ToleranceProfile, C64,
};

use crate::args::{Cli, Command, GenKind, GlobalArgs};
use crate::render::{report_text, LabelledWitness, Reconstruction};
use crate::Outcome;

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let tol = tolerances(g)?;
    match &cli.command {
        Command::Gen { kind } => gen(kind, g),
        Command::Analyze { frame } => analyze(frame, g, &tol),
        Command::Canonical { frame } => {
            let frame = read_frame(frame)?.0;
            emit_frame(&canonical_parseval(&frame, &tol), g)
        }
        Command::Tensor { a, b } => emit_frame(&tensor(&read_frame(a)?.0, &read_frame(b)?.0), g),
        Command::Gram { frame } => {
            let kernel = gram(&read_frame(frame)?.0);
            emit_artifact(&kernel_to_json(&kernel)?, g)
        }
        Command::Factorize { kernel } => {
            let kernel = read_kernel(kernel)?;
            emit_frame(&kolmogorov_factorize(&kernel, &tol)?, g)
        }
        Command::Reconstruct { frame, vector, c } => {
            cmd_reconstruct(&read_frame(frame)?.0, vector, *c, g, &tol)
        }
        Command::Equiv {
            a,
            b,
            phases,
            max_size,
        } => equiv(a, b, *phases, *max_size, g, &tol),
        Command::Subdivide {
            frame,
            levels,
            tower,
        } => cmd_subdivide(&read_frame(frame)?.0, *levels as usize, tower.as_deref(), g),
    }
}

fn tolerances(g: &GlobalArgs) -> Result<ToleranceProfile> {
    match g.tol {
        Some(eq) => ToleranceProfile::with_eq_tol(eq),
        None => Ok(ToleranceProfile::default()),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// The frame in `path` and the digest of the file's bytes.
fn read_frame(path: &Path) -> Result<(FrameSystem, String)> {
    let text = read_text(path)?;
    let frame = frame_from_json(&text).map_err(|e| in_file(path, e))?;
    Ok((frame, digest_hex(text.as_bytes())))
}

fn read_kernel(path: &Path) -> Result<KernelMatrix> {
    let text = read_text(path)?;
    let loaded = kernel_from_json(&text).map_err(|e| in_file(path, e))?;
    if loaded.warning {
        eprintln!(
            "framekit: warning: {} deviates from Hermitian by {:e}",
            path.display(),
            loaded.hermitian_deviation
        );
    }
    Ok(loaded.kernel)
}

fn in_file(path: &Path, err: Error) -> Error {
    match err {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    }
}

/// Writes a file artifact to `-o` or stdout.
fn emit_artifact(text: &str, g: &GlobalArgs) -> Result<Outcome> {
    match &g.output {
        Some(path) => {
            write_file(path, text)?;
            eprintln!("framekit: wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(Outcome::Success)
}

fn emit_frame(frame: &FrameSystem, g: &GlobalArgs) -> Result<Outcome> {
    emit_artifact(&frame_to_json(frame)?, g)
}

/// Prints a result as text or JSON and also saves the JSON to `-o` when given.
fn emit_result(json: &str, text: &str, g: &GlobalArgs) -> Result<()> {
    if let Some(path) = &g.output {
        write_file(path, json)?;
    }
    if g.json {
        print!("{json}");
    } else {
        print!("{text}");
    }
    Ok(())
}

fn gen(kind: &GenKind, g: &GlobalArgs) -> Result<Outcome> {
    let frame = match *kind {
        GenKind::Harmonic { n } => harmonic_frame(n)?,
        GenKind::Sinc { p, window, extent } => sinc_frame(SincFrameSpec { p, window, extent })?,
        GenKind::Random { dim, count, seed } => random_bessel(dim, count, seed)?,
        GenKind::HaarTower { levels } => {
            return emit_artifact(&tower_to_json(&haar_tower(levels)?)?, g)
        }
    };
    emit_frame(&frame, g)
}

fn analyze(path: &Path, g: &GlobalArgs, tol: &ToleranceProfile) -> Result<Outcome> {
    let (frame, digest) = read_frame(path)?;
    let report = ReportFile::new(classify(&frame, tol), digest);
    emit_result(&report.to_json()?, &report_text(&report), g)?;
    Ok(match report.classification {
        Classification::FrameOnSpan => Outcome::Negative,
        _ => Outcome::Success,
    })
}

/// Parses a JSON array whose entries are numbers or `[re, im]` pairs.
fn parse_vector(text: &str) -> Result<CVector> {
    let bad = |detail: &str| Error::Parse(format!("--vector: {detail}"));
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let items = value
        .as_array()
        .ok_or_else(|| bad("expected a JSON array"))?;
    let entries = items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let entry = match item {
                serde_json::Value::Number(x) => x.as_f64().map(|re| C64::new(re, 0.0)),
                serde_json::Value::Array(pair) if pair.len() == 2 => pair[0]
                    .as_f64()
                    .zip(pair[1].as_f64())
                    .map(|(re, im)| C64::new(re, im)),
                _ => None,
            };
            entry.ok_or_else(|| bad(&format!("entry {i} is not a number or [re, im] pair")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CVector::from_vec(entries))
}

fn cmd_reconstruct(
    frame: &FrameSystem,
    vector: &str,
    c: Option<f64>,
    g: &GlobalArgs,
    tol: &ToleranceProfile,
) -> Result<Outcome> {
    let f = parse_vector(vector)?;
    let constant = match c {
        Some(c) => c,
        None => classify(frame, tol).tight_constant.ok_or_else(|| {
            Error::NotTight("frame is not tight; pass --c to reconstruct anyway".into())
        })?,
    };
    let (vector, error) = reconstruct(frame, &f, constant)?;
    let norm = f.norm();
    let result = Reconstruction {
        constant,
        vector,
        error,
        relative_error: if norm > 0.0 { error / norm } else { error },
    };
    emit_result(&result.to_json()?, &result.to_text(), g)?;
    Ok(Outcome::Success)
}

/// Reads a kernel file as-is, or a frame file as its Gram matrix.
fn read_family(path: &Path) -> Result<KernelMatrix> {
    let text = read_text(path)?;
    let format = detect_format(&text).map_err(|e| in_file(path, e))?;
    match format.as_str() {
        FRAME_FORMAT => Ok(gram(&frame_from_json(&text).map_err(|e| in_file(path, e))?)),
        KERNEL_FORMAT => read_kernel(path),
        _ => Err(Error::UnknownFormat {
            found: format,
            expected: "framekit-frame/1 or framekit-kernel/1",
        }),
    }
}

fn equiv(
    a: &Path,
    b: &Path,
    phases: bool,
    max_size: usize,
    g: &GlobalArgs,
    tol: &ToleranceProfile,
) -> Result<Outcome> {
    let (ka, kb) = (read_family(a)?, read_family(b)?);
    let witness = phase_equivalence(&ka, &kb, phases, max_size, tol)?;
    let labelled = LabelledWitness {
        witness: witness.as_ref(),
        labels_a: ka.labels(),
        labels_b: kb.labels(),
    };
    emit_result(&labelled.to_json()?, &labelled.to_text(), g)?;
    Ok(if witness.is_some() {
        Outcome::Success
    } else {
        Outcome::Negative
    })
}

fn cmd_subdivide(
    frame: &FrameSystem,
    levels: usize,
    tower_path: Option<&Path>,
    g: &GlobalArgs,
) -> Result<Outcome> {
    let dim = frame.space_dim();
    if !dim.is_power_of_two() {
        return Err(Error::ShapeMismatch(format!(
            "space dimension {dim} is not a power of two"
        )));
    }
    let tower = match tower_path {
        Some(path) => tower_from_json(&read_text(path)?).map_err(|e| in_file(path, e))?,
        None => haar_tower(dim.trailing_zeros() as usize + levels)?,
    };
    let sub = subdivide(frame, &tower, levels)?;
    let vectors = sub.vectors.expect("levels >= 1 yields vectors");
    emit_frame(&vectors, g)
}
