//! Versioned JSON file formats.
//!
//! Output is canonical: keys appear in a fixed order, objects are indented by
//! two spaces, arrays stay on one line, and every float is written with 17
//! significant digits (`{:.16e}`), which round-trips any `f64`. Complex numbers
//! are `[re, im]` pairs. See `FORMATS.md` at the repository root for examples.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::frames::FrameReport;
use crate::numerics::{hermitian_deviation, ToleranceProfile};
use crate::subband::{OperatorTower, QuadraturePair};
use crate::{CMatrix, Error, FrameSystem, KernelMatrix, Result, C64};

pub const FRAME_FORMAT: &str = "framekit-frame/1";
pub const KERNEL_FORMAT: &str = "framekit-kernel/1";
pub const REPORT_FORMAT: &str = "framekit-report/1";
pub const TOWER_FORMAT: &str = "framekit-tower/1";

/// Kernels whose Hermitian deviation exceeds this load with a warning.
pub const HERMITIAN_WARN: f64 = 1e-12;
/// Kernels whose Hermitian deviation exceeds this are rejected.
pub const HERMITIAN_REJECT: f64 = 1e-9;

type Pair = [f64; 2];

fn to_pair(z: &C64) -> Pair {
    [z.re, z.im]
}

fn from_pair(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

/// Pretty-prints objects, keeps arrays inline and fixes float formatting.
#[derive(Default)]
struct CanonicalFormatter {
    depth: usize,
    object_has_entries: Vec<bool>,
}

impl CanonicalFormatter {
    fn indent<W: ?Sized + Write>(&self, writer: &mut W) -> std::io::Result<()> {
        for _ in 0..self.depth {
            writer.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.depth += 1;
        self.object_has_entries.push(false);
        writer.write_all(b"{")
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        self.depth -= 1;
        if self.object_has_entries.pop().unwrap_or(false) {
            writer.write_all(b"\n")?;
            self.indent(writer)?;
        }
        writer.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        if let Some(flag) = self.object_has_entries.last_mut() {
            *flag = true;
        }
        writer.write_all(if first { b"\n" } else { b",\n" })?;
        self.indent(writer)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        writer.write_all(b": ")
    }
}

/// The float rendering used by every file and by CLI output.
///
/// Negative zero is written as `0.0000000000000000e0`.
pub fn format_f64(value: f64) -> String {
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{value:.16e}")
}

/// Serializes `value` canonically, with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter::default());
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Parse(format!("serialization failed: {e}")))?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

/// Hex SHA-256 of a byte string.
pub fn digest_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `contents` to `path`.
pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Deserialize)]
struct FormatTag {
    format: Option<String>,
}

/// Reads the `format` field of a JSON document.
pub fn detect_format(text: &str) -> Result<String> {
    let tag: FormatTag = serde_json::from_str(text).map_err(parse_error)?;
    tag.format
        .ok_or_else(|| Error::Parse("missing field `format`".into()))
}

fn check_format(text: &str, expected: &'static str) -> Result<()> {
    let found = detect_format(text)?;
    if found != expected {
        return Err(Error::UnknownFormat { found, expected });
    }
    Ok(())
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn check_finite(values: impl IntoIterator<Item = C64>, what: &str) -> Result<()> {
    if values
        .into_iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::BadParameter(format!(
            "{what} contains non-finite numbers"
        )));
    }
    Ok(())
}

fn matrix_rows(m: &CMatrix) -> Vec<Vec<Pair>> {
    m.row_iter()
        .map(|row| row.iter().map(to_pair).collect())
        .collect()
}

fn matrix_from_rows(rows: &[Vec<Pair>], ncols: usize, field: &str) -> Result<CMatrix> {
    let mut m = CMatrix::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::Parse(format!(
                "{field}[{i}] has {} entries, expected {ncols}",
                row.len()
            )));
        }
        for (j, p) in row.iter().enumerate() {
            m[(i, j)] = from_pair(p);
        }
    }
    Ok(m)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FrameFile {
    pub format: String,
    pub space_dim: usize,
    pub labels: Vec<String>,
    pub vectors: Vec<Vec<Pair>>,
}

impl FrameFile {
    pub fn from_frame(frame: &FrameSystem) -> Self {
        Self {
            format: FRAME_FORMAT.into(),
            space_dim: frame.space_dim(),
            labels: frame.labels().to_vec(),
            vectors: frame
                .vectors()
                .map(|v| v.iter().map(to_pair).collect())
                .collect(),
        }
    }

    pub fn into_frame(self) -> Result<FrameSystem> {
        if self.vectors.len() != self.labels.len() {
            return Err(Error::DimensionMismatch {
                expected: self.labels.len(),
                found: self.vectors.len(),
            });
        }
        if let Some(v) = self.vectors.iter().find(|v| v.len() != self.space_dim) {
            return Err(Error::DimensionMismatch {
                expected: self.space_dim,
                found: v.len(),
            });
        }
        let mut synthesis = CMatrix::zeros(self.space_dim, self.vectors.len());
        for (j, v) in self.vectors.iter().enumerate() {
            for (i, p) in v.iter().enumerate() {
                synthesis[(i, j)] = from_pair(p);
            }
        }
        FrameSystem::from_synthesis(self.labels, synthesis)
    }
}

pub fn frame_to_json(frame: &FrameSystem) -> Result<String> {
    check_finite(frame.synthesis_matrix().iter().copied(), "frame")?;
    to_canonical_json(&FrameFile::from_frame(frame))
}

pub fn frame_from_json(text: &str) -> Result<FrameSystem> {
    check_format(text, FRAME_FORMAT)?;
    let file: FrameFile = serde_json::from_str(text).map_err(parse_error)?;
    file.into_frame()
}

pub fn load_frame(path: impl AsRef<Path>) -> Result<FrameSystem> {
    frame_from_json(&read_file(path.as_ref())?)
}

pub fn save_frame(frame: &FrameSystem, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &frame_to_json(frame)?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct KernelFile {
    pub format: String,
    pub labels: Vec<String>,
    pub entries: Vec<Vec<Pair>>,
}

/// A kernel read from disk, with the outcome of the Hermitian check.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedKernel {
    pub kernel: KernelMatrix,
    pub hermitian_deviation: f64,
    /// Set when the deviation lies in `(1e-12, 1e-9]`.
    pub warning: bool,
}

pub fn kernel_to_json(kernel: &KernelMatrix) -> Result<String> {
    check_finite(kernel.entries().iter().copied(), "kernel")?;
    to_canonical_json(&KernelFile {
        format: KERNEL_FORMAT.into(),
        labels: kernel.labels().to_vec(),
        entries: matrix_rows(kernel.entries()),
    })
}

pub fn kernel_from_json(text: &str) -> Result<LoadedKernel> {
    check_format(text, KERNEL_FORMAT)?;
    let file: KernelFile = serde_json::from_str(text).map_err(parse_error)?;
    let n = file.entries.len();
    if n != file.labels.len() {
        return Err(Error::Parse(format!(
            "entries has {n} rows for {} labels",
            file.labels.len()
        )));
    }
    let entries = matrix_from_rows(&file.entries, n, "entries")?;
    let kernel = KernelMatrix::new(file.labels, entries)?;
    let deviation = hermitian_deviation(kernel.entries());
    if deviation > HERMITIAN_REJECT {
        return Err(Error::NotHermitian {
            deviation,
            allowed: HERMITIAN_REJECT,
        });
    }
    Ok(LoadedKernel {
        kernel,
        hermitian_deviation: deviation,
        warning: deviation > HERMITIAN_WARN,
    })
}

pub fn load_kernel(path: impl AsRef<Path>) -> Result<LoadedKernel> {
    kernel_from_json(&read_file(path.as_ref())?)
}

pub fn save_kernel(kernel: &KernelMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &kernel_to_json(kernel)?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TowerLevel {
    pub level: usize,
    pub f0: Vec<Vec<Pair>>,
    pub f1: Vec<Vec<Pair>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TowerFile {
    pub format: String,
    pub levels: Vec<TowerLevel>,
}

pub fn tower_to_json(tower: &OperatorTower) -> Result<String> {
    to_canonical_json(&TowerFile {
        format: TOWER_FORMAT.into(),
        levels: tower
            .pairs()
            .iter()
            .enumerate()
            .map(|(i, p)| TowerLevel {
                level: i + 1,
                f0: matrix_rows(&p.f0),
                f1: matrix_rows(&p.f1),
            })
            .collect(),
    })
}

pub fn tower_from_json(text: &str) -> Result<OperatorTower> {
    check_format(text, TOWER_FORMAT)?;
    let file: TowerFile = serde_json::from_str(text).map_err(parse_error)?;
    let mut pairs = Vec::with_capacity(file.levels.len());
    for (i, level) in file.levels.iter().enumerate() {
        if level.level != i + 1 {
            return Err(Error::Parse(format!(
                "levels[{i}].level is {}, expected {}",
                level.level,
                i + 1
            )));
        }
        let ncols = level.f0.first().map_or(0, Vec::len);
        pairs.push(QuadraturePair {
            f0: matrix_from_rows(&level.f0, ncols, &format!("levels[{i}].f0"))?,
            f1: matrix_from_rows(&level.f1, ncols, &format!("levels[{i}].f1"))?,
        });
    }
    OperatorTower::new(pairs)
}

/// A [`FrameReport`] together with provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format: String,
    pub tool_version: String,
    /// Hex SHA-256 of the analyzed input file.
    pub input_digest: String,
    pub classification: crate::Classification,
    pub bounds: crate::FrameBounds,
    pub tight_constant: Option<f64>,
    pub rank: usize,
    pub frame_operator_spectrum: Vec<f64>,
    pub gram_spectrum: Vec<f64>,
    pub tolerances: ToleranceProfile,
}

impl ReportFile {
    pub fn new(report: FrameReport, input_digest: String) -> Self {
        Self {
            format: REPORT_FORMAT.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            input_digest,
            classification: report.classification,
            bounds: report.bounds,
            tight_constant: report.tight_constant,
            rank: report.rank,
            frame_operator_spectrum: report.frame_operator_spectrum,
            gram_spectrum: report.gram_spectrum,
            tolerances: report.tolerances,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        to_canonical_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        check_format(text, REPORT_FORMAT)?;
        serde_json::from_str(text).map_err(parse_error)
    }
}
