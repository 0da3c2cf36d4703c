use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "framekit", version, about = "Frame analysis toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Equality tolerance used for classification and comparisons.
    #[arg(long, global = true, env = "FRAMEKIT_TOL", value_parser = positive_f64)]
    pub tol: Option<f64>,

    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the primary output to this file instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a frame or operator tower.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Classify a frame and report its bounds and spectra.
    Analyze { frame: PathBuf },
    /// Replace a frame by its canonical Parseval frame.
    Canonical { frame: PathBuf },
    /// Tensor product of two frames.
    Tensor { a: PathBuf, b: PathBuf },
    /// Gram matrix of a frame, written as a kernel file.
    Gram { frame: PathBuf },
    /// Factor a positive semidefinite kernel into a frame.
    Factorize { kernel: PathBuf },
    /// Reconstruct a vector through a tight frame.
    Reconstruct {
        frame: PathBuf,
        /// JSON array of numbers or `[re, im]` pairs.
        #[arg(long)]
        vector: String,
        /// Frame constant; defaults to the tight constant of the frame.
        #[arg(long, value_parser = positive_ratio)]
        c: Option<f64>,
    },
    /// Search for a relabelling (and phases) carrying one Gram matrix to another.
    Equiv {
        /// Frame or kernel file.
        a: PathBuf,
        /// Frame or kernel file.
        b: PathBuf,
        /// Allow unimodular phases in the witness.
        #[arg(long)]
        phases: bool,
        #[arg(long, default_value_t = framekit_core::symmetry::DEFAULT_MAX_SIZE)]
        max_size: usize,
    },
    /// Subdivide a frame on ℂ^(2^l) through an operator tower.
    Subdivide {
        frame: PathBuf,
        /// Number of refinement levels.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        levels: u32,
        /// Tower file; defaults to the Haar tower of the required height.
        #[arg(long)]
        tower: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Vectors (cos 2πs/n, sin 2πs/n) for s = 1..n.
    Harmonic {
        #[arg(long)]
        n: usize,
    },
    /// Truncated sinc sampling frame on (1/p)ℤ.
    Sinc {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        window: usize,
        #[arg(long)]
        extent: usize,
    },
    /// Seeded random family with entries uniform in the unit square.
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Haar quadrature tower with the given number of levels.
    HaarTower {
        #[arg(long)]
        levels: usize,
    },
}

fn positive_f64(text: &str) -> Result<f64, String> {
    let value: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("expected a positive number, got {text}"))
    }
}

/// A positive number written as a decimal or as a fraction `a/b`.
fn positive_ratio(text: &str) -> Result<f64, String> {
    match text.split_once('/') {
        Some((num, den)) => {
            let num = positive_f64(num.trim())?;
            let den = positive_f64(den.trim())?;
            positive_f64(&(num / den).to_string())
        }
        None => positive_f64(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ratios_parse() {
        assert_eq!(positive_ratio("2/3").unwrap(), 2.0 / 3.0);
        assert_eq!(positive_ratio("0.5").unwrap(), 0.5);
        assert!(positive_ratio("-1").is_err());
        assert!(positive_ratio("1/0").is_err());
        assert!(positive_ratio("x").is_err());
    }
}
