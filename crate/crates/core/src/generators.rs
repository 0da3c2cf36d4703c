//! Example frames and test systems.

use std::f64::consts::PI;

use crate::subband::{OperatorTower, QuadraturePair};
use crate::{CMatrix, Error, FrameSystem, Result, C64};

/// The `n`-th roots of unity as vectors in `ℂ²`:
/// `v(s) = (cos(2πs/n), sin(2πs/n))` for `s = 1..n`, labelled `"1"`…`"n"`.
///
/// This is a tight frame with constant `2/n`.
pub fn harmonic_frame(n: usize) -> Result<FrameSystem> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "harmonic frame needs n >= 3, got {n}"
        )));
    }
    let mut synthesis = CMatrix::zeros(2, n);
    for s in 1..=n {
        let (sin, cos) = (2.0 * PI * s as f64 / n as f64).sin_cos();
        synthesis[(0, s - 1)] = C64::new(cos, 0.0);
        synthesis[(1, s - 1)] = C64::new(sin, 0.0);
    }
    let labels = (1..=n).map(|s| s.to_string()).collect();
    FrameSystem::from_synthesis(labels, synthesis)
}

/// Rotates every vector of a frame in `ℂ²` by `theta` radians.
pub fn rotate_plane(frame: &FrameSystem, theta: f64) -> Result<FrameSystem> {
    if frame.space_dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: frame.space_dim(),
        });
    }
    let (sin, cos) = theta.sin_cos();
    let rotation = CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(cos, 0.0),
            C64::new(-sin, 0.0),
            C64::new(sin, 0.0),
            C64::new(cos, 0.0),
        ],
    );
    FrameSystem::from_synthesis(frame.labels().to_vec(), rotation * frame.synthesis_matrix())
}

/// Parameters of a truncated sinc sampling frame on the lattice `(1/p)ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SincFrameSpec {
    /// Oversampling factor; also the index of `ℤ` in the sampling lattice.
    pub p: usize,
    /// Coordinates `n ∈ [−window, window]` of the integer-translate basis.
    pub window: usize,
    /// Sample points `s = m/p` with `|s| ≤ extent`.
    pub extent: usize,
}

impl SincFrameSpec {
    pub fn validate(&self) -> Result<()> {
        if self.p == 0 || self.window == 0 || self.extent == 0 {
            return Err(Error::BadParameter(
                "sinc frame parameters p, window, extent must be >= 1".into(),
            ));
        }
        if self.extent > self.window {
            return Err(Error::BadParameter(format!(
                "extent {} exceeds window {}",
                self.extent, self.window
            )));
        }
        Ok(())
    }

    pub fn space_dim(&self) -> usize {
        2 * self.window + 1
    }

    /// Numerators `m` of the sample points `m/p`.
    pub fn sample_numerators(&self) -> std::ops::RangeInclusive<i64> {
        let reach = (self.p * self.extent) as i64;
        -reach..=reach
    }
}

/// `sin(πx)/(πx)` at `x = numerator/p`, exact at integers.
pub fn sinc_ratio(numerator: i64, p: usize) -> f64 {
    let p = p as i64;
    if numerator % p == 0 {
        return if numerator == 0 { 1.0 } else { 0.0 };
    }
    let x = PI * numerator as f64 / p as f64;
    x.sin() / x
}

/// Samples of band-limited functions on `(1/p)ℤ`, in integer-translate coordinates.
///
/// The vector for `s = m/p` has coordinates `sinc(n − s)` for `n = −window..=window`
/// and is labelled `"m/p"` (unreduced).
pub fn sinc_frame(spec: SincFrameSpec) -> Result<FrameSystem> {
    spec.validate()?;
    let window = spec.window as i64;
    let p = spec.p as i64;
    let numerators: Vec<i64> = spec.sample_numerators().collect();
    let mut synthesis = CMatrix::zeros(spec.space_dim(), numerators.len());
    for (col, &m) in numerators.iter().enumerate() {
        for (row, n) in (-window..=window).enumerate() {
            synthesis[(row, col)] = C64::new(sinc_ratio(p * n - m, spec.p), 0.0);
        }
    }
    let labels = numerators.iter().map(|m| format!("{m}/{p}")).collect();
    FrameSystem::from_synthesis(labels, synthesis)
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output for counter position `index`.
///
/// `state = seed + (index + 1)·γ`, then the SplitMix64 finalizer. Every draw is
/// a pure function of `(seed, index)`.
pub fn splitmix64_at(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw on `[−1, 1)` from the top 53 bits of the counter output.
pub fn uniform_symmetric_at(seed: u64, index: u64) -> f64 {
    let unit = (splitmix64_at(seed, index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    2.0 * unit - 1.0
}

/// Reproducible pseudo-random complex vectors.
///
/// Component `i` of vector `j` takes its real part from counter `2(j·dim + i)`
/// and its imaginary part from counter `2(j·dim + i) + 1`. Labels are `"0"`…`"count-1"`.
pub fn random_bessel(dim: usize, count: usize, seed: u64) -> Result<FrameSystem> {
    if dim == 0 || count == 0 {
        return Err(Error::BadParameter(
            "random frame needs dim >= 1 and count >= 1".into(),
        ));
    }
    let mut synthesis = CMatrix::zeros(dim, count);
    for j in 0..count {
        for i in 0..dim {
            let base = 2 * (j * dim + i) as u64;
            synthesis[(i, j)] = C64::new(
                uniform_symmetric_at(seed, base),
                uniform_symmetric_at(seed, base + 1),
            );
        }
    }
    let labels = (0..count).map(|j| j.to_string()).collect();
    FrameSystem::from_synthesis(labels, synthesis)
}

/// Haar averaging/differencing pairs for levels `1..=levels`.
///
/// Level `l` maps `ℂ^{2^l}` to `ℂ^{2^{l−1}}` with
/// `(F0 f)(j) = (f(2j) + f(2j+1))/√2` and `(F1 f)(j) = (f(2j) − f(2j+1))/√2`.
pub fn haar_tower(levels: usize) -> Result<OperatorTower> {
    if levels == 0 {
        return Err(Error::BadParameter(
            "haar tower needs at least one level".into(),
        ));
    }
    if levels > 20 {
        return Err(Error::BadParameter(format!(
            "{levels} levels is too many for dense matrices"
        )));
    }
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let pairs = (1..=levels)
        .map(|l| {
            let coarse = 1usize << (l - 1);
            let mut f0 = CMatrix::zeros(coarse, 2 * coarse);
            let mut f1 = CMatrix::zeros(coarse, 2 * coarse);
            for j in 0..coarse {
                f0[(j, 2 * j)] = h;
                f0[(j, 2 * j + 1)] = h;
                f1[(j, 2 * j)] = h;
                f1[(j, 2 * j + 1)] = -h;
            }
            QuadraturePair { f0, f1 }
        })
        .collect();
    OperatorTower::new(pairs)
}
