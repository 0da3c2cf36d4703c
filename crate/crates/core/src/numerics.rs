//! Dense Hermitian spectral computations.
//!
//! Every spectral quantity in the crate goes through
//! [`hermitian_eigendecomposition`], so the tolerance policy lives here too.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::{CMatrix, Error, Result, C64};

/// Tolerances shared by all numerical decisions.
///
/// The zero-eigenvalue threshold is relative: `rank_tol_factor × λ_max`, where
/// the factor defaults to `dim × ε` for a `dim × dim` matrix. Scaling a matrix
/// by `α > 0` therefore scales the threshold by `α`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    /// Absolute tolerance for scalar and matrix equality.
    pub eq_tol: f64,
    /// Multiplier for the zero-eigenvalue threshold; `None` means `dim × ε`.
    pub rank_tol_factor: Option<f64>,
    /// Negative eigenvalues down to `-psd_slack_rel × λ_max` still count as PSD.
    pub psd_slack_rel: f64,
    /// Absolute floor for the PSD slack.
    pub psd_slack_floor: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            rank_tol_factor: None,
            psd_slack_rel: 1e-10,
            psd_slack_floor: 1e-12,
        }
    }
}

impl ToleranceProfile {
    /// Default profile with `eq_tol` overridden.
    pub fn with_eq_tol(eq_tol: f64) -> Result<Self> {
        let profile = Self {
            eq_tol,
            ..Self::default()
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.eq_tol) {
            return Err(Error::BadParameter(format!(
                "eq_tol must be positive, got {}",
                self.eq_tol
            )));
        }
        if let Some(factor) = self.rank_tol_factor {
            if !positive(factor) {
                return Err(Error::BadParameter(format!(
                    "rank_tol_factor must be positive, got {factor}"
                )));
            }
        }
        if !positive(self.psd_slack_rel) || !positive(self.psd_slack_floor) {
            return Err(Error::BadParameter("psd slack must be positive".into()));
        }
        Ok(())
    }

    /// Eigenvalues at or below this value are treated as zero.
    pub fn rank_threshold(&self, dim: usize, lambda_max: f64) -> f64 {
        let factor = self.rank_tol_factor.unwrap_or(dim as f64 * f64::EPSILON);
        factor * lambda_max.max(0.0)
    }

    /// Allowed magnitude of a negative eigenvalue in a PSD certificate.
    pub fn psd_slack(&self, lambda_max: f64) -> f64 {
        (self.psd_slack_rel * lambda_max.max(0.0)).max(self.psd_slack_floor)
    }
}

/// Eigenvalues in ascending order with a unitary matrix of paired eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Column `j` is the eigenvector for `eigenvalues[j]`.
    pub eigenvectors: CMatrix,
}

impl HermitianSpectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Largest eigenvalue (the spectrum is sorted, so this is the last one).
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Largest eigenvalue magnitude, used as the scale for relative thresholds.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(0.0_f64, |acc, l| acc.max(l.abs()))
    }

    pub fn rank_threshold(&self, tol: &ToleranceProfile) -> f64 {
        tol.rank_threshold(self.dim(), self.spectral_radius())
    }

    /// Number of eigenvalues strictly above the rank threshold.
    pub fn numerical_rank(&self, tol: &ToleranceProfile) -> usize {
        let threshold = self.rank_threshold(tol);
        self.eigenvalues.iter().filter(|&&l| l > threshold).count()
    }

    /// Eigenvalues strictly above the rank threshold, ascending.
    pub fn nonzero_eigenvalues(&self, tol: &ToleranceProfile) -> Vec<f64> {
        let threshold = self.rank_threshold(tol);
        self.eigenvalues
            .iter()
            .copied()
            .filter(|&l| l > threshold)
            .collect()
    }

    /// `U f(Λ) U*`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let u = &self.eigenvectors;
        let mut scaled = u.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            scaled.column_mut(j).scale_mut(w);
        }
        scaled * u.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map_eigenvalues(|l| l)
    }
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Largest entrywise modulus of `a - b`. Shapes must agree.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff shape mismatch");
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).norm()))
}

/// `max |M - M*|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

fn check_hermitian(m: &CMatrix, tol: &ToleranceProfile) -> Result<()> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::EmptyMatrix);
    }
    if m.nrows() != m.ncols() {
        return Err(Error::ShapeMismatch(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let deviation = hermitian_deviation(m);
    let allowed = tol.eq_tol * max_abs(m);
    if deviation > allowed {
        return Err(Error::NotHermitian { deviation, allowed });
    }
    Ok(())
}

// Components below this modulus are skipped when fixing eigenvector phases.
const PHASE_PIVOT_EPS: f64 = 1e-10;

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as `(M + M*)/2` first. Eigenvalues come back in
/// ascending order and each eigenvector is rotated so that its first
/// non-negligible component is real and positive, which makes the output
/// reproducible for identical input. Within a degenerate cluster the basis is
/// otherwise arbitrary.
pub fn hermitian_eigendecomposition(
    m: &CMatrix,
    tol: &ToleranceProfile,
) -> Result<HermitianSpectrum> {
    check_hermitian(m, tol)?;
    let symmetrized = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(symmetrized);

    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let eigenvalues = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).into_owned();
        if let Some(pivot) = col.iter().copied().find(|z| z.norm() > PHASE_PIVOT_EPS) {
            let phase = pivot.conj() / pivot.norm();
            col *= phase;
            // Make the pivot exactly real after the rotation.
            if let Some(z) = col.iter_mut().find(|z| z.norm() > PHASE_PIVOT_EPS) {
                *z = C64::new(z.norm(), 0.0);
            }
        }
        eigenvectors.set_column(dst, &col);
    }
    Ok(HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn psd_spectrum(m: &CMatrix, tol: &ToleranceProfile) -> Result<HermitianSpectrum> {
    let spectrum = hermitian_eigendecomposition(m, tol)?;
    let slack = tol.psd_slack(spectrum.lambda_max());
    let smallest = spectrum.eigenvalues[0];
    if smallest < -slack {
        return Err(Error::NotPsd {
            eigenvalue: smallest,
            slack,
        });
    }
    Ok(spectrum)
}

/// Applies `f` to the eigenvalues above the rank threshold and sends the rest to zero.
fn psd_function(m: &CMatrix, tol: &ToleranceProfile, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    let spectrum = psd_spectrum(m, tol)?;
    let threshold = spectrum.rank_threshold(tol);
    Ok(spectrum.map_eigenvalues(|l| if l > threshold { f(l) } else { 0.0 }))
}

/// Moore–Penrose inverse square root of a PSD matrix.
pub fn psd_inverse_sqrt(m: &CMatrix, tol: &ToleranceProfile) -> Result<CMatrix> {
    psd_function(m, tol, |l| l.sqrt().recip())
}

/// Square root of a PSD matrix, with eigenvalues below the rank threshold dropped.
pub fn pseudo_sqrt(m: &CMatrix, tol: &ToleranceProfile) -> Result<CMatrix> {
    psd_function(m, tol, f64::sqrt)
}

/// Orthogonal projection onto the numerical range of a PSD matrix.
pub fn range_projection(m: &CMatrix, tol: &ToleranceProfile) -> Result<CMatrix> {
    psd_function(m, tol, |_| 1.0)
}
