//! Positive semidefinite kernels on finite index sets.

use crate::frames::{check_distinct, classify, FrameSystem};
use crate::numerics::{
    hermitian_deviation, hermitian_eigendecomposition, max_abs, ToleranceProfile,
};
use crate::{CMatrix, CVector, Error, Result};

/// A square matrix `k(s,t)` indexed by distinct labels.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelMatrix {
    labels: Vec<String>,
    entries: CMatrix,
}

impl KernelMatrix {
    pub fn new(labels: Vec<String>, entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::ShapeMismatch(format!(
                "kernel must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if labels.len() != entries.nrows() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: entries.nrows(),
            });
        }
        if labels.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        check_distinct(&labels)?;
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::BadParameter("kernel entries must be finite".into()));
        }
        Ok(Self { labels, entries })
    }

    pub(crate) fn from_parts_unchecked(labels: Vec<String>, entries: CMatrix) -> Self {
        Self { labels, entries }
    }

    /// Kernel labelled `"1"`, `"2"`, ….
    pub fn with_numeric_labels(entries: CMatrix) -> Result<Self> {
        let labels = (1..=entries.nrows()).map(|i| i.to_string()).collect();
        Self::new(labels, entries)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.entries)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        hermitian_deviation(&self.entries)
    }
}

/// Outcome of a PSD test. When the test fails, `witness` is a unit vector `ξ`
/// with `Σ conj(ξ_s) k(s,t) ξ_t = min_eigenvalue < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdCertificate {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    pub witness: Option<CVector>,
}

pub fn is_positive_semidefinite(
    k: &KernelMatrix,
    tol: &ToleranceProfile,
) -> Result<PsdCertificate> {
    let spectrum = hermitian_eigendecomposition(&k.entries, tol)?;
    let min_eigenvalue = spectrum.eigenvalues[0];
    let is_psd = min_eigenvalue >= -tol.psd_slack(spectrum.lambda_max());
    Ok(PsdCertificate {
        is_psd,
        min_eigenvalue,
        witness: (!is_psd).then(|| spectrum.eigenvectors.column(0).into_owned()),
    })
}

/// Realizes `k(s,t) = ⟨v(s)|v(t)⟩` with vectors in `ℂ^r`, `r` the numerical rank.
///
/// With `K = UΛU*`, the vectors are the columns of `Λ^{1/2} U*` restricted to
/// the eigenvalues above the rank threshold.
pub fn kolmogorov_factorize(k: &KernelMatrix, tol: &ToleranceProfile) -> Result<FrameSystem> {
    let spectrum = hermitian_eigendecomposition(&k.entries, tol)?;
    let slack = tol.psd_slack(spectrum.lambda_max());
    if spectrum.eigenvalues[0] < -slack {
        return Err(Error::NotPsd {
            eigenvalue: spectrum.eigenvalues[0],
            slack,
        });
    }
    let threshold = spectrum.rank_threshold(tol);
    // Descending order puts the dominant directions first.
    let kept: Vec<usize> = (0..spectrum.dim())
        .rev()
        .filter(|&j| spectrum.eigenvalues[j] > threshold)
        .collect();
    if kept.is_empty() {
        return Err(Error::BadParameter("kernel has numerical rank zero".into()));
    }
    let n = k.size();
    let mut synthesis = CMatrix::zeros(kept.len(), n);
    for (row, &j) in kept.iter().enumerate() {
        let scale = spectrum.eigenvalues[j].sqrt();
        for s in 0..n {
            synthesis[(row, s)] = spectrum.eigenvectors[(s, j)].conj() * scale;
        }
    }
    FrameSystem::from_synthesis(k.labels.clone(), synthesis)
}

/// Result of [`verify_gram_projection`]: `residual = max |K·K − c⁻¹K|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectionCheck {
    pub passed: bool,
    pub residual: f64,
}

/// Checks `Σ_t k(s₁,t) k(t,s₂) = c⁻¹ k(s₁,s₂)`, i.e. that `cK` is an orthogonal projection.
pub fn verify_gram_projection(k: &KernelMatrix, c: f64, tol: &ToleranceProfile) -> ProjectionCheck {
    let inv_c = c.recip();
    let square = &k.entries * &k.entries;
    let residual = square
        .iter()
        .zip(k.entries.iter())
        .fold(0.0_f64, |acc, (kk, e)| {
            acc.max((kk - e.scale(inv_c)).norm())
        });
    let passed = c > 0.0 && residual <= tol.eq_tol * inv_c * k.max_abs();
    ProjectionCheck { passed, residual }
}

/// Per-label margins `k(s,s)^{1/2}‖f‖ + eq_tol − |⟨v(s)|f⟩|`; the bound holds when all are ≥ 0.
#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseBound {
    pub passed: bool,
    pub margins: Vec<(String, f64)>,
}

/// The reproducing-kernel estimate `|f(s)| ≤ k(s,s)^{1/2}‖f‖` in the embedded
/// model `f(s) = ⟨v(s)|f⟩`, for a tight frame.
pub fn pointwise_bound_check(
    frame: &FrameSystem,
    f: &CVector,
    tol: &ToleranceProfile,
) -> Result<PointwiseBound> {
    if f.len() != frame.space_dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.space_dim(),
            found: f.len(),
        });
    }
    let report = classify(frame, tol);
    if !report.classification.is_tight() {
        return Err(Error::NotTight(format!(
            "classified as {}",
            report.classification
        )));
    }
    let norm = f.norm();
    let values = frame.synthesis_matrix().ad_mul(f);
    let margins: Vec<(String, f64)> = frame
        .labels()
        .iter()
        .zip(frame.vectors())
        .zip(values.iter())
        .map(|((label, v), value)| {
            let diagonal = v.norm_squared();
            (
                label.clone(),
                diagonal.sqrt() * norm + tol.eq_tol - value.norm(),
            )
        })
        .collect();
    Ok(PointwiseBound {
        passed: margins.iter().all(|(_, m)| *m >= 0.0),
        margins,
    })
}
