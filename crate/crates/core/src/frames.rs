//! Frames and their operator calculus.
//!
//! A [`FrameSystem`] stores its vectors as the columns of the synthesis
//! matrix `V*` (`space_dim × |S|`). With that layout:
//!
//! - analysis `f ↦ (⟨v(s)|f⟩)_s` is `V f = (V*)* f`,
//! - synthesis `ξ ↦ Σ ξ_s v(s)` is `V* ξ`,
//! - the frame operator is `V*V` and the Gram matrix is `VV*`.
//!
//! Tight frames are described in two conventions. Frame bounds `A₁ ≤ A₂` are
//! eigenvalues of `V*V`; the tight-frame constant `c` satisfies
//! `‖f‖² = c·Σ|⟨v(s)|f⟩|²`, so `c = 1/A` when `A₁ = A₂ = A`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::numerics::{hermitian_eigendecomposition, psd_inverse_sqrt, ToleranceProfile};
use crate::{CMatrix, CVector, Error, KernelMatrix, Result, C64};

/// An indexed family of vectors in `ℂ^space_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameSystem {
    labels: Vec<String>,
    synthesis: CMatrix,
}

impl FrameSystem {
    pub fn new(space_dim: usize, labels: Vec<String>, vectors: Vec<CVector>) -> Result<Self> {
        if vectors.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: vectors.len(),
            });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != space_dim) {
            return Err(Error::DimensionMismatch {
                expected: space_dim,
                found: v.len(),
            });
        }
        let mut synthesis = CMatrix::zeros(space_dim, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            synthesis.set_column(j, v);
        }
        Self::from_synthesis(labels, synthesis)
    }

    /// Builds a frame whose vectors are the columns of `synthesis`.
    pub fn from_synthesis(labels: Vec<String>, synthesis: CMatrix) -> Result<Self> {
        if synthesis.nrows() == 0 {
            return Err(Error::BadParameter("space_dim must be positive".into()));
        }
        if labels.is_empty() {
            return Err(Error::BadParameter(
                "a frame needs at least one vector".into(),
            ));
        }
        if labels.len() != synthesis.ncols() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: synthesis.ncols(),
            });
        }
        check_distinct(&labels)?;
        if synthesis
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::BadParameter("vector entries must be finite".into()));
        }
        Ok(Self { labels, synthesis })
    }

    pub fn space_dim(&self) -> usize {
        self.synthesis.nrows()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The matrix whose columns are the frame vectors.
    pub fn synthesis_matrix(&self) -> &CMatrix {
        &self.synthesis
    }

    pub fn vector(&self, index: usize) -> CVector {
        self.synthesis.column(index).into_owned()
    }

    pub fn vectors(&self) -> impl Iterator<Item = CVector> + '_ {
        self.synthesis.column_iter().map(|c| c.into_owned())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) fn check_distinct(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateLabel(label.clone()));
        }
    }
    Ok(())
}

/// A finitely supported element of `ℓ²(S)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSequence {
    pub labels: Vec<String>,
    pub values: CVector,
}

impl CoefficientSequence {
    pub fn new(labels: Vec<String>, values: CVector) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: values.len(),
            });
        }
        Ok(Self { labels, values })
    }

    /// The sequence that is 1 at `index` and 0 elsewhere.
    pub fn delta(labels: &[String], index: usize) -> Self {
        let mut values = CVector::zeros(labels.len());
        values[index] = C64::new(1.0, 0.0);
        Self {
            labels: labels.to_vec(),
            values,
        }
    }

    pub fn norm_squared(&self) -> f64 {
        self.values.norm_squared()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Onb,
    Parseval,
    Tight,
    Frame,
    FrameOnSpan,
    /// Reserved for truncated infinite systems; finite systems never produce it.
    BesselOnly,
}

impl Classification {
    pub fn is_tight(self) -> bool {
        matches!(self, Self::Onb | Self::Parseval | Self::Tight)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Onb => "ONB",
            Self::Parseval => "PARSEVAL",
            Self::Tight => "TIGHT",
            Self::Frame => "FRAME",
            Self::FrameOnSpan => "FRAME_ON_SPAN",
            Self::BesselOnly => "BESSEL_ONLY",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Output of [`classify`].
///
/// `bounds` are eigenvalues of the frame operator (on the span when the
/// vectors do not span the space). `tight_constant` is `1/upper` and is only
/// present for tight classifications.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub bounds: FrameBounds,
    pub classification: Classification,
    pub tight_constant: Option<f64>,
    pub rank: usize,
    pub frame_operator_spectrum: Vec<f64>,
    pub gram_spectrum: Vec<f64>,
    pub tolerances: ToleranceProfile,
}

fn check_dim(frame: &FrameSystem, f: &CVector) -> Result<()> {
    if f.len() != frame.space_dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.space_dim(),
            found: f.len(),
        });
    }
    Ok(())
}

/// `(⟨v(s)|f⟩)_s`.
pub fn analysis(frame: &FrameSystem, f: &CVector) -> Result<CoefficientSequence> {
    check_dim(frame, f)?;
    Ok(CoefficientSequence {
        labels: frame.labels.clone(),
        values: frame.synthesis.ad_mul(f),
    })
}

/// `Σ_s ξ_s v(s)`.
pub fn synthesis(frame: &FrameSystem, xi: &CoefficientSequence) -> Result<CVector> {
    if xi.labels != frame.labels {
        return Err(Error::LabelMismatch);
    }
    Ok(&frame.synthesis * &xi.values)
}

/// The matrix of `V*V = Σ_s |v(s)⟩⟨v(s)|`.
pub fn frame_operator(frame: &FrameSystem) -> CMatrix {
    &frame.synthesis * frame.synthesis.adjoint()
}

/// Gram matrix `⟨v(s)|v(t)⟩`, labelled by the frame's index set.
pub fn gram(frame: &FrameSystem) -> KernelMatrix {
    KernelMatrix::from_parts_unchecked(frame.labels.clone(), gram_matrix(frame))
}

pub(crate) fn gram_matrix(frame: &FrameSystem) -> CMatrix {
    frame.synthesis.ad_mul(&frame.synthesis)
}

/// Optimal frame bounds on the span of the vectors.
///
/// `upper` is the largest eigenvalue of `V*V`; `lower` is the smallest one
/// strictly above the rank threshold.
pub fn frame_bounds(frame: &FrameSystem, tol: &ToleranceProfile) -> FrameBounds {
    let spectrum = hermitian_eigendecomposition(&frame_operator(frame), tol)
        .expect("frame operator is Hermitian by construction");
    bounds_from_spectrum(&spectrum.nonzero_eigenvalues(tol), spectrum.lambda_max())
}

fn bounds_from_spectrum(nonzero: &[f64], lambda_max: f64) -> FrameBounds {
    FrameBounds {
        lower: nonzero.first().copied().unwrap_or(0.0),
        upper: lambda_max.max(0.0),
    }
}

pub fn classify(frame: &FrameSystem, tol: &ToleranceProfile) -> FrameReport {
    let op_spectrum = hermitian_eigendecomposition(&frame_operator(frame), tol)
        .expect("frame operator is Hermitian by construction");
    let gram_spectrum = hermitian_eigendecomposition(&gram_matrix(frame), tol)
        .expect("Gram matrix is Hermitian by construction");

    let nonzero = op_spectrum.nonzero_eigenvalues(tol);
    let rank = nonzero.len();
    let bounds = bounds_from_spectrum(&nonzero, op_spectrum.lambda_max());

    let classification = if rank < frame.space_dim() {
        Classification::FrameOnSpan
    } else if bounds.upper - bounds.lower <= tol.eq_tol * bounds.upper {
        if (bounds.upper - 1.0).abs() <= tol.eq_tol {
            if frame.len() == frame.space_dim() {
                Classification::Onb
            } else {
                Classification::Parseval
            }
        } else {
            Classification::Tight
        }
    } else {
        Classification::Frame
    };
    let tight_constant = classification.is_tight().then(|| bounds.upper.recip());

    FrameReport {
        bounds,
        classification,
        tight_constant,
        rank,
        frame_operator_spectrum: op_spectrum.eigenvalues,
        gram_spectrum: gram_spectrum.eigenvalues,
        tolerances: *tol,
    }
}

fn check_constant(c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::BadParameter(format!(
            "frame constant must be positive, got {c}"
        )));
    }
    Ok(())
}

/// `g = c·V*V f` together with `‖g − f‖`.
pub fn reconstruct(frame: &FrameSystem, f: &CVector, c: f64) -> Result<(CVector, f64)> {
    check_dim(frame, f)?;
    check_constant(c)?;
    let coefficients = frame.synthesis.ad_mul(f);
    let g = (&frame.synthesis * coefficients).scale(c);
    let error = (&g - f).norm();
    Ok((g, error))
}

/// `Σ|ξ_s|² − Σ|⟨v(s)|f⟩|²` for `f = c·Σ ξ_s v(s)`.
///
/// For a tight frame with constant `c` the canonical coefficients
/// `⟨v(s)|f⟩` have the smallest norm among all representations of `f`, so the
/// result is nonnegative up to rounding.
pub fn coefficient_excess(
    frame: &FrameSystem,
    xi: &CoefficientSequence,
    c: f64,
    tol: &ToleranceProfile,
) -> Result<f64> {
    check_constant(c)?;
    let report = classify(frame, tol);
    match report.tight_constant {
        Some(constant) if (constant - c).abs() <= tol.eq_tol * c.max(constant) => {}
        Some(constant) => {
            return Err(Error::NotTight(format!(
                "tight constant is {constant}, not {c}"
            )))
        }
        None => {
            return Err(Error::NotTight(format!(
                "classified as {}",
                report.classification
            )))
        }
    }
    let f = synthesis(frame, xi)?.scale(c);
    let canonical = frame.synthesis.ad_mul(&f);
    Ok(xi.norm_squared() - canonical.norm_squared())
}

/// The canonical Parseval frame `w(s) = (V*V)^{-1/2} v(s)`, with the inverse
/// square root taken on the span of the vectors.
pub fn canonical_parseval(frame: &FrameSystem, tol: &ToleranceProfile) -> FrameSystem {
    let inv_sqrt = psd_inverse_sqrt(&frame_operator(frame), tol)
        .expect("frame operator is PSD by construction");
    FrameSystem {
        labels: frame.labels.clone(),
        synthesis: inv_sqrt * &frame.synthesis,
    }
}

/// Tensor product frame `v₁(s₁) ⊗ v₂(s₂)` labelled `"(s₁,s₂)"`.
///
/// Components and labels are row-major: the index of the first factor varies
/// slowest.
pub fn tensor(a: &FrameSystem, b: &FrameSystem) -> FrameSystem {
    let labels = a
        .labels
        .iter()
        .flat_map(|s1| b.labels.iter().map(move |s2| format!("({s1},{s2})")))
        .collect();
    FrameSystem {
        labels,
        synthesis: a.synthesis.kronecker(&b.synthesis),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::harmonic_frame;
    use crate::numerics::max_abs_diff;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rvec(values: &[f64]) -> CVector {
        CVector::from_iterator(values.len(), values.iter().map(|&x| c(x, 0.0)))
    }

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn onb2() -> FrameSystem {
        FrameSystem::new(2, labels(2), vec![rvec(&[1.0, 0.0]), rvec(&[0.0, 1.0])]).unwrap()
    }

    fn e1_e1_e2() -> FrameSystem {
        FrameSystem::new(
            2,
            labels(3),
            vec![rvec(&[1.0, 0.0]), rvec(&[1.0, 0.0]), rvec(&[0.0, 1.0])],
        )
        .unwrap()
    }

    fn assert_close(a: &CVector, b: &CVector, eps: f64) {
        assert!((a - b).camax() <= eps, "{a} vs {b}");
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(
            FrameSystem::new(2, labels(2), vec![rvec(&[1.0, 0.0])]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            FrameSystem::new(2, labels(1), vec![rvec(&[1.0, 0.0, 0.0])]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            FrameSystem::new(
                1,
                vec!["a".into(), "a".into()],
                vec![rvec(&[1.0]), rvec(&[2.0])]
            ),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(FrameSystem::new(1, vec![], vec![]).is_err());
    }

    #[test]
    fn analysis_examples() {
        let h = harmonic_frame(3).unwrap();
        let coeffs = analysis(&h, &rvec(&[1.0, 0.0])).unwrap();
        assert_close(&coeffs.values, &rvec(&[-0.5, -0.5, 1.0]), 1e-15);

        let zero = analysis(&h, &CVector::zeros(2)).unwrap();
        assert_eq!(zero.values, CVector::zeros(3));

        let f = CVector::from_vec(vec![c(0.3, -1.0), c(2.0, 0.5)]);
        assert_eq!(analysis(&onb2(), &f).unwrap().values, f);

        assert!(matches!(
            analysis(&h, &CVector::zeros(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn analysis_is_conjugate_linear_in_the_frame_vector() {
        let frame =
            FrameSystem::new(1, labels(1), vec![CVector::from_vec(vec![c(0.0, 1.0)])]).unwrap();
        let coeffs = analysis(&frame, &CVector::from_vec(vec![c(1.0, 0.0)])).unwrap();
        // ⟨i|1⟩ = conj(i)·1 = −i
        assert_eq!(coeffs.values[0], c(0.0, -1.0));
    }

    #[test]
    fn synthesis_examples() {
        let xi =
            CoefficientSequence::new(labels(2), CVector::from_vec(vec![c(3.0, 0.0), c(0.0, 4.0)]))
                .unwrap();
        assert_eq!(synthesis(&onb2(), &xi).unwrap(), xi.values);

        let h = harmonic_frame(3).unwrap();
        let xi = analysis(&h, &rvec(&[1.0, 0.0])).unwrap();
        assert_close(&synthesis(&h, &xi).unwrap(), &rvec(&[1.5, 0.0]), 1e-15);

        for i in 0..3 {
            let delta = CoefficientSequence::delta(h.labels(), i);
            assert_eq!(synthesis(&h, &delta).unwrap(), h.vector(i));
        }

        let wrong = CoefficientSequence::new(labels(2), CVector::zeros(2)).unwrap();
        assert!(matches!(synthesis(&h, &wrong), Err(Error::LabelMismatch)));
    }

    #[test]
    fn frame_operator_examples() {
        let h = harmonic_frame(3).unwrap();
        let expected = CMatrix::identity(2, 2).scale(1.5);
        assert!(max_abs_diff(&frame_operator(&h), &expected) < 1e-15);
        assert_eq!(frame_operator(&onb2()), CMatrix::identity(2, 2));

        let mut d = CMatrix::zeros(2, 2);
        d[(0, 0)] = c(2.0, 0.0);
        d[(1, 1)] = c(1.0, 0.0);
        assert_eq!(frame_operator(&e1_e1_e2()), d);
    }

    #[test]
    fn gram_examples() {
        let h = harmonic_frame(3).unwrap();
        let expected = CMatrix::from_row_iterator(
            3,
            3,
            [1.0, -0.5, -0.5, -0.5, 1.0, -0.5, -0.5, -0.5, 1.0]
                .iter()
                .map(|&x| c(x, 0.0)),
        );
        assert!(max_abs_diff(gram(&h).entries(), &expected) < 1e-15);
        assert_eq!(gram(&onb2()).entries(), &CMatrix::identity(2, 2));
        let single = FrameSystem::new(1, labels(1), vec![rvec(&[2.0])]).unwrap();
        assert_eq!(gram(&single).entries()[(0, 0)], c(4.0, 0.0));
    }

    #[test]
    fn bounds_examples() {
        let tol = ToleranceProfile::default();
        let b = frame_bounds(&harmonic_frame(3).unwrap(), &tol);
        assert!((b.lower - 1.5).abs() < 1e-14 && (b.upper - 1.5).abs() < 1e-14);
        let b = frame_bounds(&onb2(), &tol);
        assert_eq!((b.lower, b.upper), (1.0, 1.0));
        let b = frame_bounds(&e1_e1_e2(), &tol);
        assert!((b.lower - 1.0).abs() < 1e-15 && (b.upper - 2.0).abs() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let tol = ToleranceProfile::default();
        let r = classify(&harmonic_frame(3).unwrap(), &tol);
        assert_eq!(r.classification, Classification::Tight);
        assert!((r.tight_constant.unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert_eq!(r.rank, 2);

        let r = classify(&onb2(), &tol);
        assert_eq!(r.classification, Classification::Onb);
        assert_eq!(r.tight_constant, Some(1.0));

        let e1 = FrameSystem::new(2, labels(1), vec![rvec(&[1.0, 0.0])]).unwrap();
        let r = classify(&e1, &tol);
        assert_eq!(r.classification, Classification::FrameOnSpan);
        assert_eq!((r.bounds.lower, r.bounds.upper), (1.0, 1.0));
        assert_eq!(r.tight_constant, None);
        assert_eq!(r.rank, 1);

        let r = classify(&e1_e1_e2(), &tol);
        assert_eq!(r.classification, Classification::Frame);
        assert_eq!(r.tight_constant, None);

        // Two copies of an ONB: Parseval fails, tight with c = 1/2.
        let doubled = FrameSystem::new(
            2,
            labels(4),
            vec![
                rvec(&[1.0, 0.0]),
                rvec(&[0.0, 1.0]),
                rvec(&[1.0, 0.0]),
                rvec(&[0.0, 1.0]),
            ],
        )
        .unwrap();
        let r = classify(&doubled, &tol);
        assert_eq!(r.classification, Classification::Tight);
        assert!((r.tight_constant.unwrap() - 0.5).abs() < 1e-15);

        let scaled = FrameSystem::new(
            2,
            labels(4),
            vec![
                rvec(&[1.0, 0.0]),
                rvec(&[0.0, 1.0]),
                rvec(&[1.0, 0.0]),
                rvec(&[0.0, 1.0]),
            ]
            .into_iter()
            .map(|v| v.unscale(2f64.sqrt()))
            .collect(),
        )
        .unwrap();
        assert_eq!(
            classify(&scaled, &tol).classification,
            Classification::Parseval
        );
    }

    #[test]
    fn zero_vectors_are_frame_on_span() {
        let tol = ToleranceProfile::default();
        let z = FrameSystem::new(2, labels(2), vec![CVector::zeros(2), CVector::zeros(2)]).unwrap();
        let r = classify(&z, &tol);
        assert_eq!(r.classification, Classification::FrameOnSpan);
        assert_eq!(r.rank, 0);
        assert_eq!((r.bounds.lower, r.bounds.upper), (0.0, 0.0));
    }

    #[test]
    fn reconstruct_examples() {
        let h = harmonic_frame(3).unwrap();
        let (g, err) = reconstruct(&h, &rvec(&[1.0, 0.0]), 2.0 / 3.0).unwrap();
        assert_close(&g, &rvec(&[1.0, 0.0]), 1e-15);
        assert!(err < 1e-15);

        let f = CVector::from_vec(vec![c(0.25, 1.0), c(-3.0, 0.5)]);
        let (g, err) = reconstruct(&onb2(), &f, 1.0).unwrap();
        assert_eq!(g, f);
        assert_eq!(err, 0.0);

        let (g, err) = reconstruct(&e1_e1_e2(), &rvec(&[1.0, 1.0]), 1.0).unwrap();
        assert_eq!(g, rvec(&[2.0, 1.0]));
        assert_eq!(err, 1.0);

        assert!(reconstruct(&h, &rvec(&[1.0]), 1.0).is_err());
        assert!(reconstruct(&h, &rvec(&[1.0, 0.0]), 0.0).is_err());
    }

    #[test]
    fn excess_examples() {
        let tol = ToleranceProfile::default();
        let h = harmonic_frame(3).unwrap();
        let xi = analysis(&h, &rvec(&[0.3, -2.0])).unwrap();
        assert!(coefficient_excess(&h, &xi, 2.0 / 3.0, &tol).unwrap().abs() < 1e-14);

        let ones = CoefficientSequence::new(h.labels().to_vec(), rvec(&[1.0, 1.0, 1.0])).unwrap();
        // Brute force: Σ v(s) = 0, so f = 0 and the excess is Σ|ξ|² = 3.
        let sum: CVector = h.vectors().fold(CVector::zeros(2), |acc, v| acc + v);
        assert!(sum.camax() < 1e-15);
        let excess = coefficient_excess(&h, &ones, 2.0 / 3.0, &tol).unwrap();
        assert!((excess - 3.0).abs() < 1e-14);

        let xi = CoefficientSequence::new(
            labels(2),
            CVector::from_vec(vec![c(1.0, 2.0), c(-0.5, 0.0)]),
        )
        .unwrap();
        assert!(coefficient_excess(&onb2(), &xi, 1.0, &tol).unwrap().abs() < 1e-15);

        let xi = CoefficientSequence::new(labels(3), rvec(&[1.0, 0.0, 0.0])).unwrap();
        assert!(matches!(
            coefficient_excess(&e1_e1_e2(), &xi, 1.0, &tol),
            Err(Error::NotTight(_))
        ));
        assert!(matches!(
            coefficient_excess(&h, &ones, 1.0, &tol),
            Err(Error::NotTight(_))
        ));
    }

    #[test]
    fn canonical_parseval_examples() {
        let tol = ToleranceProfile::default();
        let scaled =
            FrameSystem::new(2, labels(2), vec![rvec(&[2.0, 0.0]), rvec(&[0.0, 2.0])]).unwrap();
        let w = canonical_parseval(&scaled, &tol);
        assert!(max_abs_diff(w.synthesis_matrix(), onb2().synthesis_matrix()) < 1e-15);

        let h = harmonic_frame(3).unwrap();
        let w = canonical_parseval(&h, &tol);
        let expected = h.synthesis_matrix().scale((2.0f64 / 3.0).sqrt());
        assert!(max_abs_diff(w.synthesis_matrix(), &expected) < 1e-15);
        let g = gram(&h).entries().scale(2.0 / 3.0);
        assert!(max_abs_diff(gram(&w).entries(), &g) < 1e-15);

        let w = canonical_parseval(&e1_e1_e2(), &tol);
        let r = 0.5f64.sqrt();
        let expected = FrameSystem::new(
            2,
            labels(3),
            vec![rvec(&[r, 0.0]), rvec(&[r, 0.0]), rvec(&[0.0, 1.0])],
        )
        .unwrap();
        assert!(max_abs_diff(w.synthesis_matrix(), expected.synthesis_matrix()) < 1e-15);
        assert!(max_abs_diff(&frame_operator(&w), &CMatrix::identity(2, 2)) < 1e-15);
        assert_eq!(classify(&w, &tol).classification, Classification::Parseval);
    }

    #[test]
    fn canonical_parseval_rank_deficient() {
        let tol = ToleranceProfile::default();
        let frame = FrameSystem::new(
            3,
            labels(2),
            vec![rvec(&[2.0, 0.0, 0.0]), rvec(&[1.0, 1.0, 0.0])],
        )
        .unwrap();
        let w = canonical_parseval(&frame, &tol);
        let r = classify(&w, &tol);
        assert_eq!(r.classification, Classification::FrameOnSpan);
        assert!((r.bounds.lower - 1.0).abs() < 1e-12 && (r.bounds.upper - 1.0).abs() < 1e-12);
        assert!(w.vectors().all(|v| v[2].norm() < 1e-15));
    }

    #[test]
    fn tensor_examples() {
        let tol = ToleranceProfile::default();
        let t = tensor(&onb2(), &onb2());
        assert_eq!(t.space_dim(), 4);
        assert_eq!(classify(&t, &tol).classification, Classification::Onb);
        assert_eq!(t.labels()[1], "(1,2)");
        // Row-major: e₁ ⊗ e₂ = e₂ in ℂ⁴.
        assert_eq!(t.vector(1), rvec(&[0.0, 1.0, 0.0, 0.0]));

        let h3 = harmonic_frame(3).unwrap();
        let t = tensor(&h3, &h3);
        assert_eq!((t.len(), t.space_dim()), (9, 4));
        let r = classify(&t, &tol);
        assert_eq!(r.classification, Classification::Tight);
        assert!((r.tight_constant.unwrap() - 4.0 / 9.0).abs() < 1e-12);

        let r = classify(&tensor(&h3, &harmonic_frame(4).unwrap()), &tol);
        assert_eq!(r.classification, Classification::Tight);
        assert!((r.tight_constant.unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }
}
