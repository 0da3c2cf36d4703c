//! Two-band quadrature towers and subdivided frames.
//!
//! The relations `F_i F_j* = δ_ij I` and `F0*F0 + F1*F1 = I` cannot hold on a
//! single finite-dimensional space, so the operators are graded: level `l`
//! maps `ℂ^{2^l}` (fine) onto `ℂ^{2^{l−1}}` (coarse), and the adjoints move one
//! level up.

use crate::frames::{frame_bounds, gram_matrix, FrameBounds};
use crate::numerics::{max_abs_diff, ToleranceProfile};
use crate::symmetry::EquivalenceWitness;
use crate::{CMatrix, CVector, Error, FrameSystem, Result};

/// Analysis pair at one level: both matrices are `2^{l−1} × 2^l`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraturePair {
    pub f0: CMatrix,
    pub f1: CMatrix,
}

/// Quadrature pairs for levels `1..=L`; `pairs()[l − 1]` is level `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTower {
    pairs: Vec<QuadraturePair>,
}

impl OperatorTower {
    /// Checks shapes only; use [`verify_quadrature`] for the operator relations.
    pub fn new(pairs: Vec<QuadraturePair>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::ShapeMismatch("tower has no levels".into()));
        }
        for (idx, pair) in pairs.iter().enumerate() {
            let level = idx + 1;
            if level >= usize::BITS as usize {
                return Err(Error::ShapeMismatch(format!(
                    "too many levels ({})",
                    pairs.len()
                )));
            }
            let expected = (1usize << (level - 1), 1usize << level);
            for (name, m) in [("F0", &pair.f0), ("F1", &pair.f1)] {
                if m.shape() != expected {
                    return Err(Error::ShapeMismatch(format!(
                        "{name} at level {level} is {}x{}, expected {}x{}",
                        m.nrows(),
                        m.ncols(),
                        expected.0,
                        expected.1
                    )));
                }
            }
        }
        Ok(Self { pairs })
    }

    pub fn levels(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[QuadraturePair] {
        &self.pairs
    }

    /// Pair at `level` (1-based).
    pub fn level(&self, level: usize) -> Option<&QuadraturePair> {
        level.checked_sub(1).and_then(|i| self.pairs.get(i))
    }

    /// Multiplies every operator by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            pairs: self
                .pairs
                .iter()
                .map(|p| QuadraturePair {
                    f0: p.f0.scale(factor),
                    f1: p.f1.scale(factor),
                })
                .collect(),
        }
    }

    fn pair(&self, level: usize) -> &QuadraturePair {
        &self.pairs[level - 1]
    }
}

/// Max residuals of the two relation families at one level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelResidual {
    pub level: usize,
    /// `max_ij ‖F_i F_j* − δ_ij I‖_max`.
    pub orthogonality: f64,
    /// `‖F0*F0 + F1*F1 − I‖_max`.
    pub completeness: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureCheck {
    pub passed: bool,
    pub levels: Vec<LevelResidual>,
}

pub fn verify_quadrature(tower: &OperatorTower, tol: &ToleranceProfile) -> QuadratureCheck {
    let levels: Vec<LevelResidual> = tower
        .pairs
        .iter()
        .enumerate()
        .map(|(idx, pair)| {
            let coarse = pair.f0.nrows();
            let fine = pair.f0.ncols();
            let id_coarse = CMatrix::identity(coarse, coarse);
            let zero = CMatrix::zeros(coarse, coarse);
            let ops = [&pair.f0, &pair.f1];
            let mut orthogonality = 0.0_f64;
            for (i, fi) in ops.iter().enumerate() {
                for (j, fj) in ops.iter().enumerate() {
                    let product = *fi * fj.adjoint();
                    let target = if i == j { &id_coarse } else { &zero };
                    orthogonality = orthogonality.max(max_abs_diff(&product, target));
                }
            }
            let sum = pair.f0.ad_mul(&pair.f0) + pair.f1.ad_mul(&pair.f1);
            let completeness = max_abs_diff(&sum, &CMatrix::identity(fine, fine));
            LevelResidual {
                level: idx + 1,
                orthogonality,
                completeness,
            }
        })
        .collect();
    let passed = levels
        .iter()
        .all(|r| r.orthogonality <= tol.eq_tol && r.completeness <= tol.eq_tol);
    QuadratureCheck { passed, levels }
}

/// `F0` applied `depth` times from `top_level` down: `F0_{top−depth+1} ⋯ F0_{top}`.
fn coarse_map(tower: &OperatorTower, top_level: usize, depth: usize) -> CMatrix {
    let dim = 1usize << top_level;
    let mut acc = CMatrix::identity(dim, dim);
    for level in (top_level + 1 - depth..=top_level).rev() {
        acc = &tower.pair(level).f0 * acc;
    }
    acc
}

/// Projections `P_k = F0*^k F0^k` on the level-`top_level` space for `k = 0..=depth`.
///
/// `P_0 = I` and the family decreases: `P_k P_{k+1} = P_{k+1}`.
pub fn nested_projections(
    tower: &OperatorTower,
    top_level: usize,
    depth: usize,
) -> Result<Vec<CMatrix>> {
    if top_level == 0 || top_level > tower.levels() {
        return Err(Error::DepthExceeded(format!(
            "top level {top_level} outside 1..={}",
            tower.levels()
        )));
    }
    if depth > top_level {
        return Err(Error::DepthExceeded(format!(
            "depth {depth} exceeds top level {top_level}"
        )));
    }
    Ok((0..=depth)
        .map(|k| {
            let down = coarse_map(tower, top_level, k);
            down.ad_mul(&down)
        })
        .collect())
}

/// The family `v(k,s) = F0*^k F1* v(s)`, `k = 0..depth`, at level `base_level + depth`.
///
/// `vectors` is `None` when `depth = 0` (the family is empty).
#[derive(Clone, Debug, PartialEq)]
pub struct SubdividedFrame {
    pub base: FrameSystem,
    pub depth: usize,
    /// Level of the base space (`base.space_dim() = 2^base_level`).
    pub base_level: usize,
    pub vectors: Option<FrameSystem>,
}

impl SubdividedFrame {
    pub fn top_level(&self) -> usize {
        self.base_level + self.depth
    }

    /// Gram matrix of the subdivided vectors (`0 × 0` for depth 0).
    pub fn gram(&self) -> CMatrix {
        self.vectors
            .as_ref()
            .map(gram_matrix)
            .unwrap_or_else(|| CMatrix::zeros(0, 0))
    }
}

/// Lifts `x` from `from_level` one level up with the adjoint of `F0` or `F1`.
fn lift(tower: &OperatorTower, x: CVector, from_level: usize, detail: bool) -> CVector {
    let pair = tower.pair(from_level + 1);
    let op = if detail { &pair.f1 } else { &pair.f0 };
    op.ad_mul(&x)
}

/// Builds the subdivided frame with labels `"(k,s)"`, `k` outermost.
///
/// All vectors must live in one space, level `base_level + depth`. The base
/// space is identified with its coarse copy at each level through the
/// isometries `F0*`, so `v(k,s)` is `F0*^k F1*` applied to the copy of `v(s)`
/// at level `base_level + depth − k − 1`. Its Gram matrix is `I_depth ⊗ G`.
pub fn subdivide(
    base: &FrameSystem,
    tower: &OperatorTower,
    depth: usize,
) -> Result<SubdividedFrame> {
    let dim = base.space_dim();
    if !dim.is_power_of_two() {
        return Err(Error::ShapeMismatch(format!(
            "base dimension {dim} is not a power of two"
        )));
    }
    let base_level = dim.trailing_zeros() as usize;
    if base_level + depth > tower.levels() {
        return Err(Error::DepthExceeded(format!(
            "base level {base_level} + depth {depth} exceeds tower height {}",
            tower.levels()
        )));
    }
    if depth == 0 {
        return Ok(SubdividedFrame {
            base: base.clone(),
            depth,
            base_level,
            vectors: None,
        });
    }

    let top = base_level + depth;
    let mut labels = Vec::with_capacity(depth * base.len());
    let mut synthesis = CMatrix::zeros(1usize << top, depth * base.len());
    for k in 0..depth {
        for (j, (label, v)) in base.labels().iter().zip(base.vectors()).enumerate() {
            let mut x = v;
            let mut level = base_level;
            for _ in 0..depth - 1 - k {
                x = lift(tower, x, level, false);
                level += 1;
            }
            x = lift(tower, x, level, true);
            level += 1;
            for _ in 0..k {
                x = lift(tower, x, level, false);
                level += 1;
            }
            debug_assert_eq!(level, top);
            synthesis.set_column(k * base.len() + j, &x);
            labels.push(format!("({k},{label})"));
        }
    }
    Ok(SubdividedFrame {
        base: base.clone(),
        depth,
        base_level,
        vectors: Some(FrameSystem::from_synthesis(labels, synthesis)?),
    })
}

/// Frame bounds of the subdivided system on its span (base bounds for depth 0).
pub fn subdivided_bounds(sub: &SubdividedFrame, tol: &ToleranceProfile) -> FrameBounds {
    match &sub.vectors {
        Some(frame) => frame_bounds(frame, tol),
        None => frame_bounds(&sub.base, tol),
    }
}

/// Lifts a witness between two bases to their subdivisions and re-verifies it.
///
/// The lifted witness acts as `π` on the `s` component, the identity on `k`,
/// and carries the phase of `s`. Returns `false` if the lifted witness does not
/// verify; structurally invalid witnesses are an error.
pub fn equivalence_transport_check(
    base1: &FrameSystem,
    base2: &FrameSystem,
    tower: &OperatorTower,
    depth: usize,
    witness: &EquivalenceWitness,
    tol: &ToleranceProfile,
) -> Result<bool> {
    let n = base1.len();
    if base2.len() != n {
        return Err(Error::InvalidWitness(format!(
            "bases have {n} and {} vectors",
            base2.len()
        )));
    }
    witness.validate(n, tol)?;

    let sub1 = subdivide(base1, tower, depth)?;
    let sub2 = subdivide(base2, tower, depth)?;
    if depth == 0 {
        return Ok(true);
    }
    let images: Vec<usize> = (0..depth)
        .flat_map(|k| witness.permutation.images().iter().map(move |&t| k * n + t))
        .collect();
    let phases = witness
        .phases
        .as_ref()
        .map(|p| (0..depth).flat_map(|_| p.iter().copied()).collect());
    let lifted = EquivalenceWitness::new(images.into(), phases);
    Ok(lifted.verifies(&sub1.gram(), &sub2.gram(), tol))
}
