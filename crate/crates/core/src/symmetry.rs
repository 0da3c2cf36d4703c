//! Permutation symmetries and unitary equivalence of Gram matrices.
//!
//! Two families with Gram matrices `k` and `k'` are unitarily equivalent
//! through a relabelling `π` exactly when `k'(π(s), π(t)) = k(s,t)` for all
//! `s, t`; allowing unimodular phases `λ` relaxes this to
//! `conj(λ(s)) λ(t) k'(π(s), π(t)) = k(s,t)`.
//!
//! Entries are compared with tolerance `eq_tol × max(1, max|k|, max|k'|)`.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::frames::gram;
use crate::generators::{harmonic_frame, rotate_plane};
use crate::numerics::ToleranceProfile;
use crate::{CMatrix, Error, KernelMatrix, Result, C64};

/// Exhaustive searches above this size are refused unless the caller raises the limit.
pub const DEFAULT_MAX_SIZE: usize = 8;

/// A permutation of `0..n`, stored as its images: `images()[s] = π(s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, s: usize) -> usize {
        self.0[s]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0
            .iter()
            .all(|&p| p < seen.len() && !std::mem::replace(&mut seen[p], true))
    }

    /// `self ∘ other`, i.e. `s ↦ self(other(s))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&s| self.0[s]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (s, &p) in self.0.iter().enumerate() {
            inv[p] = s;
        }
        Self(inv)
    }
}

impl From<Vec<usize>> for Permutation {
    fn from(images: Vec<usize>) -> Self {
        Self(images)
    }
}

/// `true` if the list contains the identity and is closed under composition and inverses.
pub fn is_group(perms: &[Permutation]) -> bool {
    let Some(first) = perms.first() else {
        return false;
    };
    let contains = |p: &Permutation| perms.contains(p);
    contains(&Permutation::identity(first.len()))
        && perms.iter().all(|a| contains(&a.inverse()))
        && perms
            .iter()
            .all(|a| perms.iter().all(|b| contains(&a.compose(b))))
}

/// A relabelling `π` plus optional phases `λ(s)`, both indexed by the first
/// family's labels. Absent phases mean all ones.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceWitness {
    pub permutation: Permutation,
    pub phases: Option<Vec<C64>>,
}

impl EquivalenceWitness {
    pub fn new(permutation: Permutation, phases: Option<Vec<C64>>) -> Self {
        Self {
            permutation,
            phases,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Permutation::identity(n), None)
    }

    pub fn phase(&self, s: usize) -> C64 {
        self.phases.as_ref().map_or(C64::new(1.0, 0.0), |p| p[s])
    }

    /// Structural checks: a bijection of `0..n` and unimodular phases.
    pub fn validate(&self, n: usize, tol: &ToleranceProfile) -> Result<()> {
        if self.permutation.len() != n || !self.permutation.is_bijection() {
            return Err(Error::InvalidWitness(format!(
                "{:?} is not a permutation of {n} labels",
                self.permutation.images()
            )));
        }
        if let Some(phases) = &self.phases {
            if phases.len() != n {
                return Err(Error::InvalidWitness(format!(
                    "{} phases for {n} labels",
                    phases.len()
                )));
            }
            if let Some(bad) = phases.iter().find(|z| (z.norm() - 1.0).abs() > tol.eq_tol) {
                return Err(Error::InvalidWitness(format!(
                    "phase {bad} is not unimodular"
                )));
            }
        }
        Ok(())
    }

    /// Checks `conj(λ(s)) λ(t) k2(π(s), π(t)) = k1(s,t)` for all pairs.
    pub fn verifies(&self, k1: &CMatrix, k2: &CMatrix, tol: &ToleranceProfile) -> bool {
        let n = k1.nrows();
        if k2.nrows() != n || self.validate(n, tol).is_err() {
            return false;
        }
        let eps = entry_tolerance(k1, k2, tol);
        let pi = &self.permutation;
        (0..n).all(|s| {
            (0..n).all(|t| {
                let mapped = self.phase(s).conj() * self.phase(t) * k2[(pi.apply(s), pi.apply(t))];
                (mapped - k1[(s, t)]).norm() <= eps
            })
        })
    }
}

fn entry_tolerance(k1: &CMatrix, k2: &CMatrix, tol: &ToleranceProfile) -> f64 {
    let scale = k1
        .iter()
        .chain(k2.iter())
        .fold(1.0_f64, |acc, z| acc.max(z.norm()));
    tol.eq_tol * scale
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Match {
    /// `k2(πs, πt) = k1(s, t)`.
    Exact,
    /// `|k2(πs, πt)| = |k1(s, t)|`, diagonals equal.
    Modulus,
}

struct Search<'a> {
    k1: &'a CMatrix,
    k2: &'a CMatrix,
    mode: Match,
    eps: f64,
    candidates: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(k1: &'a CMatrix, k2: &'a CMatrix, mode: Match, tol: &ToleranceProfile) -> Self {
        let eps = entry_tolerance(k1, k2, tol);
        let n = k1.nrows();
        let row_profile = |k: &CMatrix, s: usize| {
            let mut row: Vec<f64> = (0..n).map(|t| k[(s, t)].norm()).collect();
            row.sort_by(f64::total_cmp);
            row
        };
        let profiles1: Vec<Vec<f64>> = (0..n).map(|s| row_profile(k1, s)).collect();
        let profiles2: Vec<Vec<f64>> = (0..n).map(|t| row_profile(k2, t)).collect();
        // Diagonal and sorted row-modulus filters; both are necessary in either mode.
        let candidates = (0..n)
            .map(|s| {
                (0..n)
                    .filter(|&t| {
                        (k1[(s, s)] - k2[(t, t)]).norm() <= eps
                            && profiles1[s]
                                .iter()
                                .zip(&profiles2[t])
                                .all(|(a, b)| (a - b).abs() <= eps)
                    })
                    .collect()
            })
            .collect();
        Self {
            k1,
            k2,
            mode,
            eps,
            candidates,
        }
    }

    fn pair_ok(&self, s: usize, t: usize, ps: usize, pt: usize) -> bool {
        let a = self.k1[(s, t)];
        let b = self.k2[(ps, pt)];
        if s == t || self.mode == Match::Exact {
            (a - b).norm() <= self.eps
        } else {
            (a.norm() - b.norm()).abs() <= self.eps
        }
    }

    /// Visits consistent full assignments in lexicographic order of the image vector.
    fn run<B>(&self, visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>) -> Option<B> {
        let n = self.k1.nrows();
        let mut images = Vec::with_capacity(n);
        let mut used = vec![false; n];
        match self.extend(&mut images, &mut used, visit) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        }
    }

    fn extend<B>(
        &self,
        images: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let s = images.len();
        if s == used.len() {
            return visit(images);
        }
        for &t in &self.candidates[s] {
            if used[t] {
                continue;
            }
            let consistent = images
                .iter()
                .enumerate()
                .all(|(r, &pr)| self.pair_ok(r, s, pr, t) && self.pair_ok(s, r, t, pr))
                && self.pair_ok(s, s, t, t);
            if !consistent {
                continue;
            }
            used[t] = true;
            images.push(t);
            self.extend(images, used, visit)?;
            images.pop();
            used[t] = false;
        }
        ControlFlow::Continue(())
    }
}

fn check_size(size: usize, max_size: usize) -> Result<()> {
    if size > max_size {
        return Err(Error::TooLarge {
            size,
            max: max_size,
        });
    }
    Ok(())
}

/// All permutations `π` with `k(π(s), π(t)) = k(s,t)`, in lexicographic order.
pub fn permutation_symmetries(
    k: &KernelMatrix,
    max_size: usize,
    tol: &ToleranceProfile,
) -> Result<Vec<Permutation>> {
    check_size(k.size(), max_size)?;
    let search = Search::new(k.entries(), k.entries(), Match::Exact, tol);
    let mut found = Vec::new();
    search.run::<()>(&mut |images| {
        found.push(Permutation(images.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(found)
}

/// Solves for phases along a spanning forest of the graph `{(s,t): |k1(s,t)| > eps}`.
///
/// Each component's root (its smallest index) gets phase 1.
fn propagate_phases(k1: &CMatrix, k2: &CMatrix, pi: &[usize], eps: f64) -> Option<Vec<C64>> {
    let n = k1.nrows();
    let mut phases: Vec<Option<C64>> = vec![None; n];
    for root in 0..n {
        if phases[root].is_some() {
            continue;
        }
        phases[root] = Some(C64::new(1.0, 0.0));
        let mut queue = VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            let ls = phases[s]?;
            for t in 0..n {
                if phases[t].is_some() || k1[(s, t)].norm() <= eps {
                    continue;
                }
                let target = k2[(pi[s], pi[t])];
                if target.norm() <= eps {
                    return None;
                }
                // conj(λ(s)) λ(t) k2 = k1  ⇒  λ(t) = k1 λ(s) / k2
                let lt = k1[(s, t)] * ls / target;
                phases[t] = Some(lt / lt.norm());
                queue.push_back(t);
            }
        }
    }
    phases.into_iter().collect()
}

/// First witness (lexicographic in `π`) that `k1` and `k2` are unitarily equivalent.
///
/// Families of different sizes are never equivalent and give `None`.
pub fn phase_equivalence(
    k1: &KernelMatrix,
    k2: &KernelMatrix,
    allow_phases: bool,
    max_size: usize,
    tol: &ToleranceProfile,
) -> Result<Option<EquivalenceWitness>> {
    check_size(k1.size(), max_size)?;
    check_size(k2.size(), max_size)?;
    if k1.size() != k2.size() {
        return Ok(None);
    }
    let (a, b) = (k1.entries(), k2.entries());
    if !allow_phases {
        let search = Search::new(a, b, Match::Exact, tol);
        return Ok(search.run(&mut |images| {
            ControlFlow::Break(EquivalenceWitness::new(Permutation(images.to_vec()), None))
        }));
    }
    let search = Search::new(a, b, Match::Modulus, tol);
    let eps = search.eps;
    Ok(search.run(&mut |images| {
        let witness = propagate_phases(a, b, images, eps)
            .map(|phases| EquivalenceWitness::new(Permutation(images.to_vec()), Some(phases)));
        match witness {
            Some(w) if w.verifies(a, b, tol) => ControlFlow::Break(w),
            _ => ControlFlow::Continue(()),
        }
    }))
}

/// Compares the Gram matrices of `harmonic_frame(n)` and its copy rotated by
/// `theta`. Rotation is unitary, so the identity witness always comes back.
pub fn rotation_equivalence_demo(
    n: usize,
    theta: f64,
    tol: &ToleranceProfile,
) -> Result<Option<EquivalenceWitness>> {
    let frame = harmonic_frame(n)?;
    let rotated = rotate_plane(&frame, theta)?;
    phase_equivalence(
        &gram(&frame),
        &gram(&rotated),
        false,
        n.max(DEFAULT_MAX_SIZE),
        tol,
    )
}
