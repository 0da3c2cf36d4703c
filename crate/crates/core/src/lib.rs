//! Frame analysis in finite-dimensional complex Hilbert spaces.
//!
//! A frame is an indexed family of vectors `v(s)`; everything in this crate is
//! built on the analysis operator `f ↦ (⟨v(s)|f⟩)_s` and its adjoint, with the
//! inner product conjugate-linear in the first argument.
//!
//! Modules:
//! - [`numerics`]: Hermitian eigendecomposition and spectral matrix functions.
//! - [`frames`]: analysis/synthesis, frame operator, Gram matrix, bounds,
//!   classification, reconstruction, canonical Parseval frames, tensor products.
//! - [`kernels`]: positive semidefinite kernels and their factorization into frames.
//! - [`symmetry`]: permutation symmetries and (phase) equivalence of Gram matrices.
//! - [`generators`]: roots-of-unity frames, sinc sampling frames, random systems, Haar towers.
//! - [`subband`]: two-band quadrature towers and subdivided frames.
//! - [`io`]: versioned JSON file formats.

pub mod error;
pub mod frames;
pub mod generators;
pub mod io;
pub mod kernels;
pub mod numerics;
pub mod subband;
pub mod symmetry;

pub use error::{Error, Result};
pub use frames::{Classification, CoefficientSequence, FrameBounds, FrameReport, FrameSystem};
pub use generators::SincFrameSpec;
pub use kernels::KernelMatrix;
pub use numerics::{HermitianSpectrum, ToleranceProfile};
pub use subband::{OperatorTower, QuadraturePair, SubdividedFrame};
pub use symmetry::{EquivalenceWitness, Permutation};

pub use num_complex::Complex64 as C64;

/// Dense complex matrix used throughout the crate.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;
