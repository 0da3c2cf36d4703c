#![allow(dead_code)]

use framekit_core::{CMatrix, CVector, C64};
use proptest::prelude::*;

pub fn complex_vector(dim: usize) -> impl Strategy<Value = CVector> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim).prop_map(|v| {
        CVector::from_iterator(v.len(), v.into_iter().map(|(re, im)| C64::new(re, im)))
    })
}

pub fn complex_matrix(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), rows * cols).prop_map(move |v| {
        CMatrix::from_iterator(rows, cols, v.into_iter().map(|(re, im)| C64::new(re, im)))
    })
}

/// Random unitary from the QR factorization of a random complex matrix.
pub fn unitary(n: usize) -> impl Strategy<Value = CMatrix> {
    complex_matrix(n, n).prop_map(|m| m.qr().q())
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    framekit_core::numerics::max_abs_diff(a, b)
}

/// Sorted eigenvalues above `threshold`.
pub fn nonzero(values: &[f64], threshold: f64) -> Vec<f64> {
    values.iter().copied().filter(|&l| l > threshold).collect()
}
