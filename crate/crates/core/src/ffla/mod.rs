//! Finite-field arithmetic and dense linear algebra.
//!
//! Vectors are plain `Vec<Elem>` slices; a list of vectors is read either as
//! rows of a matrix (span computations) or as columns (membership solves),
//! whichever the operation states.

mod field;
mod gf2;
mod matrix;
mod points;

pub use field::{prime_power, Elem, FieldJson, FieldSpec};
pub use matrix::{Matrix, MatrixJson, Rref};
pub use points::{all_vectors, index_to_vector, projective_count, projective_points};

pub(crate) use matrix::{kernel_from_rref, rref_in_place};
#[cfg(test)]
pub(crate) use matrix::rref_generic;

use crate::error::{Error, Result};

fn check_lengths(vectors: &[Vec<Elem>], len: usize) -> Result<()> {
    match vectors.iter().find(|v| v.len() != len) {
        Some(v) => Err(Error::DimensionMismatch { expected: len, got: v.len() }),
        None => Ok(()),
    }
}

/// Matrix whose rows are `vectors`, all of length `len`.
pub fn rows_matrix(field: &FieldSpec, vectors: &[Vec<Elem>], len: usize) -> Result<Matrix> {
    check_lengths(vectors, len)?;
    Matrix::new(field, vectors.len(), len, vectors.concat())
}

/// Canonical basis of `span(vectors)`: the nonzero rows of the RREF.
pub fn span_basis(field: &FieldSpec, vectors: &[Vec<Elem>], len: usize) -> Result<Vec<Vec<Elem>>> {
    let rref = rows_matrix(field, vectors, len)?.rref();
    Ok((0..rref.pivots.len()).map(|i| rref.matrix.row(i).to_vec()).collect())
}

pub fn rank_of(field: &FieldSpec, vectors: &[Vec<Elem>], len: usize) -> Result<usize> {
    Ok(rows_matrix(field, vectors, len)?.rank())
}

pub fn is_independent(field: &FieldSpec, vectors: &[Vec<Elem>], len: usize) -> Result<bool> {
    Ok(rank_of(field, vectors, len)? == vectors.len())
}

/// Decides whether `v` lies in the span of `basis`. On success returns
/// coefficients `c` with `sum c_i basis_i = v`; free coefficients are zero
/// when the list is dependent.
pub fn solve_membership(field: &FieldSpec, basis: &[Vec<Elem>], v: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let len = v.len();
    check_lengths(basis, len)?;
    for &e in v {
        field.check(e)?;
    }
    let k = basis.len();
    let cols = k + 1;
    let mut a = vec![0; len * cols];
    for (j, b) in basis.iter().enumerate() {
        for (i, &e) in b.iter().enumerate() {
            a[i * cols + j] = field.check(e)?;
        }
    }
    for (i, &e) in v.iter().enumerate() {
        a[i * cols + k] = e;
    }
    let pivots = rref_in_place(field, len, cols, &mut a);
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut coeffs = vec![0; k];
    for (row, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = a[row * cols + k];
    }
    Ok(Some(coeffs))
}

/// `dim(Ker a ∩ Ker b)`, the kernel dimension of the stacked matrix.
pub fn kernel_intersection_dim(a: &Matrix, b: &Matrix) -> Result<usize> {
    let stacked = a.vstack(b)?;
    Ok(stacked.cols() - stacked.rank())
}

/// Coordinate map of `U / U0` for `U = GF(q)^p`: a full-row-rank
/// `(p - dim U0) x p` matrix whose kernel is exactly `span(u0_basis)`.
///
/// The rows form the RREF-derived basis of the annihilator of `U0`.
pub fn quotient_setup(field: &FieldSpec, u0_basis: &[Vec<Elem>], p: usize) -> Result<Matrix> {
    let m = rows_matrix(field, u0_basis, p)?;
    let Rref { matrix, pivots } = m.rref();
    if pivots.len() != u0_basis.len() {
        return Err(Error::DependentBasis);
    }
    let rows = kernel_from_rref(field, p, matrix.entries(), &pivots);
    rows_matrix(field, &rows, p)
}
