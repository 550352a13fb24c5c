//! Multiplication operators of `GF(q^n)` as `GF(q)`-linear maps of `GF(q)^n`.
//!
//! Every nonzero element of the field is invertible, so their span is an
//! `n`-dimensional space whose nonzero operators all have full rank `n`.

use crate::error::{Error, Result};
use crate::ffla::{Elem, FieldSpec, Matrix};
use crate::opspace::OperatorSpace;

/// The degree-`n` extension of a prime field, with its default modulus.
pub fn extension_of(base: &FieldSpec, n: usize) -> Result<FieldSpec> {
    if base.degree() != 1 {
        return Err(Error::InvalidParameter(format!(
            "regular representation needs a prime base field, got GF({})",
            base.order()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    FieldSpec::new(base.characteristic(), n as u32, None)
}

/// Matrix of `x -> a x` in the monomial basis `1, α, ..., α^(n-1)`. An
/// element's encoding already lists its coordinates in that basis.
pub fn multiplication_matrix(base: &FieldSpec, ext: &FieldSpec, a: Elem) -> Matrix {
    let p = base.order();
    let n = ext.degree() as usize;
    let mut data = vec![0; n * n];
    let mut monomial = 1u32;
    for j in 0..n {
        let mut prod = ext.mul(a, monomial);
        for i in 0..n {
            data[i * n + j] = prod % p;
            prod /= p;
        }
        monomial *= p;
    }
    Matrix::new(base, n, n, data).expect("digits lie in the base field")
}

/// `span{L_1, L_α, ..., L_α^(n-1)}` over a prime field.
pub fn construct_regular_rep(base: &FieldSpec, n: usize) -> Result<OperatorSpace> {
    let ext = extension_of(base, n)?;
    let p = base.order();
    let basis = (0..n as u32).map(|i| multiplication_matrix(base, &ext, p.pow(i))).collect();
    OperatorSpace::new(base, n, n, basis)
}
