use std::fmt;

use serde::{Deserialize, Serialize};

use super::gf2::BitRows;
use super::{Elem, FieldSpec};
use crate::error::{Error, Result};

/// Gauss-Jordan over an arbitrary GF(q), in place. Returns the pivot columns.
pub(crate) fn rref_generic(f: &FieldSpec, rows: usize, cols: usize, a: &mut [Elem]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if found != r {
            for j in 0..cols {
                a.swap(r * cols + j, found * cols + j);
            }
        }
        let inv = f.inv(a[r * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            a[r * cols + j] = f.mul(a[r * cols + j], inv);
        }
        for i in 0..rows {
            let factor = a[i * cols + c];
            if i == r || factor == 0 {
                continue;
            }
            let neg = f.neg(factor);
            for j in c..cols {
                let v = a[r * cols + j];
                if v != 0 {
                    a[i * cols + j] = f.add(a[i * cols + j], f.mul(neg, v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Dispatches to the bit-packed routine over GF(2).
pub(crate) fn rref_in_place(f: &FieldSpec, rows: usize, cols: usize, a: &mut Vec<Elem>) -> Vec<usize> {
    if f.order() == 2 && rows > 0 && cols > 0 {
        let mut bits = BitRows::pack(rows, cols, a);
        let pivots = bits.rref();
        *a = bits.unpack();
        pivots
    } else {
        rref_generic(f, rows, cols, a)
    }
}

/// Kernel basis from a matrix already in RREF: one vector per free column,
/// in increasing free-column order.
pub(crate) fn kernel_from_rref(f: &FieldSpec, cols: usize, a: &[Elem], pivots: &[usize]) -> Vec<Vec<Elem>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![0; cols];
            x[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(a[row * cols + free]);
            }
            x
        })
        .collect()
}

/// Dense `rows x cols` matrix over GF(q), row-major. Columns index the
/// source space U, rows the target space V.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} over {:?} [", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        for &e in &data {
            field.check(e)?;
        }
        Ok(Self { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, got: bad.len() });
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub(crate) fn from_parts(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { field: field.clone(), rows, cols, data }
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self::from_parts(field, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Matrix unit with a single 1 at `(i, j)`.
    pub fn unit(field: &FieldSpec, rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        m.data[i * cols + j] = 1;
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries; this is also the flattening used to view operators
    /// as vectors of length `rows * cols`.
    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Self::from_parts(f, self.rows, self.cols, data))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Self::from_parts(f, self.rows, self.cols, data))
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        Self::from_parts(f, self.rows, self.cols, data)
    }

    /// `self + c * other`, shapes already known to agree.
    pub(crate) fn add_scaled_unchecked(&self, c: Elem, other: &Matrix) -> Matrix {
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, f.mul(c, b)))
            .collect();
        Self::from_parts(f, self.rows, self.cols, data)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut data = vec![0; self.rows * other.cols];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let d = &mut data[i * other.cols + j];
                    *d = f.add(*d, f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(Self::from_parts(f, self.rows, other.cols, data))
    }

    pub fn apply(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| if b == 0 { acc } else { f.add(acc, f.mul(a, b)) })
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self::from_parts(&self.field, self.cols, self.rows, data)
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self::from_parts(&self.field, self.rows + other.rows, self.cols, data))
    }

    pub fn rref(&self) -> Rref {
        let mut data = self.data.clone();
        let pivots = rref_in_place(&self.field, self.rows, self.cols, &mut data);
        Rref { matrix: Self::from_parts(&self.field, self.rows, self.cols, data), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column of the RREF.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let Rref { matrix, pivots } = self.rref();
        kernel_from_rref(&self.field, self.cols, &matrix.data, &pivots)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson { rows: self.rows, cols: self.cols, entries: self.row_vecs() }
    }

    pub fn from_json(field: &FieldSpec, j: &MatrixJson) -> Result<Self> {
        if j.entries.len() != j.rows {
            return Err(Error::Malformed(format!(
                "matrix declares {} rows but lists {}",
                j.rows,
                j.entries.len()
            )));
        }
        if let Some(bad) = j.entries.iter().find(|r| r.len() != j.cols) {
            return Err(Error::Malformed(format!(
                "matrix declares {} columns but a row has {}",
                j.cols,
                bad.len()
            )));
        }
        Self::new(field, j.rows, j.cols, j.entries.concat())
    }
}

/// On-disk form: `{"rows": R, "cols": C, "entries": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Elem>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f2 = gf(2);
        assert_eq!(Matrix::identity(&f2, 3).rank(), 3);
        assert_eq!(Matrix::zeros(&f2, 2, 3).rank(), 0);
        let f4 = gf(4);
        // det = 1*3 + 2*2 = 3 + 3 = 0
        let m = Matrix::from_rows(&f4, &[vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f2 = gf(2);
        let m = Matrix::from_rows(&f2, &[vec![1, 1]]).unwrap();
        assert_eq!(m.kernel(), vec![vec![1, 1]]);
        assert!(Matrix::identity(&f2, 4).kernel().is_empty());

        let f3 = gf(3);
        let m = Matrix::from_rows(&f3, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(m.kernel(), vec![vec![1, 1]]);
        assert_eq!(m.apply(&[1, 1]).unwrap(), vec![0, 0]);
    }

    #[test]
    fn construction_rejects_bad_input() {
        let f3 = gf(3);
        assert!(matches!(Matrix::new(&f3, 1, 2, vec![0, 3]), Err(Error::ElementOutOfRange { .. })));
        assert!(matches!(Matrix::new(&f3, 2, 2, vec![0; 3]), Err(Error::DimensionMismatch { .. })));
        assert!(Matrix::from_rows(&f3, &[vec![1], vec![1, 2]]).is_err());
        let a = Matrix::zeros(&f3, 2, 2);
        assert!(a.add(&Matrix::zeros(&gf(5), 2, 2)).is_err());
        assert!(a.vstack(&Matrix::zeros(&f3, 1, 3)).is_err());
        assert!(a.apply(&[1]).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let f5 = gf(5);
        let a = Matrix::from_rows(&f5, &[vec![1, 2, 3], vec![4, 0, 1]]).unwrap();
        let b = Matrix::from_rows(&f5, &[vec![1, 0], vec![2, 1], vec![0, 4]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.row_vecs(), vec![vec![0, 4], vec![4, 4]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(Matrix::identity(&f5, 3).mul(&b).unwrap(), b);
    }

    #[test]
    fn json_fragment() {
        let f2 = gf(2);
        let m = Matrix::from_rows(&f2, &[vec![0, 1], vec![1, 1]]).unwrap();
        let s = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"entries":[[0,1],[1,1]]}"#);
        let back: MatrixJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Matrix::from_json(&f2, &back).unwrap(), m);
        let bad = MatrixJson { rows: 2, cols: 2, entries: vec![vec![0, 1]] };
        assert!(Matrix::from_json(&f2, &bad).is_err());
    }
}
