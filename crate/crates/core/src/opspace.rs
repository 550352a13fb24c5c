//! Operator spaces `S ⊆ L(U, V)` with `U = GF(q)^p` and `V = GF(q)^dim_v`.
//!
//! Operators are `dim_v x p` matrices. For span and membership computations
//! an operator is flattened row-major to a vector of length `dim_v * p`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffla::{
    self, all_vectors, projective_points, solve_membership, span_basis, Elem, FieldJson, FieldSpec, Matrix,
    MatrixJson,
};

/// An `n`-dimensional subspace of `L(U, V)` given by an independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpace {
    field: FieldSpec,
    dim_u: usize,
    dim_v: usize,
    basis: Vec<Matrix>,
}

/// Summary of one space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub p: usize,
    pub dim_v: usize,
    pub q: u32,
    pub reflexive: bool,
    pub closure_dim: usize,
    /// `None` for the zero space.
    pub mrk: Option<usize>,
    pub mrk_witness: Option<Vec<Elem>>,
    /// Rank -> number of projective classes of `S \ {0}` with that rank.
    pub rank_distribution: BTreeMap<usize, u64>,
    pub lld: bool,
}

/// The space induced on `U / U0`, `U0` the common kernel.
#[derive(Clone, Debug)]
pub struct ReducedSpace {
    pub space: OperatorSpace,
    /// `(p - dim U0) x p` coordinate map of the quotient.
    pub projection: Matrix,
    pub common_kernel: Vec<Vec<Elem>>,
    /// `p x (p - dim U0)` right inverse of `projection`.
    pub section: Matrix,
}

impl ReducedSpace {
    /// The induced operator `f Q⁺` of an operator vanishing on `U0`.
    pub fn reduce(&self, f: &Matrix) -> Result<Matrix> {
        f.mul(&self.section)
    }
}

/// On-disk form: `{"field": {...}, "dim_u": P, "dim_v": V, "basis": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorSpaceJson {
    pub field: FieldJson,
    pub dim_u: usize,
    pub dim_v: usize,
    pub basis: Vec<MatrixJson>,
}

impl OperatorSpace {
    pub fn new(field: &FieldSpec, dim_u: usize, dim_v: usize, basis: Vec<Matrix>) -> Result<Self> {
        if dim_u == 0 || dim_v == 0 {
            return Err(Error::ShapeMismatch("source and target dimensions must be positive".into()));
        }
        for m in &basis {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if (m.rows(), m.cols()) != (dim_v, dim_u) {
                return Err(Error::ShapeMismatch(format!(
                    "basis matrix is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dim_v,
                    dim_u
                )));
            }
        }
        let flat: Vec<Vec<Elem>> = basis.iter().map(|m| m.entries().to_vec()).collect();
        if !ffla::is_independent(field, &flat, dim_u * dim_v)? {
            return Err(Error::DependentBasis);
        }
        Ok(Self { field: field.clone(), dim_u, dim_v, basis })
    }

    /// Builds the space from flattened operators already known to be
    /// independent.
    pub(crate) fn from_flat_unchecked(field: &FieldSpec, dim_u: usize, dim_v: usize, flat: Vec<Vec<Elem>>) -> Self {
        let basis = flat
            .into_iter()
            .map(|v| Matrix::new(field, dim_v, dim_u, v).expect("flattened operator has the right length"))
            .collect();
        Self { field: field.clone(), dim_u, dim_v, basis }
    }

    /// All of `L(U, V)`, spanned by the matrix units.
    pub fn full(field: &FieldSpec, dim_u: usize, dim_v: usize) -> Result<Self> {
        let basis = (0..dim_v)
            .flat_map(|i| (0..dim_u).map(move |j| (i, j)))
            .map(|(i, j)| Matrix::unit(field, dim_v, dim_u, i, j))
            .collect();
        Self::new(field, dim_u, dim_v, basis)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn flattened(&self) -> Vec<Vec<Elem>> {
        self.basis.iter().map(|m| m.entries().to_vec()).collect()
    }

    fn check_operator(&self, g: &Matrix) -> Result<()> {
        if g.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if (g.rows(), g.cols()) != (self.dim_v, self.dim_u) {
            return Err(Error::ShapeMismatch(format!(
                "operator is {}x{}, space holds {}x{}",
                g.rows(),
                g.cols(),
                self.dim_v,
                self.dim_u
            )));
        }
        Ok(())
    }

    /// `sum c_i f_i`.
    pub fn combination(&self, coeffs: &[Elem]) -> Result<Matrix> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coeffs.len() });
        }
        Ok(self.combination_unchecked(coeffs))
    }

    pub(crate) fn combination_unchecked(&self, coeffs: &[Elem]) -> Matrix {
        let mut acc = Matrix::zeros(&self.field, self.dim_v, self.dim_u);
        for (f, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add_scaled_unchecked(c, f);
            }
        }
        acc
    }

    /// Coordinates of `g` in the basis, if `g ∈ S`.
    pub fn coordinates(&self, g: &Matrix) -> Result<Option<Vec<Elem>>> {
        self.check_operator(g)?;
        solve_membership(&self.field, &self.flattened(), g.entries())
    }

    pub fn contains(&self, g: &Matrix) -> Result<bool> {
        Ok(self.coordinates(g)?.is_some())
    }

    /// Canonical (RREF) basis of `S(x) = {f(x) : f ∈ S}`.
    pub fn eval_space(&self, x: &[Elem]) -> Result<Vec<Vec<Elem>>> {
        if x.len() != self.dim_u {
            return Err(Error::DimensionMismatch { expected: self.dim_u, got: x.len() });
        }
        let images: Vec<Vec<Elem>> = self.basis.iter().map(|f| f.apply_unchecked(x)).collect();
        span_basis(&self.field, &images, self.dim_v)
    }

    /// Rows, in the unknowns `g[i][j]`, whose joint kernel is
    /// `{g : g(x) ∈ S(x)}`. One row per vector of the annihilator of `S(x)`.
    fn closure_constraints(&self, x: &[Elem], out: &mut Vec<Elem>) {
        let f = &self.field;
        let w = self.eval_space(x).expect("x has length dim_u");
        let annihilator = ffla::rows_matrix(f, &w, self.dim_v).expect("rows of length dim_v").kernel();
        for y in annihilator {
            for &yi in &y {
                for &xj in x {
                    out.push(f.mul(yi, xj));
                }
            }
        }
    }

    /// `R(S) = {g : g(x) ∈ S(x) for all x}` with an RREF-canonical basis.
    ///
    /// Constraints from every projective point of `U` are stacked into one
    /// system; the stack is periodically row-reduced to keep it small.
    pub fn reflexive_closure(&self) -> OperatorSpace {
        let f = &self.field;
        let unknowns = self.dim_u * self.dim_v;
        let mut system: Vec<Elem> = Vec::new();
        let mut reduced_rows = 0usize;
        for x in projective_points(f.order(), self.dim_u) {
            self.closure_constraints(&x, &mut system);
            let rows = system.len() / unknowns;
            if rows >= reduced_rows + 4 * unknowns {
                let pivots = ffla::rref_in_place(f, rows, unknowns, &mut system);
                system.truncate(pivots.len() * unknowns);
                reduced_rows = pivots.len();
                if reduced_rows == unknowns {
                    break;
                }
            }
        }
        let rows = system.len() / unknowns;
        let constraints = Matrix::new(f, rows, unknowns, system).expect("entries are field elements");
        let solutions = constraints.kernel();
        let canonical = span_basis(f, &solutions, unknowns).expect("uniform length");
        Self::from_flat_unchecked(f, self.dim_u, self.dim_v, canonical)
    }

    pub fn closure_dim(&self) -> usize {
        self.reflexive_closure().dim()
    }

    pub fn is_reflexive(&self) -> bool {
        self.dim() == 0 || self.closure_dim() == self.dim()
    }

    /// First basis vector of `R(S)` outside `S`, if `S` is not reflexive.
    pub fn closure_witness(&self) -> Option<Matrix> {
        self.witness_in(&self.reflexive_closure())
    }

    pub(crate) fn witness_in(&self, closure: &OperatorSpace) -> Option<Matrix> {
        if closure.dim() == self.dim() {
            return None;
        }
        closure.basis.iter().find(|g| !self.contains(g).expect("same shape")).cloned()
    }

    /// First projective point `x` with `g(x) ∉ S(x)`, or `None` when
    /// `g ∈ R(S)`.
    pub fn closure_violation(&self, g: &Matrix) -> Result<Option<Vec<Elem>>> {
        self.check_operator(g)?;
        for x in projective_points(self.field.order(), self.dim_u) {
            let w = self.eval_space(&x)?;
            if solve_membership(&self.field, &w, &g.apply_unchecked(&x))?.is_none() {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    pub fn in_closure(&self, g: &Matrix) -> Result<bool> {
        Ok(self.closure_violation(g)?.is_none())
    }

    fn projective_ranks(&self) -> impl Iterator<Item = (Vec<Elem>, usize)> + '_ {
        projective_points(self.field.order(), self.dim()).map(|c| {
            let r = self.combination_unchecked(&c).rank();
            (c, r)
        })
    }

    /// Minimal rank over `S \ {0}` and the lexicographically smallest
    /// normalized coefficient vector attaining it.
    pub fn mrk(&self) -> Result<(usize, Vec<Elem>)> {
        if self.dim() == 0 {
            return Err(Error::EmptySpace);
        }
        let mut best: Option<(usize, Vec<Elem>)> = None;
        for (c, r) in self.projective_ranks() {
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, c));
            }
        }
        Ok(best.expect("a nonzero space has a projective point"))
    }

    pub fn rank_distribution(&self) -> Result<BTreeMap<usize, u64>> {
        if self.dim() == 0 {
            return Err(Error::EmptySpace);
        }
        let mut dist = BTreeMap::new();
        for (_, r) in self.projective_ranks() {
            *dist.entry(r).or_insert(0) += 1;
        }
        Ok(dist)
    }

    /// Every vector of `U` is killed by some nonzero operator of `S`.
    pub fn is_lld(&self) -> bool {
        if self.dim() == 0 {
            return false;
        }
        projective_points(self.field.order(), self.dim_u)
            .all(|x| self.eval_space(&x).expect("length dim_u").len() < self.dim())
    }

    /// `S ⊕ K g`.
    pub fn extend(&self, g: &Matrix) -> Result<OperatorSpace> {
        if self.contains(g)? {
            return Err(Error::InSpace);
        }
        let mut basis = self.basis.clone();
        basis.push(g.clone());
        Ok(Self { field: self.field.clone(), dim_u: self.dim_u, dim_v: self.dim_v, basis })
    }

    /// Whether `S ⊕ K g` is LLD; `g` must lie outside `S`.
    pub fn hyperplane_lld_check(&self, g: &Matrix) -> Result<bool> {
        Ok(self.extend(g)?.is_lld())
    }

    /// Common kernel of all operators in `S`.
    pub fn common_kernel(&self) -> Vec<Vec<Elem>> {
        let mut stacked = Matrix::zeros(&self.field, 0, self.dim_u);
        for f in &self.basis {
            stacked = stacked.vstack(f).expect("same shape");
        }
        stacked.kernel()
    }

    /// The space `S̄` on `U / U0`: each `f̄_i` is the unique operator with
    /// `f̄_i Q = f_i`.
    pub fn reduced_space(&self) -> Result<ReducedSpace> {
        if self.dim() == 0 {
            return Err(Error::EmptySpace);
        }
        let f = &self.field;
        let common_kernel = self.common_kernel();
        let projection = ffla::quotient_setup(f, &common_kernel, self.dim_u)?;
        let reduced_dim = projection.rows();
        let columns = projection.transpose().row_vecs();
        let mut section_cols = Vec::with_capacity(reduced_dim);
        for i in 0..reduced_dim {
            let mut e = vec![0; reduced_dim];
            e[i] = 1;
            let r = solve_membership(f, &columns, &e)?.expect("projection has full row rank");
            section_cols.push(r);
        }
        let section = ffla::rows_matrix(f, &section_cols, self.dim_u)?.transpose();
        let basis = self
            .basis
            .iter()
            .map(|g| g.mul(&section))
            .collect::<Result<Vec<_>>>()?;
        let space = Self::new(f, reduced_dim, self.dim_v, basis)?;
        Ok(ReducedSpace { space, projection, common_kernel, section })
    }

    /// Same space with its RREF-canonical basis.
    pub fn canonical(&self) -> OperatorSpace {
        let flat = span_basis(&self.field, &self.flattened(), self.dim_u * self.dim_v).expect("uniform length");
        Self::from_flat_unchecked(&self.field, self.dim_u, self.dim_v, flat)
    }

    /// Whether both bases span the same subspace.
    pub fn same_span(&self, other: &OperatorSpace) -> bool {
        self.field == other.field
            && (self.dim_u, self.dim_v) == (other.dim_u, other.dim_v)
            && self.canonical().basis == other.canonical().basis
    }

    /// Every element of `S` with its coefficient vector, coefficient vectors
    /// in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = (Vec<Elem>, Matrix)> + '_ {
        all_vectors(self.field.order(), self.dim()).map(|c| {
            let m = self.combination_unchecked(&c);
            (c, m)
        })
    }

    pub fn analyze(&self) -> AnalysisReport {
        let closure_dim = self.closure_dim();
        let (mrk, witness, dist) = match self.mrk() {
            Ok((r, w)) => (Some(r), Some(w), self.rank_distribution().expect("nonzero space")),
            Err(_) => (None, None, BTreeMap::new()),
        };
        AnalysisReport {
            n: self.dim(),
            p: self.dim_u,
            dim_v: self.dim_v,
            q: self.field.order(),
            reflexive: closure_dim == self.dim(),
            closure_dim,
            mrk,
            mrk_witness: witness,
            rank_distribution: dist,
            lld: self.is_lld(),
        }
    }

    pub fn to_json(&self) -> OperatorSpaceJson {
        OperatorSpaceJson {
            field: self.field.to_json(),
            dim_u: self.dim_u,
            dim_v: self.dim_v,
            basis: self.basis.iter().map(Matrix::to_json).collect(),
        }
    }

    pub fn from_json(j: &OperatorSpaceJson) -> Result<Self> {
        let field = FieldSpec::from_json(&j.field)?;
        let basis = j
            .basis
            .iter()
            .map(|m| Matrix::from_json(&field, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&field, j.dim_u, j.dim_v, basis)
    }
}
