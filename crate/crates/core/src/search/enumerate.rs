//! Canonical enumeration of subspaces by reduced row echelon form.
//!
//! A `k`-dimensional subspace of `GF(q)^m` has exactly one RREF basis. Fixing
//! the pivot columns leaves a set of free entries (right of each row's pivot,
//! outside the other pivot columns) that range over all of `GF(q)`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::ffla::{index_to_vector, Elem};

/// Number of `k`-dimensional subspaces of `GF(q)^m`.
pub fn gaussian_binomial(m: usize, k: usize, q: u64) -> Result<BigUint> {
    if k > m {
        return Err(Error::InvalidParameter(format!("subspace dimension {k} exceeds ambient dimension {m}")));
    }
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q = {q} must be at least 2")));
    }
    let qb = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= num_traits::pow(qb.clone(), m - i) - 1u32;
        den *= num_traits::pow(qb.clone(), k - i) - 1u32;
    }
    Ok(num / den)
}

/// Pivot column sets of size `k` out of `m`, in lexicographic order.
pub fn pivot_patterns(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < m - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// The RREF bases sharing one pivot pattern.
#[derive(Clone, Debug)]
pub struct PatternBlock {
    pub pivots: Vec<usize>,
    /// `(row, col)` of every free entry, row-major.
    pub free: Vec<(usize, usize)>,
    m: usize,
    q: u32,
}

impl PatternBlock {
    pub fn new(q: u32, m: usize, pivots: Vec<usize>) -> Self {
        let free = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &pc)| {
                let pivots = &pivots;
                (pc + 1..m).filter(move |c| !pivots.contains(c)).map(move |c| (row, c))
            })
            .collect();
        Self { pivots, free, m, q }
    }

    /// `q^(#free)`; saturates at `u64::MAX`.
    pub fn len(&self) -> u64 {
        (self.q as u64).checked_pow(self.free.len() as u32).unwrap_or(u64::MAX)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The basis whose free entries are the `idx`-th vector in
    /// lexicographic order.
    pub fn basis(&self, idx: u64) -> Vec<Vec<Elem>> {
        let vals = index_to_vector(self.q, self.free.len(), idx);
        let mut rows = vec![vec![0; self.m]; self.pivots.len()];
        for (row, &pc) in self.pivots.iter().enumerate() {
            rows[row][pc] = 1;
        }
        for (&(r, c), &v) in self.free.iter().zip(&vals) {
            rows[r][c] = v;
        }
        rows
    }
}

/// All pattern blocks of `k`-subspaces of `GF(q)^m`, after checking the
/// total against `guard`.
pub fn subspace_blocks(q: u32, m: usize, k: usize, guard: u64) -> Result<Vec<PatternBlock>> {
    let total = gaussian_binomial(m, k, q as u64)?;
    if total.to_u64().is_none_or(|t| t > guard) {
        return Err(Error::GuardExceeded {
            what: "subspace enumeration",
            needed: total.to_string(),
            limit: guard.to_string(),
        });
    }
    Ok(pivot_patterns(m, k).into_iter().map(|p| PatternBlock::new(q, m, p)).collect())
}

/// Every `k`-dimensional subspace of `GF(q)^m` exactly once, as its RREF
/// basis; ordered by pivot set, then free entries.
pub fn enumerate_subspaces(q: u32, m: usize, k: usize, guard: u64) -> Result<impl Iterator<Item = Vec<Vec<Elem>>>> {
    let blocks = subspace_blocks(q, m, k, guard)?;
    Ok(blocks.into_iter().flat_map(|b| (0..b.len()).map(move |i| b.basis(i))))
}
