//! Counting on the coset `T = g + S` of a closure witness `g ∈ R(S) \ S`.
//!
//! The central quantity is the incidence set `N = {(x, h) ∈ U x T : h(x) = 0}`,
//! whose size is `sum_{h ∈ T} q^(p - rk h)`. Counts are exact big integers.

mod trace;

pub use trace::{parse_profile, proof_trace, Hypothesis, TraceReport};

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffla::{all_vectors, projective_points, Elem, Matrix};
use crate::opspace::OperatorSpace;

/// Largest `q^p * q^n` (or `q^dim Ker h0 * q^n`) a brute-force count may visit.
pub const BRUTE_GUARD: u64 = 1 << 24;

/// One named relation with both sides as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl Verdict {
    pub fn new(name: &str, lhs: impl ToString, rhs: impl ToString, holds: bool) -> Self {
        Self { name: name.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), holds }
    }
}

/// A relation that was not evaluated and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub name: String,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    /// `sum_h q^(p - rk h)`.
    Formula,
    /// Direct enumeration of all pairs.
    Brute,
}

/// Rank statistics of the coset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub profile: BTreeMap<usize, u64>,
    pub r: usize,
    pub m: u64,
    pub min_rank_multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub q: u32,
    pub p: usize,
    pub n: usize,
    pub dim_v: usize,
    #[serde(with = "crate::decimal")]
    pub incidence_count: BigUint,
    #[serde(with = "crate::decimal::option")]
    pub incidence_count_brute: Option<BigUint>,
    pub rank_profile: BTreeMap<usize, u64>,
    pub r: usize,
    pub m: u64,
    pub min_rank_multiplicity: u64,
    /// Coefficients `c` of the auto-selected `h0 = g + sum c_i f_i`.
    pub h0: Vec<Elem>,
    pub h0_rank: usize,
    #[serde(with = "crate::decimal::option")]
    pub nprime_count: Option<BigUint>,
    /// `(q^(p-2n+1) - 1)(m - 1)`, defined when `p >= 2n - 1`.
    #[serde(with = "crate::decimal::option")]
    pub nprime_lower: Option<BigInt>,
    pub verdicts: Vec<Verdict>,
    pub skipped: Vec<Skipped>,
}

/// `T = g + S` with `g ∈ R(S) \ S`, validated on construction.
#[derive(Clone, Debug)]
pub struct Coset {
    space: OperatorSpace,
    g: Matrix,
}

fn upow(q: u32, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(q), e)
}

fn guard(what: &'static str, q: u32, exp: usize) -> Result<()> {
    let needed = (q as u128).checked_pow(exp as u32);
    match needed {
        Some(v) if v <= BRUTE_GUARD as u128 => Ok(()),
        _ => Err(Error::GuardExceeded {
            what,
            needed: format!("{q}^{exp}"),
            limit: BRUTE_GUARD.to_string(),
        }),
    }
}

impl Coset {
    pub fn new(space: &OperatorSpace, g: &Matrix) -> Result<Self> {
        if space.contains(g)? {
            return Err(Error::InSpace);
        }
        if let Some(x) = space.closure_violation(g)? {
            return Err(Error::NotInClosure(format!("g(x) is not in S(x) for x = {x:?}")));
        }
        Ok(Self { space: space.clone(), g: g.clone() })
    }

    pub fn space(&self) -> &OperatorSpace {
        &self.space
    }

    pub fn offset(&self) -> &Matrix {
        &self.g
    }

    fn q(&self) -> u32 {
        self.space.field().order()
    }

    pub fn element(&self, coeffs: &[Elem]) -> Result<Matrix> {
        self.g.add(&self.space.combination(coeffs)?)
    }

    /// All `q^n` elements `g + sum c_i f_i`, `c` in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = (Vec<Elem>, Matrix)> + '_ {
        self.space.elements().map(|(c, f)| {
            let h = self.g.add(&f).expect("same shape");
            (c, h)
        })
    }

    pub fn ranks(&self) -> Vec<(Vec<Elem>, usize)> {
        self.elements().map(|(c, h)| (c, h.rank())).collect()
    }

    pub fn incidence_count(&self, mode: CountMode) -> Result<BigUint> {
        let p = self.space.dim_u();
        match mode {
            CountMode::Formula => Ok(self.ranks().iter().map(|(_, r)| upow(self.q(), p - r)).sum()),
            CountMode::Brute => {
                guard("brute incidence count", self.q(), p + self.space.dim())?;
                let mut count = 0u64;
                for (_, h) in self.elements() {
                    count += all_vectors(self.q(), p)
                        .filter(|x| h.apply_unchecked(x).iter().all(|&e| e == 0))
                        .count() as u64;
                }
                Ok(BigUint::from(count))
            }
        }
    }

    pub fn rank_profile(&self) -> RankProfile {
        Self::profile_of(&self.ranks(), self.space.dim())
    }

    fn profile_of(ranks: &[(Vec<Elem>, usize)], n: usize) -> RankProfile {
        let mut profile = BTreeMap::new();
        for (_, r) in ranks {
            *profile.entry(*r).or_insert(0u64) += 1;
        }
        let (&r, &min_rank_multiplicity) = profile.iter().next().expect("a coset is nonempty");
        let m = profile.range(..=n).map(|(_, &c)| c).sum();
        RankProfile { profile, r, m, min_rank_multiplicity }
    }

    /// Minimum-rank element, first in coefficient order.
    pub fn min_rank_element(&self) -> (Vec<Elem>, Matrix) {
        let ranks = self.ranks();
        let best = ranks.iter().map(|(_, r)| *r).min().expect("nonempty");
        let (c, _) = ranks.into_iter().find(|(_, r)| *r == best).expect("minimum attained");
        let h = self.element(&c).expect("coefficient length n");
        (c, h)
    }

    /// `#{(x, h) : x ∈ Ker h0 \ {0}, h ∈ T \ {h0}, h(x) = 0}`.
    pub fn nprime_count(&self, h0: &Matrix) -> Result<BigUint> {
        if !self.space.contains(&h0.sub(&self.g)?)? {
            return Err(Error::NotInCoset);
        }
        let kernel = h0.kernel();
        guard("N' enumeration", self.q(), kernel.len() + self.space.dim())?;
        let f = self.space.field();
        let points: Vec<Vec<Elem>> = all_vectors(self.q(), kernel.len())
            .skip(1)
            .map(|c| {
                let mut x = vec![0; self.space.dim_u()];
                for (b, &k) in kernel.iter().zip(&c) {
                    for (slot, &e) in x.iter_mut().zip(b) {
                        *slot = f.add(*slot, f.mul(k, e));
                    }
                }
                x
            })
            .collect();
        let mut count = 0u64;
        for (_, h) in self.elements() {
            if &h == h0 {
                continue;
            }
            count += points.iter().filter(|x| h.apply_unchecked(x).iter().all(|&e| e == 0)).count() as u64;
        }
        Ok(BigUint::from(count))
    }

    /// Projective points of `U` killed by no element of `T`. Always empty
    /// for a valid coset.
    pub fn uncovered_points(&self) -> Vec<Vec<Elem>> {
        let elements: Vec<Matrix> = self.elements().map(|(_, h)| h).collect();
        projective_points(self.q(), self.space.dim_u())
            .filter(|x| !elements.iter().any(|h| h.apply_unchecked(x).iter().all(|&e| e == 0)))
            .collect()
    }

    pub fn report(&self) -> Result<CensusReport> {
        let q = self.q();
        let p = self.space.dim_u();
        let n = self.space.dim();
        let ranks = self.ranks();
        let RankProfile { profile, r, m, min_rank_multiplicity } = Self::profile_of(&ranks, n);
        let incidence_count: BigUint = ranks.iter().map(|(_, rk)| upow(q, p - rk)).sum();
        let mut verdicts = Vec::new();
        let mut skipped = Vec::new();

        let uncovered = self.uncovered_points().len();
        verdicts.push(Verdict::new("coverage_pointwise", uncovered, 0, uncovered == 0));
        let floor = upow(q, n) + upow(q, p) - 1u32;
        verdicts.push(Verdict::new("coverage", &floor, &incidence_count, floor <= incidence_count));

        let incidence_count_brute = match self.incidence_count(CountMode::Brute) {
            Ok(b) => {
                verdicts.push(Verdict::new("incidence_identity", &incidence_count, &b, b == incidence_count));
                Some(b)
            }
            Err(Error::GuardExceeded { .. }) => {
                skipped.push(Skipped { name: "incidence_identity".into(), reason: "brute guard exceeded".into() });
                None
            }
            Err(e) => return Err(e),
        };

        let (h0, h0_mat) = self.min_rank_element();
        let h0_rank = r;
        let ker_h0 = p - h0_rank;
        let mut checked = 0u64;
        let mut satisfied = 0u64;
        for (_, h) in self.elements() {
            if h == h0_mat {
                continue;
            }
            let d = crate::ffla::kernel_intersection_dim(&h, &h0_mat)?;
            let bound = (p - h.rank()) as i64 + ker_h0 as i64 - p as i64;
            checked += 1;
            satisfied += (d as i64 >= bound) as u64;
        }
        verdicts.push(Verdict::new("kernel_intersection", satisfied, checked, satisfied == checked));

        let nprime_count = match self.nprime_count(&h0_mat) {
            Ok(c) => Some(c),
            Err(Error::GuardExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        let nprime_lower = (p + 1 >= 2 * n)
            .then(|| (BigInt::from(upow(q, p + 1 - 2 * n)) - 1) * (BigInt::from(m) - 1));
        match (&nprime_count, &nprime_lower) {
            (Some(count), Some(lower)) if h0_rank < n => {
                let count = BigInt::from(count.clone());
                verdicts.push(Verdict::new("nprime", lower, &count, *lower <= count));
            }
            (None, _) => skipped.push(Skipped { name: "nprime".into(), reason: "enumeration guard exceeded".into() }),
            (_, None) => skipped.push(Skipped { name: "nprime".into(), reason: "requires p >= 2n-1".into() }),
            _ => skipped.push(Skipped { name: "nprime".into(), reason: format!("requires rk h0 <= n-1, got {h0_rank}") }),
        }

        let mrk = self.space.mrk()?.0;
        let bound = 2 * n - 2;
        verdicts.push(Verdict::new("mrk_bound_2n_minus_2", mrk, bound, mrk <= bound));

        Ok(CensusReport {
            q,
            p,
            n,
            dim_v: self.space.dim_v(),
            incidence_count,
            incidence_count_brute,
            rank_profile: profile,
            r,
            m,
            min_rank_multiplicity,
            h0,
            h0_rank,
            nprime_count,
            nprime_lower,
            verdicts,
            skipped,
        })
    }
}
