//! Exhaustive and sampled verification of the rank bound for non-reflexive
//! spaces, extremal-example collection, and the division-algebra family.
//!
//! An `n`-dimensional subspace of `L(U, V)` is an `n`-dimensional subspace of
//! `GF(q)^(dim_v * p)` under row-major flattening, so exhaustive runs walk the
//! canonical RREF enumeration of those. Work is split into fixed chunks that
//! are merged in enumeration order, making reports independent of the number
//! of worker threads.

mod enumerate;
mod regular;

pub use enumerate::{enumerate_subspaces, gaussian_binomial, pivot_patterns, subspace_blocks, PatternBlock};
pub use regular::{construct_regular_rep, extension_of, multiplication_matrix};

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffla::{Elem, FieldJson, FieldSpec, Matrix, MatrixJson};
use crate::opspace::OperatorSpace;

pub const DEFAULT_GUARD: u64 = 10_000_000;
pub const RNG_NAME: &str = "ChaCha8Rng";
const CHUNK: u64 = 2048;
const SAMPLE_BATCH: u64 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug)]
pub struct SearchParams {
    pub field: FieldSpec,
    pub dim_u: usize,
    pub dim_v: usize,
    pub n: usize,
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    pub jobs: usize,
    pub guard: u64,
    /// Keep every witness attaining the maximal mrk.
    pub extremal: bool,
}

impl SearchParams {
    pub fn exhaustive(field: &FieldSpec, dim_u: usize, dim_v: usize, n: usize) -> Self {
        Self {
            field: field.clone(),
            dim_u,
            dim_v,
            n,
            mode: Mode::Exhaustive,
            samples: 0,
            seed: 0,
            jobs: 1,
            guard: DEFAULT_GUARD,
            extremal: false,
        }
    }

    pub fn random(field: &FieldSpec, dim_u: usize, dim_v: usize, n: usize, samples: u64, seed: u64) -> Self {
        Self { mode: Mode::Random, samples, seed, ..Self::exhaustive(field, dim_u, dim_v, n) }
    }

    fn validate(&self) -> Result<()> {
        if self.dim_u == 0 || self.dim_v == 0 {
            return Err(Error::InvalidParameter("dim_u and dim_v must be positive".into()));
        }
        if self.n > self.dim_u * self.dim_v {
            return Err(Error::InvalidParameter(format!(
                "n = {} exceeds dim L(U,V) = {}",
                self.n,
                self.dim_u * self.dim_v
            )));
        }
        if self.mode == Mode::Random && self.samples == 0 {
            return Err(Error::InvalidParameter("random mode needs at least one sample".into()));
        }
        Ok(())
    }

    fn echo(&self) -> ParamsEcho {
        let random = self.mode == Mode::Random;
        ParamsEcho {
            q: self.field.order(),
            field: self.field.to_json(),
            dim_u: self.dim_u,
            dim_v: self.dim_v,
            n: self.n,
            mode: self.mode,
            samples: random.then_some(self.samples),
            seed: random.then_some(self.seed),
            rng: random.then(|| RNG_NAME.to_string()),
            guard: self.guard,
            extremal: self.extremal,
        }
    }
}

/// Parameters as recorded in a report. The worker count is left out: it
/// never changes the result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub q: u32,
    pub field: FieldJson,
    pub dim_u: usize,
    pub dim_v: usize,
    pub n: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
    pub guard: u64,
    pub extremal: bool,
}

/// A space recorded in a report, by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceWitness {
    pub basis: Vec<MatrixJson>,
    pub mrk: usize,
    pub closure_dim: usize,
}

impl SpaceWitness {
    pub fn to_space(&self, field: &FieldSpec, dim_u: usize, dim_v: usize) -> Result<OperatorSpace> {
        let basis = self.basis.iter().map(|m| Matrix::from_json(field, m)).collect::<Result<Vec<_>>>()?;
        OperatorSpace::new(field, dim_u, dim_v, basis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SecondaryBound {
    /// Only stated for `q > n >= 3`.
    NotApplicable,
    Holds,
    Violated { witness: SpaceWitness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SanityViolation {
    pub check: String,
    pub witness: SpaceWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalSlice {
    pub max_mrk: Option<usize>,
    pub witnesses: Vec<SpaceWitness>,
    pub equals_2n_minus_2: bool,
    pub equals_2n_minus_3: bool,
    pub equals_n: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub params: ParamsEcho,
    #[serde(with = "crate::decimal")]
    pub spaces_examined: u64,
    #[serde(with = "crate::decimal")]
    pub reflexive_count: u64,
    #[serde(with = "crate::decimal")]
    pub non_reflexive_count: u64,
    pub max_mrk_non_reflexive: Option<usize>,
    pub max_mrk_witness: Option<SpaceWitness>,
    /// mrk -> number of non-reflexive spaces.
    pub mrk_histogram: BTreeMap<usize, u64>,
    pub bound_2n_minus_2: usize,
    pub bound_2n_minus_2_violations: Vec<SpaceWitness>,
    pub bound_2n_minus_3_status: SecondaryBound,
    pub sanity_violations: Vec<SanityViolation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremal: Option<ExtremalSlice>,
}

impl SearchReport {
    pub fn theorem_confirmed(&self) -> bool {
        self.bound_2n_minus_2_violations.is_empty()
    }
}

/// Mergeable partial result over a contiguous part of the population.
#[derive(Clone, Debug, Default)]
struct Tally {
    examined: u64,
    reflexive: u64,
    non_reflexive: u64,
    max: Option<(usize, SpaceWitness)>,
    extremal: Vec<SpaceWitness>,
    histogram: BTreeMap<usize, u64>,
    violations: Vec<SpaceWitness>,
    violations_2n3: Vec<SpaceWitness>,
    sanity: Vec<SanityViolation>,
}

impl Tally {
    /// `self` covers the part of the population preceding `other`.
    fn merge(mut self, other: Tally) -> Tally {
        self.examined += other.examined;
        self.reflexive += other.reflexive;
        self.non_reflexive += other.non_reflexive;
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_insert(0) += v;
        }
        match (&self.max, other.max) {
            (None, m) => {
                self.max = m;
                self.extremal = other.extremal;
            }
            (Some(_), None) => {}
            (Some((a, _)), Some((b, w))) => {
                if b > *a {
                    self.max = Some((b, w));
                    self.extremal = other.extremal;
                } else if b == *a {
                    self.extremal.extend(other.extremal);
                }
            }
        }
        self.violations.extend(other.violations);
        self.violations_2n3.extend(other.violations_2n3);
        self.sanity.extend(other.sanity);
        self
    }
}

struct Checker {
    n: usize,
    keep_extremal: bool,
    check_2n3: bool,
}

impl Checker {
    fn new(params: &SearchParams) -> Self {
        let n = params.n;
        Self { n, keep_extremal: params.extremal, check_2n3: params.field.order() as usize > n && n >= 3 }
    }

    fn examine(&self, space: &OperatorSpace, tally: &mut Tally) {
        tally.examined += 1;
        let closure = space.reflexive_closure();
        if closure.dim() == space.dim() {
            tally.reflexive += 1;
            return;
        }
        tally.non_reflexive += 1;
        let (mrk, _) = space.mrk().expect("a non-reflexive space is nonzero");
        let witness = || SpaceWitness {
            basis: space.canonical().basis().iter().map(Matrix::to_json).collect(),
            mrk,
            closure_dim: closure.dim(),
        };
        *tally.histogram.entry(mrk).or_insert(0) += 1;
        let n = self.n;
        if mrk + 2 > 2 * n {
            eprintln!("THEOREM VIOLATION: mrk {mrk} > 2n-2 = {} for {:?}", 2 * n - 2, space.basis());
            tally.violations.push(witness());
        }
        if self.check_2n3 && mrk + 3 > 2 * n {
            tally.violations_2n3.push(witness());
        }
        if mrk > n * (n + 1) / 2 {
            tally.sanity.push(SanityViolation { check: "mrk <= n(n+1)/2".into(), witness: witness() });
        }
        if mrk > n * n {
            tally.sanity.push(SanityViolation { check: "mrk <= n^2".into(), witness: witness() });
        }
        let g = space.witness_in(&closure).expect("closure is strictly larger");
        if !space.hyperplane_lld_check(&g).expect("g lies outside S") {
            tally.sanity.push(SanityViolation { check: "S + Kg is LLD".into(), witness: witness() });
        }
        let better = tally.max.as_ref().is_none_or(|(m, _)| mrk > *m);
        if better {
            tally.max = Some((mrk, witness()));
            tally.extremal.clear();
        }
        if self.keep_extremal && tally.max.as_ref().is_some_and(|(m, _)| *m == mrk) {
            tally.extremal.push(witness());
        }
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start {jobs} workers: {e}")))
}

fn finish(params: &SearchParams, tally: Tally) -> Result<SearchReport> {
    let n = params.n;
    let status = if !(params.field.order() as usize > n && n >= 3) {
        SecondaryBound::NotApplicable
    } else if let Some(w) = tally.violations_2n3.first() {
        SecondaryBound::Violated { witness: w.clone() }
    } else {
        SecondaryBound::Holds
    };
    let extremal = params.extremal.then(|| {
        let max = tally.max.as_ref().map(|(m, _)| *m);
        ExtremalSlice {
            max_mrk: max,
            witnesses: tally.extremal.clone(),
            equals_2n_minus_2: max.is_some_and(|m| m + 2 == 2 * n),
            equals_2n_minus_3: max.is_some_and(|m| m + 3 == 2 * n),
            equals_n: max == Some(n),
        }
    });
    let report = SearchReport {
        params: params.echo(),
        spaces_examined: tally.examined,
        reflexive_count: tally.reflexive,
        non_reflexive_count: tally.non_reflexive,
        max_mrk_non_reflexive: tally.max.as_ref().map(|(m, _)| *m),
        max_mrk_witness: tally.max.map(|(_, w)| w),
        mrk_histogram: tally.histogram,
        bound_2n_minus_2: (2 * n).saturating_sub(2),
        bound_2n_minus_2_violations: tally.violations,
        bound_2n_minus_3_status: status,
        sanity_violations: tally.sanity,
        extremal,
    };
    if !report.theorem_confirmed() {
        let count = report.bound_2n_minus_2_violations.len();
        return Err(Error::TheoremViolation(count, Box::new(report)));
    }
    Ok(report)
}

/// Classifies every `n`-dimensional subspace of `L(U, V)`.
pub fn exhaustive_verify(params: &SearchParams) -> Result<SearchReport> {
    params.validate()?;
    let f = &params.field;
    let ambient = params.dim_u * params.dim_v;
    let blocks = subspace_blocks(f.order(), ambient, params.n, params.guard)?;
    let chunks: Vec<(usize, u64, u64)> = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            let len = b.len();
            (0..len.div_ceil(CHUNK)).map(move |c| (i, c * CHUNK, ((c + 1) * CHUNK).min(len)))
        })
        .collect();
    let checker = Checker::new(params);
    let tallies: Vec<Tally> = pool(params.jobs)?.install(|| {
        chunks
            .par_iter()
            .map(|&(block, start, end)| {
                let mut tally = Tally::default();
                for idx in start..end {
                    let flat = blocks[block].basis(idx);
                    let space = OperatorSpace::from_flat_unchecked(f, params.dim_u, params.dim_v, flat);
                    checker.examine(&space, &mut tally);
                }
                tally
            })
            .collect()
    });
    let total = tallies.into_iter().fold(Tally::default(), Tally::merge);
    finish(params, total)
}

/// Draws `n` independent uniformly random operators, resampling the whole
/// tuple on linear dependence. Sample `i` uses stream `i` of a generator
/// seeded from `seed`, so the population does not depend on scheduling.
pub fn sample_space(params: &SearchParams, index: u64) -> OperatorSpace {
    let f = &params.field;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index);
    let q = f.order();
    loop {
        let basis: Vec<Matrix> = (0..params.n)
            .map(|_| {
                let data: Vec<Elem> = (0..params.dim_u * params.dim_v).map(|_| rng.gen_range(0..q)).collect();
                Matrix::new(f, params.dim_v, params.dim_u, data).expect("entries below q")
            })
            .collect();
        if let Ok(s) = OperatorSpace::new(f, params.dim_u, params.dim_v, basis) {
            return s;
        }
    }
}

/// Same checks as [`exhaustive_verify`] on a seeded random population.
pub fn random_verify(params: &SearchParams) -> Result<SearchReport> {
    params.validate()?;
    let batches: Vec<(u64, u64)> = (0..params.samples.div_ceil(SAMPLE_BATCH))
        .map(|b| (b * SAMPLE_BATCH, ((b + 1) * SAMPLE_BATCH).min(params.samples)))
        .collect();
    let checker = Checker::new(params);
    let tallies: Vec<Tally> = pool(params.jobs)?.install(|| {
        batches
            .par_iter()
            .map(|&(start, end)| {
                let mut tally = Tally::default();
                for i in start..end {
                    checker.examine(&sample_space(params, i), &mut tally);
                }
                tally
            })
            .collect()
    });
    let total = tallies.into_iter().fold(Tally::default(), Tally::merge);
    finish(params, total)
}

/// Runs the configured mode.
pub fn verify(params: &SearchParams) -> Result<SearchReport> {
    match params.mode {
        Mode::Exhaustive => exhaustive_verify(params),
        Mode::Random => random_verify(params),
    }
}

/// Like [`verify`], keeping every witness of the maximal observed mrk.
/// The maximum is an observation about the scanned population only.
pub fn find_extremal(params: &SearchParams) -> Result<SearchReport> {
    let mut p = params.clone();
    p.extremal = true;
    verify(&p)
}
