//! Executable form of the counting argument behind the `2n - 2` bound.
//!
//! The argument assumes `mrk(S) > 2n - 2` and derives a contradiction from
//! the rank profile of the coset `T = g + S`. Real cosets never satisfy that
//! assumption, so the tracer takes a hypothetical profile (rank -> number of
//! coset elements) and evaluates every relation of the argument on it with
//! exact integer and rational arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{Skipped, Verdict};
use crate::error::{Error, Result};
use crate::ffla::prime_power;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub q: u64,
    pub p: usize,
    pub n: usize,
    pub profile: BTreeMap<usize, u64>,
    /// Minimum rank in the profile.
    pub r: usize,
    /// Number of elements of rank at most `n`.
    pub m: u64,
    #[serde(with = "crate::decimal")]
    pub incidence_count: BigInt,
    pub hypotheses: Vec<Hypothesis>,
    pub hypotheses_met: bool,
    pub verdicts: Vec<Verdict>,
    pub skipped: Vec<Skipped>,
    pub notes: Vec<String>,
    /// A relation the argument requires failed under its hypotheses.
    pub contradiction: bool,
    pub contradicted_by: Vec<String>,
}

fn pow(q: u64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), e)
}

fn qpow_rational(q: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

struct Trace {
    verdicts: Vec<Verdict>,
    skipped: Vec<Skipped>,
    contradicted_by: Vec<String>,
}

impl Trace {
    /// Records a relation; `decisive` ones contribute to the contradiction
    /// when they fail.
    fn push(&mut self, name: &str, lhs: impl ToString, rhs: impl ToString, holds: bool, decisive: bool) {
        if decisive && !holds {
            self.contradicted_by.push(name.to_string());
        }
        self.verdicts.push(Verdict::new(name, lhs, rhs, holds));
    }

    fn skip(&mut self, name: &str, reason: impl Into<String>) {
        self.skipped.push(Skipped { name: name.into(), reason: reason.into() });
    }
}

/// Parses `"rank:count,rank:count"`.
pub fn parse_profile(text: &str) -> Result<BTreeMap<usize, u64>> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (r, c) = part
            .split_once(':')
            .ok_or_else(|| Error::MalformedProfile(format!("`{part}` is not rank:count")))?;
        let r: usize = r.trim().parse().map_err(|_| Error::MalformedProfile(format!("bad rank `{r}`")))?;
        let c: u64 = c.trim().parse().map_err(|_| Error::MalformedProfile(format!("bad count `{c}`")))?;
        *out.entry(r).or_insert(0) += c;
    }
    out.retain(|_, c| *c > 0);
    if out.is_empty() {
        return Err(Error::MalformedProfile("empty profile".into()));
    }
    Ok(out)
}

/// Evaluates the counting argument on a hypothetical coset with the given
/// rank profile.
pub fn proof_trace(q: u64, p: usize, n: usize, profile: &BTreeMap<usize, u64>) -> Result<TraceReport> {
    if prime_power(q).is_none() {
        return Err(Error::MalformedProfile(format!("q = {q} is not a prime power")));
    }
    if p == 0 {
        return Err(Error::MalformedProfile("p must be at least 1".into()));
    }
    let total: BigInt = profile.values().map(|&c| BigInt::from(c)).sum();
    let qn = pow(q, n);
    if total != qn {
        return Err(Error::MalformedProfile(format!("counts sum to {total}, expected q^n = {qn}")));
    }
    if let Some(&bad) = profile.keys().find(|&&r| r > p) {
        return Err(Error::MalformedProfile(format!("rank {bad} exceeds p = {p}")));
    }

    let r = *profile.keys().next().expect("nonempty");
    let m: u64 = profile.range(..=n).map(|(_, &c)| c).sum();
    let qp = pow(q, p);
    let incidences: BigInt = profile.iter().map(|(&rk, &c)| BigInt::from(c) * pow(q, p - rk)).sum();
    let floor = &qn + &qp - 1;

    let hypotheses = vec![
        Hypothesis { name: "n >= 2".into(), holds: n >= 2 },
        Hypothesis { name: "p >= 2n-1".into(), holds: p + 1 >= 2 * n },
    ];
    let hypotheses_met = hypotheses.iter().all(|h| h.holds);
    let mut t = Trace { verdicts: Vec::new(), skipped: Vec::new(), contradicted_by: Vec::new() };
    let mut notes = Vec::new();

    t.push("zero_free", profile.get(&0).copied().unwrap_or(0), 0, !profile.contains_key(&0), hypotheses_met);
    t.push("coverage", &floor, &incidences, floor <= incidences, hypotheses_met);

    if !hypotheses_met {
        for h in hypotheses.iter().filter(|h| !h.holds) {
            notes.push(format!("hypothesis {} not met; no contradiction claimed", h.name));
        }
        for name in ["claim1", "claim2", "claim3", "majo3", "mino3", "minequality", "final"] {
            t.skip(name, "outside the argument's regime");
        }
        return Ok(finish(q, p, n, profile, r, m, incidences, hypotheses, t, notes));
    }

    // Claim 1: with every rank >= n each operator kills at most q^(p-n)
    // vectors, so #N <= q^p while the coverage floor is q^n + q^p - 1.
    if r >= n {
        t.push("claim1", &floor, &qp, floor <= qp, true);
    } else {
        t.skip("claim1", format!("T already has an operator of rank r = {r} <= n-1"));
    }

    // Claim 2: a second element of rank <= 2n-2-r would differ from the
    // rank-r one by a nonzero element of S of rank <= 2n-2.
    let limit = (2 * n - 2).checked_sub(r);
    let offenders = match limit {
        Some(l) => profile.range(..=l).map(|(_, &c)| c).sum::<u64>().saturating_sub(1),
        None => 0,
    };
    t.push("claim2", offenders, 0, offenders == 0, true);

    // Claim 3.
    if r >= n {
        t.skip("claim3", "requires r <= n-1");
    } else if r == 0 {
        t.skip("claim3", "requires r >= 1");
    } else {
        let e = p + 1 + r - 2 * n;
        let lhs = pow(q, p - r) * (pow(q, r) - 1);
        let rhs = (&qn - 1) * (pow(q, e) - 1);
        t.push("claim3", &lhs, &rhs, lhs <= rhs, true);

        let one = BigRational::one();
        let flhs = qpow_rational(q, r as i64 - n as i64 + 1);
        let num = &one - qpow_rational(q, -(r as i64));
        let den = (&one - qpow_rational(q, -(n as i64))) * (&one - qpow_rational(q, -(e as i64)));
        let frhs = num / den;
        t.push("claim3_factored", &flhs, &frhs, flhs >= frhs, true);
        t.push("claim3_conclusion", r, n - 1, r + 1 >= n, true);
    }

    // The remaining bounds presume the conclusions of Claims 2 and 3.
    let unique_min = profile.get(&r) == Some(&1);
    if r + 1 == n && unique_min && offenders == 0 {
        let mm = BigInt::from(m);
        let a = pow(q, p - n + 1);
        let b = pow(q, p - n);
        let c = pow(q, p - n - 1);
        let d = pow(q, p + 1 - 2 * n);
        let majo = &a + (&mm - 1) * &b + (&qn - &mm) * &c;
        t.push("majo3", &incidences, &majo, incidences <= majo, false);
        let mino = &floor + (&d - 1) * (&mm - 1);
        t.push("mino3", &mino, &incidences, mino <= incidences, true);
        let ineq_lhs = &qn + &qp - &d - &a + &b - pow(q, p - 1);
        let slope = &b - &c - &d + 1;
        let ineq_rhs = &mm * &slope;
        t.push("minequality", &ineq_lhs, &ineq_rhs, ineq_lhs <= ineq_rhs, true);
        let max_rhs = &qn * &slope;
        t.push("minequality_m_max", &ineq_lhs, &max_rhs, ineq_lhs <= max_rhs, true);
        t.push("final", &b, &d, b <= d, true);
    } else {
        for name in ["majo3", "mino3", "minequality", "final"] {
            t.skip(name, "hypothesis not met: needs a unique rank n-1 element and all others of rank >= n");
        }
    }

    Ok(finish(q, p, n, profile, r, m, incidences, hypotheses, t, notes))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    q: u64,
    p: usize,
    n: usize,
    profile: &BTreeMap<usize, u64>,
    r: usize,
    m: u64,
    incidence_count: BigInt,
    hypotheses: Vec<Hypothesis>,
    t: Trace,
    notes: Vec<String>,
) -> TraceReport {
    TraceReport {
        q,
        p,
        n,
        profile: profile.clone(),
        r,
        m,
        incidence_count,
        hypotheses_met: hypotheses.iter().all(|h| h.holds),
        hypotheses,
        contradiction: !t.contradicted_by.is_empty(),
        contradicted_by: t.contradicted_by,
        verdicts: t.verdicts,
        skipped: t.skipped,
        notes,
    }
}
