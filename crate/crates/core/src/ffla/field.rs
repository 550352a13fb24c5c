//! Finite fields GF(p^k) with log/antilog multiplication tables.
//!
//! An element is an integer `e` in `[0, q)`. Its base-`p` digits are the
//! coefficients of a polynomial over GF(p) (least significant digit is the
//! constant term), reduced modulo the field's monic irreducible modulus.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element in its integer encoding.
pub type Elem = u32;

const MAX_ORDER: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 256;

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    /// `exp[i] = g^i` for a fixed primitive element `g`, `i < q - 1`.
    exp: Vec<Elem>,
    /// Discrete logarithm base `g`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<Elem>,
    add: Option<Vec<Elem>>,
}

/// Description of GF(q), q = p^k, together with its arithmetic tables.
///
/// Cloning is cheap; the tables are shared and immutable.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.k == other.t.k && self.t.modulus == other.t.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.t.modulus {
            Some(m) => write!(f, "GF({}^{}, modulus {:?})", self.t.p, self.t.k, m),
            None => write!(f, "GF({})", self.t.p),
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` when `q = p^k` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > u32::MAX as u64 {
        return None;
    }
    let q = q as u32;
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(mut e: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = e % p;
        e /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p). Both are
/// coefficient lists, low degree first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let deg = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > deg {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - deg;
            for (i, &c) in m[..deg].iter().enumerate() {
                r[off + i] = (r[off + i] + (p - c) * lead) % p;
            }
        }
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Irreducibility by trial division with every monic polynomial of degree
/// `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut f = digits(low as u32, p, d);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    (0..count)
        .map(|low| {
            let mut m = digits(low as u32, p, k as usize);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists in every degree")
}

impl FieldSpec {
    /// Builds GF(p^k). With `modulus = None` and `k > 1` the smallest monic
    /// irreducible polynomial is used, polynomials being ordered by the
    /// integer whose base-`p` digits are their coefficients.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree(k));
        }
        let q64 = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(Error::FieldTooLarge { p, k });
        }
        let q = q64 as u32;
        let modulus = match (k, modulus) {
            (1, None) => None,
            (1, Some(m)) => {
                // A degree-1 modulus carries no information; accept only x + c.
                if m.len() != 2 || m[1] != 1 || m[0] >= p {
                    return Err(Error::BadModulus(m.to_vec(), "a prime field takes no modulus"));
                }
                None
            }
            (_, Some(m)) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::BadModulus(m.to_vec(), "degree differs from k"));
                }
                if m[k as usize] != 1 {
                    return Err(Error::BadModulus(m.to_vec(), "not monic"));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus(m.to_vec(), "coefficient outside GF(p)"));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                Some(m.to_vec())
            }
            (_, None) => Some(smallest_irreducible(p, k)),
        };

        let slow_mul = |a: u32, b: u32| -> u32 {
            match &modulus {
                None => ((a as u64 * b as u64) % p as u64) as u32,
                Some(m) => {
                    let prod = poly_mul(&digits(a, p, k as usize), &digits(b, p, k as usize), p);
                    undigits(&poly_rem(&prod, m, p), p)
                }
            }
        };

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        for g in 1..q {
            exp.clear();
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = slow_mul(x, g);
                if x == 1 || exp.len() >= q as usize {
                    break;
                }
            }
            if exp.len() == q as usize - 1 {
                break;
            }
        }
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }

        let raw_add = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, k as usize), digits(b, p, k as usize));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            undigits(&s, p)
        };
        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, k as usize).iter().map(|&x| (p - x) % p).collect();
                undigits(&d, p)
            })
            .collect();
        let add = (p != 2 && q <= ADD_TABLE_LIMIT)
            .then(|| (0..q * q).map(|i| raw_add(i / q, i % q)).collect());

        Ok(Self {
            t: Arc::new(Tables { p, k, q, modulus, exp, log, neg, add }),
        })
    }

    /// GF(q) for a prime power `q`, default modulus.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        Self::new(p, k, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.k
    }

    pub fn order(&self) -> u32 {
        self.t.q
    }

    /// Modulus coefficients, low degree first, including the leading 1.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.t.modulus.as_deref()
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.t.q
    }

    pub fn check(&self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange { value: a, q: self.t.q })
        }
    }

    /// All elements `0..q` in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.t.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &*self.t;
        if t.p == 2 {
            return a ^ b;
        }
        if t.k == 1 {
            let s = a + b;
            return if s >= t.p { s - t.p } else { s };
        }
        if let Some(tab) = &t.add {
            return tab[(a * t.q + b) as usize];
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..t.k {
            out += ((a % t.p + b % t.p) % t.p) * place;
            a /= t.p;
            b /= t.p;
            place *= t.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.t.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.t;
        let order = t.q - 1;
        let s = t.log[a as usize] + t.log[b as usize];
        t.exp[(if s >= order { s - order } else { s }) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let t = &*self.t;
        let order = t.q - 1;
        Ok(t.exp[((order - t.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.t.q - 1) as u64;
        let l = (self.t.log[a as usize] as u64 * (e % order)) % order;
        self.t.exp[l as usize]
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        if self.t.q == 2 {
            1
        } else {
            self.t.exp[1]
        }
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson {
            p: self.t.p,
            k: self.t.k,
            modulus: self.t.modulus.clone(),
        }
    }

    pub fn from_json(j: &FieldJson) -> Result<Self> {
        Self::new(j.p, j.k, j.modulus.as_deref())
    }
}

/// On-disk form: `{"p": 2, "k": 2, "modulus": [1,1,1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FieldJson::deserialize(d)?;
        FieldSpec::from_json(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.modulus(), None);
        assert_eq!(f.add(1, 1), 0);

        let f3 = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(f3.inv(2).unwrap(), 2);
        assert_eq!(f3.neg(1), 2);
    }

    #[test]
    fn gf4_default_modulus_and_product() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
        // alpha * alpha = alpha + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn default_moduli_are_smallest_irreducible() {
        assert_eq!(FieldSpec::new(2, 3, None).unwrap().modulus(), Some(&[1, 1, 0, 1][..]));
        assert_eq!(FieldSpec::new(3, 2, None).unwrap().modulus(), Some(&[1, 0, 1][..]));
        assert_eq!(FieldSpec::new(2, 4, None).unwrap().modulus(), Some(&[1, 1, 0, 0, 1][..]));
    }

    #[test]
    fn gf9_modulus_acceptance_matches_root_search() {
        // x^2 + b x + c over GF(3) is irreducible iff it has no root.
        for b in 0..3u32 {
            for c in 0..3u32 {
                let has_root = (0..3u32).any(|x| (x * x + b * x + c) % 3 == 0);
                let res = FieldSpec::new(3, 2, Some(&[c, b, 1]));
                assert_eq!(res.is_ok(), !has_root, "x^2+{b}x+{c}");
            }
        }
        assert!(FieldSpec::new(3, 2, Some(&[2, 1, 1])).is_ok());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(FieldSpec::new(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(FieldSpec::new(2, 0, None), Err(Error::ZeroDegree(0))));
        assert!(matches!(FieldSpec::new(2, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus(_))));
        assert!(matches!(FieldSpec::new(2, 2, Some(&[1, 1])), Err(Error::BadModulus(..))));
        assert!(matches!(FieldSpec::new(2, 2, Some(&[1, 1, 2])), Err(Error::BadModulus(..))));
        assert!(matches!(FieldSpec::new(2, 17, None), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(FieldSpec::new(3, 1, None).unwrap().inv(0), Err(Error::ZeroInverse)));
    }

    #[test]
    fn axioms_on_full_tables() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = FieldSpec::of_order(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in els.iter().step_by(if q > 16 { 5 } else { 1 }) {
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_free_addition_matches_digits() {
        let f = FieldSpec::new(3, 6, None).unwrap();
        assert!(f.t.add.is_none());
        let (a, b) = (400u32, 612u32);
        let expect = undigits(
            &digits(a, 3, 6).iter().zip(digits(b, 3, 6)).map(|(x, y)| (x + y) % 3).collect::<Vec<_>>(),
            3,
        );
        assert_eq!(f.add(a, b), expect);
    }

    #[test]
    fn json_fragment() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"p":2,"k":2,"modulus":[1,1,1]}"#);
        let g: FieldSpec = serde_json::from_str(r#"{"p":5,"k":1}"#).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"p":5,"k":1}"#);
    }
}
