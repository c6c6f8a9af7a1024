//! Elimination of universally ramified primes and search for specializations unramified
//! at a prescribed finite set of primes.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::specialization::{prime_support, specialized_model};
use super::ser;
use super::{branch_points, unramified_check, BeckmannError, BranchPoint, Cover, Verdict};
use crate::arith::{is_prime, zresultant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscSupport {
    #[serde(serialize_with = "ser::display")]
    pub a: BigRational,
    #[serde(serialize_with = "ser::display")]
    pub discriminant: BigInt,
    #[serde(serialize_with = "ser::display_set")]
    pub primes: BTreeSet<BigInt>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UrBound {
    /// Primes that may ramify in every specialization.
    #[serde(serialize_with = "ser::display_set")]
    pub primes: BTreeSet<BigInt>,
    /// False when some discriminant was only partially factored; the bound then only
    /// covers the recovered primes.
    pub complete: bool,
    pub supports: Vec<DiscSupport>,
    /// For each prime removed after intersecting, the value certifying it.
    #[serde(serialize_with = "ser::display_keys")]
    pub eliminated_by: BTreeMap<BigInt, String>,
}

/// Discriminant of the primitive integral model of `f(a, X)`.
fn integral_discriminant(c: &Cover, a: &BigRational) -> Result<BigInt, BeckmannError> {
    let g = specialized_model(c, a);
    if g.deg() != c.degree() as isize {
        return Err(BeckmannError::IsBranchPoint(a.to_string()));
    }
    if g.deg() == 1 {
        return Ok(BigInt::one());
    }
    let r = zresultant(&g, &g.derivative())?;
    let n = g.deg();
    let d = r / g.lc();
    let d = if (n * (n - 1) / 2).is_even() { d } else { -d };
    if d.is_zero() {
        return Err(BeckmannError::IsBranchPoint(a.to_string()));
    }
    Ok(d)
}

/// Superset of the primes ramified in every specialization `t ↦ a`, `a ∈ values`.
///
/// Intersects the prime supports of the integral specialization discriminants, then drops
/// every prime for which some value has an unramified certificate.
pub fn universally_ramified_bound(c: &Cover, values: &[BigRational]) -> Result<UrBound, BeckmannError> {
    if values.len() < 2 {
        return Err(BeckmannError::Unsupported("need at least two specialization values".into()));
    }
    let points = branch_points(c)?;
    let mut supports = Vec::with_capacity(values.len());
    for a in values {
        Cover::ensure_not_branch(&points, a)?;
        let d = integral_discriminant(c, a)?;
        let (primes, complete) = prime_support([&d]);
        supports.push(DiscSupport { a: a.clone(), discriminant: d, primes, complete });
    }
    let mut primes = supports[0].primes.clone();
    for s in &supports[1..] {
        primes = primes.intersection(&s.primes).cloned().collect();
    }
    let mut eliminated_by = BTreeMap::new();
    for p in primes.clone() {
        for a in values {
            if unramified_check(c, a, &p)? == Verdict::Unramified {
                primes.remove(&p);
                eliminated_by.insert(p.clone(), a.to_string());
                break;
            }
        }
    }
    let complete = supports.iter().all(|s| s.complete);
    Ok(UrBound { primes, complete, supports, eliminated_by })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest `k` tried for the residue modulus `p^k`.
    pub max_exponent: u32,
    /// Number of integers scanned before giving up.
    pub max_candidates: u64,
    /// Residue classes examined per modulus; larger moduli are skipped.
    pub max_residues: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_exponent: 8, max_candidates: 1_000_000, max_residues: 4096 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueLock {
    #[serde(serialize_with = "ser::display")]
    pub modulus: BigInt,
    #[serde(serialize_with = "ser::display_vec")]
    pub residues: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    #[serde(serialize_with = "ser::display_vec")]
    pub values: Vec<BigInt>,
    /// Residue classes used to filter candidates, per prime.
    #[serde(serialize_with = "ser::display_keys")]
    pub locks: BTreeMap<BigInt, ResidueLock>,
    pub scanned: u64,
    /// True when the candidate budget ran out before `count` values were found.
    pub exhausted: bool,
}

/// Up to `count` integers `a`, none a branch point, with an unramified certificate at
/// every prime of `primes`.
pub fn specialize_search(
    c: &Cover,
    primes: &BTreeSet<BigInt>,
    count: usize,
) -> Result<SearchResult, BeckmannError> {
    specialize_search_with(c, primes, count, SearchOptions::default())
}

fn certified(c: &Cover, points: &[BranchPoint], a: &BigInt, p: &BigInt) -> Result<bool, BeckmannError> {
    let a = BigRational::from_integer(a.clone());
    if points.iter().any(|bp| bp.contains(&a)) || specialized_model(c, &a).deg() != c.degree() as isize {
        return Ok(false);
    }
    Ok(unramified_check(c, &a, p)? == Verdict::Unramified)
}

/// Smallest `p^k` with some residue `r` such that both `r` and `r + p^k` are certified,
/// together with all such residues.
fn lock_residues(
    c: &Cover,
    points: &[BranchPoint],
    p: &BigInt,
    opts: &SearchOptions,
) -> Result<Option<ResidueLock>, BeckmannError> {
    let mut modulus = p.clone();
    for _ in 0..opts.max_exponent {
        if modulus.to_u64().is_none_or(|m| m > opts.max_residues) {
            break;
        }
        let mut residues = Vec::new();
        let mut r = BigInt::zero();
        while r < modulus {
            if certified(c, points, &r, p)? && certified(c, points, &(&r + &modulus), p)? {
                residues.push(r.clone());
            }
            r += 1;
        }
        if !residues.is_empty() {
            return Ok(Some(ResidueLock { modulus, residues }));
        }
        modulus *= p;
    }
    Ok(None)
}

/// Integers in the order `0, 1, −1, 2, −2, …`.
fn scan_order() -> impl Iterator<Item = BigInt> {
    std::iter::once(BigInt::zero()).chain((1i64..).flat_map(|k| [BigInt::from(k), BigInt::from(-k)]))
}

pub fn specialize_search_with(
    c: &Cover,
    primes: &BTreeSet<BigInt>,
    count: usize,
    opts: SearchOptions,
) -> Result<SearchResult, BeckmannError> {
    for p in primes {
        if p.to_u64().is_none() || !is_prime(p) {
            return Err(BeckmannError::BadPrime(p.to_string()));
        }
    }
    let points = branch_points(c)?;
    let mut locks = BTreeMap::new();
    for p in primes {
        if let Some(lock) = lock_residues(c, &points, p, &opts)? {
            locks.insert(p.clone(), lock);
        }
    }
    let mut values = Vec::new();
    let mut scanned = 0u64;
    for a in scan_order() {
        if values.len() >= count || scanned >= opts.max_candidates {
            break;
        }
        scanned += 1;
        let in_locks = locks.values().all(|l| l.residues.contains(&a.mod_floor(&l.modulus)));
        if !in_locks {
            continue;
        }
        let ar = BigRational::from_integer(a.clone());
        if points.iter().any(|bp| bp.contains(&ar)) || specialized_model(c, &ar).deg() != c.degree() as isize {
            continue;
        }
        let mut ok = true;
        for p in primes {
            if !certified(c, &points, &a, p)? {
                ok = false;
                break;
            }
        }
        if ok {
            values.push(a);
        }
    }
    Ok(SearchResult { exhausted: values.len() < count, values, locks, scanned })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn set(ps: &[i64]) -> BTreeSet<BigInt> {
        ps.iter().map(|&p| BigInt::from(p)).collect()
    }

    #[test]
    fn ur_bound_small_covers() {
        let c = Cover::parse("poly\n0 2 1\n1 0 -1\n").unwrap();
        let b = universally_ramified_bound(&c, &[q(2), q(3)]).unwrap();
        assert_eq!(b.supports[0].primes, set(&[2]));
        assert_eq!(b.supports[1].primes, set(&[2, 3]));
        // Q(√2) and Q(√3) both ramify at 2
        assert_eq!(b.primes, set(&[2]));
        let b = universally_ramified_bound(&c, &[q(2), q(5)]).unwrap();
        assert!(b.primes.is_empty());
        assert_eq!(b.eliminated_by.get(&BigInt::from(2)).map(String::as_str), Some("5"));

        let c = Cover::parse("poly\n0 2 1\n1 0 -3\n").unwrap();
        let b = universally_ramified_bound(&c, &[q(1), q(4)]).unwrap();
        assert_eq!(b.primes, set(&[2, 3]));
        assert!(b.complete);

        assert!(universally_ramified_bound(&c, &[q(1)]).is_err());
        assert!(matches!(
            universally_ramified_bound(&c, &[q(1), q(0)]),
            Err(BeckmannError::IsBranchPoint(_))
        ));
    }

    #[test]
    fn search_square_root_cover() {
        let c = Cover::parse("poly\n0 2 1\n1 0 -1\n").unwrap();
        let s = set(&[2, 3]);
        let r = specialize_search(&c, &s, 4).unwrap();
        assert_eq!(r.values.len(), 4);
        assert!(!r.exhausted);
        for a in &r.values {
            let a = BigRational::from_integer(a.clone());
            for p in &s {
                assert_eq!(unramified_check(&c, &a, p).unwrap(), Verdict::Unramified, "a = {a}, p = {p}");
            }
            assert!(!a.is_zero());
        }
        assert_eq!(r.locks[&BigInt::from(2)].modulus, BigInt::from(4));

        let r = specialize_search(&c, &BTreeSet::new(), 3).unwrap();
        assert_eq!(r.values, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(2)]);
    }

    #[test]
    fn search_budget_exhaustion() {
        // X² − 3t: only multiples of 3 can be certified at 3
        let c = Cover::parse("poly\n0 2 1\n1 0 -3\n").unwrap();
        let opts = SearchOptions { max_candidates: 10, ..SearchOptions::default() };
        let r = specialize_search_with(&c, &set(&[3]), 5, opts).unwrap();
        assert!(r.exhausted);
        assert!(r.values.len() < 5);
        assert!(specialize_search(&c, &set(&[4]), 1).is_err());
    }
}
