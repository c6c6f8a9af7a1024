//! Intersection multiplicities, the exceptional prime set and inertia prediction for
//! specializations `t ↦ a`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::ser;
use super::{ramification_indices, BeckmannError, BranchPoint, Cover};
use crate::arith::{
    discriminant, factor_integer, factor_rational_poly, is_prime, padic_valuation, resultant,
    squarefree_decomposition, valuation_int, FpPoly, UniPoly, ZPoly,
};

/// Outcome of the mod-p squarefreeness test on a specialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// A model with unit leading coefficient is squarefree of full degree mod p.
    Unramified,
    /// No certificate found; `p` may or may not ramify.
    NotCertified,
    /// The reduction degenerates (leading coefficient vanishes mod p) and no other model helped.
    Inconclusive,
}

impl Verdict {
    pub fn is_unramified(self) -> bool {
        self == Verdict::Unramified
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadPrimes {
    #[serde(serialize_with = "ser::display_set")]
    pub primes: BTreeSet<BigInt>,
    /// False when some integer in the construction was not fully factored.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    pub nu: i64,
    pub branch: BranchPoint,
    /// Ramification index lcm at `branch`.
    pub e: u32,
    /// `e / gcd(e, ν)`; absent at bad primes and on conflicts.
    pub predicted_order: Option<u32>,
    pub bad: bool,
    /// Further branch points with positive ν at this prime.
    pub conflicts: Vec<BranchPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationReport {
    #[serde(serialize_with = "ser::display")]
    pub a: BigRational,
    #[serde(serialize_with = "ser::display_set")]
    pub bad_primes: BTreeSet<BigInt>,
    #[serde(serialize_with = "ser::display_keys")]
    pub per_prime: BTreeMap<BigInt, PrimeReport>,
    #[serde(serialize_with = "ser::display_keys")]
    pub evidence: BTreeMap<BigInt, Verdict>,
    pub complete: bool,
}

impl SpecializationReport {
    /// Good primes predicted to ramify.
    pub fn ramified_primes(&self) -> BTreeSet<BigInt> {
        self.per_prime
            .iter()
            .filter(|(_, r)| r.predicted_order.is_some_and(|o| o > 1))
            .map(|(p, _)| p.clone())
            .collect()
    }
}

fn check_prime(p: &BigInt) -> Result<u64, BeckmannError> {
    match p.to_u64() {
        Some(v) if v < (1 << 63) && is_prime(p) => Ok(v),
        _ => Err(BeckmannError::BadPrime(p.to_string())),
    }
}

/// `I_p(a, bp)`. At `∞` this is `max(0, −v_p(a))`, or `v_p(1/a)` when `signed_at_infinity`.
/// Algebraic points use the primitive integral minimal polynomial.
pub fn intersection_multiplicity(
    a: &BigRational,
    bp: &BranchPoint,
    p: &BigInt,
    signed_at_infinity: bool,
) -> Result<i64, BeckmannError> {
    check_prime(p)?;
    let value = match bp {
        BranchPoint::Rational(b) => a - b,
        BranchPoint::Algebraic(h) => h.to_primitive().1.to_uni().eval(a),
        BranchPoint::Infinity => {
            if a.is_zero() {
                return Ok(0);
            }
            let v = padic_valuation(a, p)?;
            return Ok(if signed_at_infinity { -v } else { (-v).max(0) });
        }
    };
    if value.is_zero() {
        return Err(BeckmannError::IsBranchPoint(bp.to_string()));
    }
    Ok(padic_valuation(&value, p)?)
}

/// Union of the primes of the inputs; the flag reports complete factorization.
pub(crate) fn prime_support<'a>(ints: impl IntoIterator<Item = &'a BigInt>) -> (BTreeSet<BigInt>, bool) {
    let mut primes = BTreeSet::new();
    let mut complete = true;
    for n in ints {
        if n.is_zero() || n.abs().is_one() {
            continue;
        }
        let f = factor_integer(n);
        complete &= f.complete;
        primes.extend(f.primes());
    }
    (primes, complete)
}

fn small_primes_upto(n: usize) -> impl Iterator<Item = BigInt> {
    (2..=n as u64)
        .filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .map(BigInt::from)
}

/// A conservative superset of the primes where the inertia prediction may fail: primes of
/// the group order (all primes up to the degree without a hint), of every coefficient, of
/// the content and leading coefficient of `disc_X f`, of the discriminant of its radical,
/// of pairwise resultants of its irreducible factors and of its resultant with `lc_X f`.
pub fn bad_prime_superset(c: &Cover) -> Result<BadPrimes, BeckmannError> {
    let f = c.defining_poly();
    let mut ints: Vec<BigInt> = Vec::new();
    let mut primes = BTreeSet::new();
    match c.group_hint() {
        Some(h) => ints.push(BigInt::from(h.order)),
        None => primes.extend(small_primes_upto(c.degree())),
    }
    for (_, coeff) in f.terms() {
        ints.push(coeff.numer().clone());
        ints.push(coeff.denom().clone());
    }
    let disc = f.disc_x()?;
    let (cont, dz) = disc.to_primitive();
    ints.push(cont.numer().clone());
    ints.push(cont.denom().clone());
    ints.push(dz.lc());
    if disc.deg() >= 1 {
        let sqf = squarefree_decomposition(&disc)?;
        let radical = sqf.radical();
        let (_, rz) = radical.to_primitive();
        ints.push(rz.lc());
        if radical.deg() >= 2 {
            ints.push(discriminant(&rz.to_uni())?.to_integer());
        }
        let factors = factor_rational_poly(&radical)?.factors;
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                let (_, a) = factors[i].0.to_primitive();
                let (_, b) = factors[j].0.to_primitive();
                ints.push(resultant(&a.to_uni(), &b.to_uni())?.to_integer());
            }
        }
        let lc = f.lc_x();
        if lc.deg() >= 1 {
            let (_, lz) = lc.to_primitive();
            ints.push(resultant(&lz.to_uni(), &rz.to_uni())?.to_integer());
        }
    }
    let (found, complete) = prime_support(&ints);
    primes.extend(found);
    Ok(BadPrimes { primes, complete })
}

/// Integer whose prime divisors are the candidates for `I_p(a, bp) > 0`.
fn contact_integer(a: &BigRational, bp: &BranchPoint) -> BigInt {
    match bp {
        BranchPoint::Rational(b) => (a - b).numer().clone(),
        BranchPoint::Algebraic(h) => h.to_primitive().1.eval_homogeneous(a),
        BranchPoint::Infinity => a.denom().clone(),
    }
}

pub fn predict_inertia(c: &Cover, a: &BigRational) -> Result<SpecializationReport, BeckmannError> {
    let rt = ramification_indices(c)?;
    let points: Vec<BranchPoint> = rt.entries.iter().map(|e| e.point.clone()).collect();
    Cover::ensure_not_branch(&points, a)?;
    let bad = bad_prime_superset(c)?;
    let contacts: Vec<BigInt> = rt.entries.iter().map(|e| contact_integer(a, &e.point)).collect();
    let (candidates, complete) = prime_support(&contacts);
    let mut per_prime = BTreeMap::new();
    let mut evidence = BTreeMap::new();
    for p in candidates {
        let mut hits = Vec::new();
        for entry in &rt.entries {
            let nu = intersection_multiplicity(a, &entry.point, &p, false)?;
            if nu > 0 {
                hits.push((nu, entry));
            }
        }
        let Some(&(nu, entry)) = hits.first() else {
            continue;
        };
        let is_bad = bad.primes.contains(&p);
        let conflicts: Vec<BranchPoint> = hits[1..].iter().map(|(_, e)| e.point.clone()).collect();
        let predicted_order = (!is_bad && conflicts.is_empty())
            .then(|| entry.e / entry.e.gcd(&(nu as u32)));
        per_prime.insert(
            p.clone(),
            PrimeReport { nu, branch: entry.point.clone(), e: entry.e, predicted_order, bad: is_bad, conflicts },
        );
        if check_prime(&p).is_ok() {
            evidence.insert(p.clone(), unramified_check(c, a, &p)?);
        }
    }
    Ok(SpecializationReport {
        a: a.clone(),
        bad_primes: bad.primes,
        per_prime,
        evidence,
        complete: complete && bad.complete,
    })
}

/// Primitive integral model of `f(a, X)`.
pub(crate) fn specialized_model(c: &Cover, a: &BigRational) -> ZPoly {
    c.defining_poly().specialize_t(a).to_primitive().1
}

pub fn specialization_discriminant(c: &Cover, a: &BigRational) -> Result<BigRational, BeckmannError> {
    let g = c.defining_poly().specialize_t(a);
    if g.deg() < 1 {
        return Err(BeckmannError::IsBranchPoint(a.to_string()));
    }
    let d = discriminant(&g)?;
    if d.is_zero() {
        return Err(BeckmannError::IsBranchPoint(a.to_string()));
    }
    Ok(d)
}

fn squarefree_full_degree(h: &ZPoly, p: u64) -> bool {
    let hp = FpPoly::from_zpoly(h, p);
    hp.deg() == h.deg() && hp.is_squarefree()
}

fn reversed(g: &ZPoly) -> Option<ZPoly> {
    (!g.coeff(0).is_zero()).then(|| ZPoly::new(g.coeffs().iter().rev().cloned().collect()))
}

/// Searches models `g(c + p^j·Y)/p^v` (and the same for the reversed polynomial) with unit
/// leading coefficient that are squarefree of full degree mod `p`; such a model has the same
/// splitting field and a discriminant prime to `p`.
fn shifted_certificate(g: &ZPoly, p: u64) -> bool {
    const MAX_SHIFT_MODULUS: u64 = 125;
    let pb = BigInt::from(p);
    let models: Vec<ZPoly> = std::iter::once(g.clone()).chain(reversed(g)).collect();
    for (idx, model) in models.iter().enumerate() {
        if idx > 0 && !(&model.lc() % &pb).is_zero() && squarefree_full_degree(model, p) {
            return true;
        }
        let uni = model.to_uni();
        let mut pj = p;
        while pj <= MAX_SHIFT_MODULUS {
            for c in 0..pj {
                let lin = UniPoly::from_ints(&[c as i64, pj as i64]);
                let shifted = ZPoly::new(uni.compose(&lin).coeffs().iter().map(|x| x.to_integer()).collect());
                let v = shifted
                    .coeffs()
                    .iter()
                    .filter(|x| !x.is_zero())
                    .map(|x| valuation_int(x, &pb))
                    .min()
                    .unwrap_or(0);
                if valuation_int(&shifted.lc(), &pb) != v {
                    continue;
                }
                let h = shifted.div_scalar(&Pow::pow(&pb, v));
                if squarefree_full_degree(&h, p) {
                    return true;
                }
            }
            pj *= p;
        }
    }
    false
}

/// Sufficient test for `p` unramified in the splitting field of `f(a, X)`.
pub fn unramified_check(c: &Cover, a: &BigRational, p: &BigInt) -> Result<Verdict, BeckmannError> {
    let pv = check_prime(p)?;
    let g = specialized_model(c, a);
    if g.deg() < 1 {
        return Ok(Verdict::Inconclusive);
    }
    let degenerate = (&g.lc() % p).is_zero();
    if !degenerate && squarefree_full_degree(&g, pv) {
        return Ok(Verdict::Unramified);
    }
    if pv <= 5 && shifted_certificate(&g, pv) {
        return Ok(Verdict::Unramified);
    }
    Ok(if degenerate { Verdict::Inconclusive } else { Verdict::NotCertified })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn x2_minus_t() -> Cover {
        Cover::parse("poly\n0 2 1\n1 0 -1\n").unwrap()
    }

    #[test]
    fn multiplicities() {
        let p3 = BigInt::from(3);
        assert_eq!(intersection_multiplicity(&q(1, 3), &BranchPoint::rational(0), &p3, false).unwrap(), -1);
        assert_eq!(intersection_multiplicity(&q(10, 1), &BranchPoint::rational(1), &p3, false).unwrap(), 2);
        let a = q(2 * 729, 125);
        assert_eq!(intersection_multiplicity(&a, &BranchPoint::Infinity, &BigInt::from(5), false).unwrap(), 3);
        assert_eq!(intersection_multiplicity(&q(25, 1), &BranchPoint::Infinity, &BigInt::from(5), true).unwrap(), -2);
        assert!(intersection_multiplicity(&q(1, 1), &BranchPoint::rational(1), &p3, false).is_err());
        assert!(intersection_multiplicity(&q(1, 1), &BranchPoint::rational(0), &BigInt::from(4), false).is_err());
        let h = BranchPoint::Algebraic(UniPoly::from_ints(&[1, 0, 1]));
        // a = 2: 2² + 1 = 5
        assert_eq!(intersection_multiplicity(&q(2, 1), &h, &BigInt::from(5), false).unwrap(), 1);
    }

    #[test]
    fn bad_primes_small_covers() {
        assert_eq!(bad_prime_superset(&x2_minus_t()).unwrap().primes, BTreeSet::from([BigInt::from(2)]));
        let c = Cover::parse("poly\ngroup S3 6\n0 3 1\n1 0 -1\n").unwrap();
        let bad = bad_prime_superset(&c).unwrap().primes;
        assert!(bad.contains(&BigInt::from(2)) && bad.contains(&BigInt::from(3)));
    }

    #[test]
    fn predictions_for_square_root_cover() {
        let c = x2_minus_t();
        let r = predict_inertia(&c, &q(12, 1)).unwrap();
        let p3 = &r.per_prime[&BigInt::from(3)];
        assert_eq!((p3.nu, p3.predicted_order), (1, Some(2)));
        assert!(r.per_prime[&BigInt::from(2)].bad);
        let r = predict_inertia(&c, &q(9, 1)).unwrap();
        let p3 = &r.per_prime[&BigInt::from(3)];
        assert_eq!((p3.nu, p3.predicted_order), (2, Some(1)));
        assert!(predict_inertia(&c, &q(0, 1)).is_err());
    }

    #[test]
    fn mod_p_checks() {
        let c = x2_minus_t();
        assert_eq!(unramified_check(&c, &q(5, 1), &BigInt::from(7)).unwrap(), Verdict::Unramified);
        assert_eq!(unramified_check(&c, &q(7, 1), &BigInt::from(7)).unwrap(), Verdict::NotCertified);
        // 9 = 3²: the model (3Y)² − 9 = 9(Y² − 1) certifies
        assert_eq!(unramified_check(&c, &q(9, 1), &BigInt::from(3)).unwrap(), Verdict::Unramified);
        // Q(√5) is unramified at 2, Q(√3) is not
        assert_eq!(unramified_check(&c, &q(5, 1), &BigInt::from(2)).unwrap(), Verdict::Unramified);
        assert_eq!(unramified_check(&c, &q(3, 1), &BigInt::from(2)).unwrap(), Verdict::NotCertified);
        // tX² − 1 degenerates at p = a; Q(√2) and Q(√3) ramify there
        let c2 = Cover::parse("poly\n1 2 1\n0 0 -1\n").unwrap();
        assert_eq!(unramified_check(&c2, &q(2, 1), &BigInt::from(2)).unwrap(), Verdict::Inconclusive);
        assert_eq!(unramified_check(&c2, &q(3, 1), &BigInt::from(3)).unwrap(), Verdict::Inconclusive);
        assert_eq!(unramified_check(&c2, &q(3, 1), &BigInt::from(5)).unwrap(), Verdict::Unramified);
        assert!(unramified_check(&c, &q(5, 1), &BigInt::from(6)).is_err());
        assert_eq!(specialization_discriminant(&c, &q(5, 1)).unwrap(), q(20, 1));
    }
}
