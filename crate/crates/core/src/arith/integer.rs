//! Primality and integer factorization.

use num_bigint::{BigInt, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const TRIAL_LIMIT: u64 = 1_000_000;
/// Default Pollard iteration budget per cofactor.
pub const DEFAULT_RHO_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntFactorization {
    /// Ascending primes with multiplicities.
    #[serde(serialize_with = "ser_factors")]
    pub factors: Vec<(BigInt, u32)>,
    /// Unfactored remainder; `1` when complete.
    #[serde(serialize_with = "ser_big")]
    pub cofactor: BigInt,
    pub complete: bool,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_factors<S: serde::Serializer>(f: &[(BigInt, u32)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(f.len()))?;
    for (p, e) in f {
        seq.serialize_element(&(p.to_string(), e))?;
    }
    seq.end()
}

impl IntFactorization {
    pub fn primes(&self) -> Vec<BigInt> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn multiplicity(&self, p: &BigInt) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }

    pub fn product(&self) -> BigInt {
        self.factors
            .iter()
            .fold(self.cofactor.clone(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }
}

fn small_is_prime(n: u64) -> Option<bool> {
    if n < 2 {
        return Some(false);
    }
    for p in WITNESSES {
        if n == p {
            return Some(true);
        }
        if n % p == 0 {
            return Some(false);
        }
    }
    None
}

fn strong_probable_prime(n: &BigInt, a: &BigInt) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Deterministic below `3.3·10^24` via the first 13 prime bases; beyond that 64 extra
/// seeded random bases.
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64().and_then(small_is_prime) {
        return small;
    }
    if n.to_u64().is_none() {
        for p in WITNESSES {
            if (n % p).is_zero() {
                return false;
            }
        }
    }
    if !WITNESSES.iter().all(|&a| strong_probable_prime(n, &BigInt::from(a))) {
        return false;
    }
    let limit: BigInt = "3317044064679887385961981".parse().expect("literal");
    if n < &limit {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7072_696d);
    let two = BigInt::from(2);
    let top = n - 2;
    (0..64).all(|_| strong_probable_prime(n, &rng.gen_bigint_range(&two, &top)))
}

pub fn factor_integer(n: &BigInt) -> IntFactorization {
    factor_integer_with_budget(n, DEFAULT_RHO_BUDGET)
}

/// Trial division to `10^6`, then Pollard–Brent with `budget` iterations per attempt.
/// Factors `|n|`; `n = 0` yields an incomplete result with cofactor 0.
pub fn factor_integer_with_budget(n: &BigInt, budget: u64) -> IntFactorization {
    let mut m = n.abs();
    if m.is_zero() {
        return IntFactorization { factors: Vec::new(), cofactor: m, complete: false };
    }
    let mut found: Vec<BigInt> = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && BigInt::from(d) * BigInt::from(d) <= m {
        while (&m % d).is_zero() {
            m /= d;
            found.push(d.into());
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut leftovers = Vec::new();
    if m > BigInt::one() {
        if m <= BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) || is_prime(&m) {
            found.push(m);
        } else {
            let mut stack = vec![m];
            while let Some(x) = stack.pop() {
                if is_prime(&x) {
                    found.push(x);
                    continue;
                }
                if let Some(r) = perfect_power_root(&x) {
                    let k = count_power(&x, &r);
                    for _ in 0..k {
                        stack.push(r.clone());
                    }
                    continue;
                }
                match pollard_brent(&x, budget) {
                    Some(f) => {
                        let g = &x / &f;
                        stack.push(f);
                        stack.push(g);
                    }
                    None => leftovers.push(x),
                }
            }
        }
    }
    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    let cofactor = leftovers.iter().fold(BigInt::one(), |a, b| a * b);
    IntFactorization { complete: leftovers.is_empty(), factors, cofactor }
}

fn perfect_power_root(x: &BigInt) -> Option<BigInt> {
    let bits = x.bits() as u32;
    (2..=bits.max(2)).find_map(|k| {
        let r = x.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == *x && r > BigInt::one()).then_some(r)
    })
}

fn count_power(x: &BigInt, r: &BigInt) -> u32 {
    let mut k = 0;
    let mut y = x.clone();
    while (&y % r).is_zero() && y > BigInt::one() {
        y /= r;
        k += 1;
    }
    k
}

fn pollard_brent(n: &BigInt, budget: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let one = BigInt::one();
    for c in 1u64..=8 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut iters = 0u64;
        let m = 128u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            iters += r;
            if iters > budget {
                break;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g > one && &g < n {
            return Some(g);
        }
        if iters > budget {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn primality() {
        assert!(is_prime(&big(45513961)));
        assert!(is_prime(&big(634397)));
        assert!(!is_prime(&big(1)));
        assert!(!is_prime(&big(3215031751)));
        let m61 = (BigInt::one() << 61) - 1;
        assert!(is_prime(&m61));
        let big_prime: BigInt = "170141183460469231731687303715884105727".parse().unwrap();
        assert!(is_prime(&big_prime));
        assert!(!is_prime(&(&big_prime * &m61)));
    }

    #[test]
    fn factor_7920() {
        let f = factor_integer(&big(7920));
        assert_eq!(f.factors, vec![(big(2), 4), (big(3), 2), (big(5), 1), (big(11), 1)]);
        assert!(f.complete);
        assert_eq!(f.cofactor, BigInt::one());
    }

    #[test]
    fn square_offsets() {
        let p = big(45513961);
        let sq = &p * &p;
        let f = factor_integer(&sq);
        assert_eq!(f.factors, vec![(p.clone(), 2)]);
        // p² − k² = (p − k)(p + k)
        for k in [1i64, 2, 3] {
            let n = &sq - k * k;
            let f = factor_integer(&n);
            assert!(f.complete);
            assert_eq!(f.product(), n);
            assert!(!is_prime(&n));
            for d in [&p - k, &p + k] {
                for (q, e) in factor_integer(&d).factors {
                    assert!(f.multiplicity(&q) >= e);
                }
            }
        }
        let semi = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64) * BigInt::from(1_000_000_007u64);
        let f = factor_integer(&semi);
        assert_eq!(f.factors.len(), 3);
        assert!(f.complete);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn product_identity(n in 1u64..u64::MAX, k in 1u64..1000) {
            let x = BigInt::from(n) * BigInt::from(k);
            let f = factor_integer(&x);
            prop_assert_eq!(f.product(), x);
            for (p, _) in &f.factors {
                prop_assert!(is_prime(p));
            }
        }
    }
}
