//! p-adic valuations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{is_prime, ArithError};

/// `v_p(n)` for a nonzero integer and `p ≥ 2`.
pub fn valuation_int(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

pub fn padic_valuation(x: &BigRational, p: &BigInt) -> Result<i64, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroValuation);
    }
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p.clone()));
    }
    Ok(valuation_int(x.numer(), p) as i64 - valuation_int(x.denom(), p) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn basics() {
        assert_eq!(padic_valuation(&q(1, 3), &3.into()), Ok(-1));
        assert_eq!(padic_valuation(&q(40, 1), &2.into()), Ok(3));
        assert_eq!(padic_valuation(&q(-250, 7), &5.into()), Ok(3));
        assert_eq!(padic_valuation(&q(0, 1), &2.into()), Err(ArithError::ZeroValuation));
        assert!(matches!(padic_valuation(&q(4, 1), &6.into()), Err(ArithError::NotPrime(_))));
    }
}
