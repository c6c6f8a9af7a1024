//! Univariate polynomials over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::UniPoly;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| x.into()).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive_part(&self) -> ZPoly {
        let c = self.content();
        if c.is_zero() {
            return Self::zero();
        }
        let c = if self.lc().is_negative() { -c } else { c };
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn to_uni(&self) -> UniPoly {
        UniPoly::from_bigints(&self.coeffs)
    }

    pub fn derivative(&self) -> ZPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Homogenized value `Σ cᵢ nⁱ d^(deg−i)` for `x = n/d`.
    pub fn eval_homogeneous(&self, x: &BigRational) -> BigInt {
        let n = x.numer();
        let d = x.denom();
        let deg = self.coeffs.len().saturating_sub(1);
        let mut acc = BigInt::zero();
        let mut npow = BigInt::one();
        let mut dpows = vec![BigInt::one(); deg + 1];
        for k in 1..=deg {
            dpows[k] = &dpows[k - 1] * d;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &npow * &dpows[deg - i];
            npow *= n;
        }
        acc
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Pseudo-remainder: `lc(d)^(deg self − deg d + 1)·self = q·d + r`.
    pub fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        let dd = d.coeffs.len() - 1;
        let l = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return self.clone();
        }
        let steps = r.len() - dd;
        for k in (0..steps).rev() {
            let top = r[k + dd].clone();
            for c in r.iter_mut() {
                *c *= &l;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &top * dc;
            }
        }
        r.truncate(dd);
        Self::new(r)
    }

    /// `self / d` when the quotient is integral and the remainder zero.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        if d.is_zero() {
            return None;
        }
        let dd = d.coeffs.len() - 1;
        let l = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return self.is_zero().then(ZPoly::zero);
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + dd].div_rem(&l);
            if !rem.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r[..dd].iter().all(Zero::is_zero).then(|| Self::new(q))
    }

    pub fn div_scalar(&self, c: &BigInt) -> ZPoly {
        Self::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    /// Euclidean norm rounded up.
    pub fn norm2_ceil(&self) -> BigInt {
        let s: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let r = s.sqrt();
        if &r * &r == s {
            r
        } else {
            r + 1
        }
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_uni())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let a = ZPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&ZPoly::from_ints(&[1, 1])), Some(ZPoly::from_ints(&[-1, 1])));
        assert_eq!(a.div_exact(&ZPoly::from_ints(&[1, 2])), None);
        assert_eq!(ZPoly::from_ints(&[2, 4]).div_exact(&ZPoly::from_ints(&[1, 2])), Some(ZPoly::from_ints(&[2])));
    }

    #[test]
    fn pseudo_remainder() {
        let a = ZPoly::from_ints(&[1, 0, 1]);
        let b = ZPoly::from_ints(&[1, 2]);
        // 4(X²+1) = (2X−1)(2X+1) + 5
        assert_eq!(a.pseudo_rem(&b), ZPoly::from_ints(&[5]));
    }

    #[test]
    fn homogeneous_value() {
        let f = ZPoly::from_ints(&[1, 0, 1]);
        let x = BigRational::new(2.into(), 3.into());
        assert_eq!(f.eval_homogeneous(&x), BigInt::from(13));
    }
}
