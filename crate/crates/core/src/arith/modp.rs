//! Polynomials over a prime field `F_p` with `p < 2^63`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{UniPoly, ZPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod_u64(a, p - 2, p)
}

pub(crate) fn reduce_bigint(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn from_zpoly(f: &ZPoly, p: u64) -> Self {
        Self::new(p, f.coeffs().iter().map(|c| reduce_bigint(c, p)).collect())
    }

    /// Reduction of a rational polynomial; `None` when a denominator vanishes mod `p`.
    pub fn from_uni(f: &UniPoly, p: u64) -> Option<Self> {
        let mut out = Vec::with_capacity(f.coeffs().len());
        for c in f.coeffs() {
            let d = reduce_bigint(c.denom(), p);
            if d == 0 {
                return None;
            }
            out.push(mulmod(reduce_bigint(c.numer(), p), inv_mod(d, p), p));
        }
        Some(Self::new(p, out))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn to_zpoly(&self) -> ZPoly {
        ZPoly::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| (self.c.get(i).copied().unwrap_or(0) + p - o.c.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, out.into_iter().map(|x| x as u64).collect())
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        Self::new(self.p, self.c.iter().map(|&x| mulmod(x, k, self.p)).collect())
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    /// Panics on a zero divisor.
    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let li = inv_mod(d.lc(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulmod(r[k + dd], li, p);
            if c != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulmod(c, dc, p)) % p;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g` monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = inv_mod(r0.lc(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        Self::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// Nonconstant and coprime to its derivative.
    pub fn is_squarefree(&self) -> bool {
        if self.deg() < 1 {
            return !self.is_zero();
        }
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).is_one()
    }

    /// Resultant over `F_p` in the Sylvester convention.
    pub fn resultant(&self, o: &FpPoly) -> u64 {
        let p = self.p;
        if self.is_zero() || o.is_zero() {
            return 0;
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = 1u64;
        loop {
            let (da, db) = (a.deg() as u64, b.deg() as u64);
            if db == 0 {
                return mulmod(acc, powmod_u64(b.lc(), da, p), p);
            }
            if da == 0 {
                return mulmod(acc, powmod_u64(a.lc(), db, p), p);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return 0;
            }
            if (da * db) % 2 == 1 {
                acc = (p - acc) % p;
            }
            acc = mulmod(acc, powmod_u64(b.lc(), da - r.deg() as u64, p), p);
            a = b;
            b = r;
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_squarefree(&self) -> Vec<FpPoly> {
        let p = self.p;
        let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x9e37_79b9);
        let mut out = Vec::new();
        for (g, d) in self.monic().distinct_degree() {
            equal_degree(&g, d, &mut rng, &mut out);
        }
        out.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
        out
    }

    /// `(product of all irreducible factors of degree d, d)` for a monic squarefree input.
    pub fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut f = self.clone();
        let mut out = Vec::new();
        let x = Self::x(p);
        let mut h = x.rem(&f);
        let pe = BigUint::from(p);
        let mut d = 1;
        while f.deg() >= 2 * d as isize {
            h = h.powmod(&pe, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_one() {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.deg() > 0 {
            let k = f.deg() as usize;
            out.push((f, k));
        }
        out
    }
}

fn equal_degree(g: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = g.deg() as usize;
    if n == d {
        out.push(g.monic());
        return;
    }
    let p = g.p;
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() < 1 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a² + … + a^(2^(nd−1)) for characteristic 2
            let mut t = a.rem(g);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(g);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.powmod(&exp, g).sub(&FpPoly::one(p))
        };
        let h = g.gcd(&b);
        if h.deg() > 0 && h.deg() < g.deg() {
            let rest = g.div_rem(&h).0;
            equal_degree(&h, d, rng, out);
            equal_degree(&rest, d, rng, out);
            return;
        }
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[p={}]({})", self.p, self.to_zpoly())
    }
}
