//! Multifactor quadratic Hensel lifting over `Z/p^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{FpPoly, ZPoly};

/// Polynomial over `Z/m`, coefficients in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModPoly {
    pub(crate) c: Vec<BigInt>,
}

impl ModPoly {
    pub(crate) fn new(mut c: Vec<BigInt>, m: &BigInt) -> Self {
        for x in c.iter_mut() {
            *x = x.mod_floor(m);
        }
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ModPoly { c }
    }

    fn from_z(f: &ZPoly, m: &BigInt) -> Self {
        Self::new(f.coeffs().to_vec(), m)
    }

    fn from_fp(f: &FpPoly, m: &BigInt) -> Self {
        Self::new(f.coeffs().iter().map(|&x| BigInt::from(x)).collect(), m)
    }

    fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add(&self, o: &ModPoly, m: &BigInt) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect(), m)
    }

    fn sub(&self, o: &ModPoly, m: &BigInt) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect(), m)
    }

    pub(crate) fn mul(&self, o: &ModPoly, m: &BigInt) -> ModPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return ModPoly { c: Vec::new() };
        }
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out, m)
    }

    /// Division by a monic polynomial.
    fn div_rem_monic(&self, d: &ModPoly, m: &BigInt) -> (ModPoly, ModPoly) {
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (ModPoly { c: Vec::new() }, self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mod_floor(m);
            if !c.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q, m), Self::new(r, m))
    }

    fn scale(&self, k: &BigInt, m: &BigInt) -> ModPoly {
        Self::new(self.c.iter().map(|x| x * k).collect(), m)
    }

    /// Symmetric representative in `(−m/2, m/2]`.
    pub(crate) fn to_symmetric(&self, m: &BigInt) -> ZPoly {
        let half: BigInt = m / 2;
        ZPoly::new(
            self.c
                .iter()
                .map(|x| if x > &half { x - m } else { x.clone() })
                .collect(),
        )
    }
}

/// One quadratic step: `f ≡ g·h (mod m)` with `h` monic and `s·g + t·h ≡ 1`, lifted to `m²`.
fn lift_step(
    f: &ZPoly,
    g: &ModPoly,
    h: &ModPoly,
    s: &ModPoly,
    t: &ModPoly,
    m2: &BigInt,
) -> (ModPoly, ModPoly, ModPoly, ModPoly) {
    let fm = ModPoly::from_z(f, m2);
    let e = fm.sub(&g.mul(h, m2), m2);
    let (q, r) = s.mul(&e, m2).div_rem_monic(h, m2);
    let g2 = g.add(&t.mul(&e, m2), m2).add(&q.mul(g, m2), m2);
    let h2 = h.add(&r, m2);
    let one = ModPoly::new(vec![BigInt::one()], m2);
    let b = s.mul(&g2, m2).add(&t.mul(&h2, m2), m2).sub(&one, m2);
    let (c, d) = s.mul(&b, m2).div_rem_monic(&h2, m2);
    let s2 = s.sub(&d, m2);
    let t2 = t.sub(&t.mul(&b, m2), m2).sub(&c.mul(&g2, m2), m2);
    (g2, h2, s2, t2)
}

/// Lifts `f ≡ lc(f)·∏ uᵢ (mod p)` to monic factors modulo `p^(2^j) ≥ bound`.
/// Returns the modulus reached and the lifted factors in input order.
pub(crate) fn multifactor_lift(
    f: &ZPoly,
    factors: &[FpPoly],
    p: u64,
    bound: &BigInt,
) -> (BigInt, Vec<ModPoly>) {
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    let mut steps = 0u32;
    while &m < bound {
        m = &m * &m;
        steps += 1;
    }
    let lifted = lift_tree(f, factors, p, steps);
    (m, lifted)
}

fn lift_tree(f: &ZPoly, factors: &[FpPoly], p: u64, steps: u32) -> Vec<ModPoly> {
    let pb = BigInt::from(p);
    if factors.len() == 1 {
        // f ≡ lc·u; the monic lift is lc⁻¹·f mod the final modulus
        let mut m = pb.clone();
        for _ in 0..steps {
            m = &m * &m;
        }
        let lc = f.lc().mod_floor(&m);
        let inv = lc.modinv(&m).expect("lc invertible");
        return vec![ModPoly::from_z(f, &m).scale(&inv, &m)];
    }
    let k = factors.len() / 2;
    let (left, right) = factors.split_at(k);
    let gp = left.iter().fold(FpPoly::one(p), |a, b| a.mul(b)).scale(FpPoly::from_zpoly(f, p).lc());
    let hp = right.iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let (_, sp, tp) = gp.ext_gcd(&hp);
    let mut m = pb.clone();
    let mut g = ModPoly::from_fp(&gp, &m);
    let mut h = ModPoly::from_fp(&hp, &m);
    let mut s = ModPoly::from_fp(&sp, &m);
    let mut t = ModPoly::from_fp(&tp, &m);
    for _ in 0..steps {
        let m2 = &m * &m;
        (g, h, s, t) = lift_step(f, &g, &h, &s, &t, &m2);
        m = m2;
    }
    let gz = g.to_symmetric(&m);
    let hz = h.to_symmetric(&m);
    let mut out = lift_tree(&gz, left, p, steps);
    out.extend(lift_tree(&hz, right, p, steps));
    out
}
