//! Factorization over the rationals: good prime, Hensel lifting, subset recombination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::hensel::{multifactor_lift, ModPoly};
use super::{squarefree_decomposition, ArithError, FpPoly, UniPoly, ZPoly};

pub const FACTOR_DEGREE_CAP: usize = 64;

/// `f = unit · ∏ gᵢ^mᵢ` with monic irreducible `gᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigRational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, (g, m)| &acc * &g.pow(*m))
    }

    /// Rational roots, from the linear factors.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        self.factors
            .iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| -g.coeff(0))
            .collect()
    }
}

pub fn factor_rational_poly(f: &UniPoly) -> Result<Factorization, ArithError> {
    let degree = f.degree().ok_or(ArithError::ZeroPolynomial)?;
    if degree > FACTOR_DEGREE_CAP {
        return Err(ArithError::DegreeCap { degree, cap: FACTOR_DEGREE_CAP });
    }
    let sqf = squarefree_decomposition(f)?;
    let mut factors = Vec::new();
    for (g, m) in &sqf.factors {
        let (_, prim) = g.to_primitive();
        for h in factor_squarefree_z(&prim) {
            factors.push((h.to_uni().monic(), *m));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        (a.deg(), a.coeffs(), ma).cmp(&(b.deg(), b.coeffs(), mb))
    });
    Ok(Factorization { unit: sqf.unit, factors })
}

fn small_primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Irreducible factors of a primitive squarefree integer polynomial.
fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    if f.coeff(0).is_zero() {
        let x = ZPoly::from_ints(&[0, 1]);
        let rest = f.div_exact(&x).expect("x divides").primitive_part();
        let mut out = vec![x];
        out.extend(factor_squarefree_z(&rest));
        return out;
    }
    let lc = f.lc();
    let p = small_primes_from(2 * n as u64 + 1)
        .find(|&p| {
            !(&lc % BigInt::from(p)).is_zero() && FpPoly::from_zpoly(f, p).is_squarefree()
        })
        .expect("a good prime exists for a squarefree polynomial");
    let fp = FpPoly::from_zpoly(f, p);
    let ups = fp.factor_squarefree();
    if ups.len() == 1 {
        return vec![f.clone()];
    }
    let bound = BigInt::from(2) * lc.abs() * Pow::pow(BigInt::from(2), n as u32) * f.norm2_ceil() + 1;
    let (m, lifted) = multifactor_lift(f, &ups, p, &bound);
    recombine(f.clone(), lifted, &m)
}

fn recombine(mut f: ZPoly, mut lifted: Vec<ModPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = ModPoly::new(vec![f.lc()], m);
            let g = idx
                .iter()
                .fold(lc, |acc, &i| acc.mul(&lifted[i], m))
                .to_symmetric(m)
                .primitive_part();
            if let Some(q) = f.div_exact(&g) {
                out.push(g);
                f = q;
                for &i in idx.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        s += 1;
    }
    if f.deg() > 0 {
        out.push(f.primitive_part());
    }
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducibility certificate: a prime modulo which `f` stays irreducible, or
/// for degree ≤ 3 the absence of rational roots.
pub fn certify_irreducible(f: &UniPoly) -> bool {
    let (_, z) = f.to_primitive();
    let n = z.deg();
    if n <= 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let lc = z.lc();
    if n <= 3 {
        return !has_rational_root(&z);
    }
    small_primes_from(2).take(200).any(|p| {
        if (&lc % BigInt::from(p)).is_zero() {
            return false;
        }
        let fp = FpPoly::from_zpoly(&z, p);
        fp.is_squarefree() && fp.factor_squarefree().len() == 1
    })
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

fn has_rational_root(z: &ZPoly) -> bool {
    if z.coeff(0).is_zero() {
        return true;
    }
    let nums = divisors(&z.coeff(0));
    let dens = divisors(&z.lc());
    nums.iter().any(|a| {
        dens.iter().any(|b| {
            [a.clone(), -a.clone()]
                .iter()
                .any(|a| z.eval_homogeneous(&BigRational::new(a.clone(), b.clone())).is_zero())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn x4_minus_1() {
        let f = UniPoly::from_ints(&[-1, 0, 0, 0, 1]);
        let fac = factor_rational_poly(&f).unwrap();
        let gs: Vec<_> = fac.factors.iter().map(|(g, m)| (g.clone(), *m)).collect();
        assert_eq!(
            gs,
            vec![
                (UniPoly::from_ints(&[-1, 1]), 1),
                (UniPoly::from_ints(&[1, 1]), 1),
                (UniPoly::from_ints(&[1, 0, 1]), 1)
            ]
        );
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn x5_minus_x_minus_1_irreducible() {
        let f = UniPoly::from_ints(&[-1, -1, 0, 0, 0, 1]);
        let fac = factor_rational_poly(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert!(certify_irreducible(&f));
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x⁴ − 10x² + 1 is irreducible but splits modulo every prime
        let f = UniPoly::from_ints(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_rational_poly(&f).unwrap().factors.len(), 1);
        let g = &f * &UniPoly::from_ints(&[-7, 0, 3]);
        let fac = factor_rational_poly(&g).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), g);
    }

    #[test]
    fn cap_and_zero() {
        assert!(factor_rational_poly(&UniPoly::zero()).is_err());
        let big = UniPoly::x().pow(65);
        assert!(matches!(factor_rational_poly(&big), Err(ArithError::DegreeCap { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn product_identity(polys in proptest::collection::vec(
            proptest::collection::vec(-5i64..6, 2..5), 1..4),
            mults in proptest::collection::vec(1u32..3, 3)) {
            let mut f = UniPoly::from_ints(&[3]);
            for (c, m) in polys.iter().zip(&mults) {
                let g = UniPoly::from_ints(c);
                if g.deg() < 1 { continue; }
                f = &f * &g.pow(*m);
            }
            prop_assume!(f.deg() >= 1);
            let fac = factor_rational_poly(&f).unwrap();
            prop_assert_eq!(fac.expand(), f);
            for (g, _) in &fac.factors {
                prop_assert!(certify_irreducible(g) || g.deg() >= 4);
            }
        }
    }
}
