//! Resultants by the subresultant remainder sequence, and discriminants.
//!
//! Sign convention: the Sylvester determinant with the coefficients of `f` in the
//! first rows, so `res(f, g) = lc(f)^deg g · lc(g)^deg f · ∏ (αᵢ − βⱼ)` over roots `αᵢ`
//! of `f` and `βⱼ` of `g`. For example `res(X − 1, X − 2) = −1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::{ArithError, UniPoly, ZPoly};

/// Resultant of integer polynomials.
pub fn zresultant(f: &ZPoly, g: &ZPoly) -> Result<BigInt, ArithError> {
    if f.is_zero() || g.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let (df, dg) = (f.deg() as u32, g.deg() as u32);
    if df == 0 {
        return Ok(Pow::pow(f.lc(), dg));
    }
    if dg == 0 {
        return Ok(Pow::pow(g.lc(), df));
    }
    let a_cont = f.content();
    let b_cont = g.content();
    let mut a = f.div_scalar(&a_cont);
    let mut b = g.div_scalar(&b_cont);
    let t = Pow::pow(&a_cont, dg) * Pow::pow(&b_cont, df);
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if df % 2 == 1 && dg % 2 == 1 {
            s = -s;
        }
    }
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.deg() - b.deg()) as u32;
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let divisor = &gg * Pow::pow(&h, delta);
        b = r.div_scalar(&divisor);
        gg = a.lc();
        h = match delta {
            0 => h,
            1 => gg.clone(),
            _ => Pow::pow(&gg, delta) / Pow::pow(&h, delta - 1),
        };
        if b.deg() == 0 {
            let da = a.deg() as u32;
            let lb = b.lc();
            let hh = if da == 0 {
                h
            } else {
                Pow::pow(&lb, da) / Pow::pow(&h, da - 1)
            };
            return Ok(s * t * hh);
        }
    }
}

/// Resultant over the rationals, computed on cleared integer polynomials.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<BigRational, ArithError> {
    if f.is_zero() || g.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let (cf, pf) = f.to_primitive();
    let (cg, pg) = g.to_primitive();
    let r = zresultant(&pf, &pg)?;
    let df = f.deg() as i32;
    let dg = g.deg() as i32;
    Ok(BigRational::from_integer(r) * Pow::pow(&cf, dg) * Pow::pow(&cg, df))
}

/// `(−1)^(n(n−1)/2) · res(f, f′) / lc(f)`.
pub fn discriminant(f: &UniPoly) -> Result<BigRational, ArithError> {
    let n = f.degree().ok_or(ArithError::ZeroPolynomial)?;
    if n == 0 {
        return Err(ArithError::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(BigRational::one());
    }
    let r = resultant(f, &f.derivative())?;
    let sign = if (n * (n - 1) / 2).is_even() { 1 } else { -1 };
    Ok(r / f.lc().expect("nonzero") * BigRational::from_integer(sign.into()))
}
