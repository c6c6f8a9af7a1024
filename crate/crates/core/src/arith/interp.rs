//! Newton interpolation over the rationals.

use num_rational::BigRational;

use super::UniPoly;

/// The unique polynomial of degree `< points.len()` through the given points.
/// Abscissae must be distinct.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> UniPoly {
    let n = points.len();
    let mut coef: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &points[i].0 - &points[i - j].0;
            coef[i] = num / den;
        }
    }
    let mut out = UniPoly::zero();
    for i in (0..n).rev() {
        let lin = UniPoly::new(vec![-points[i].0.clone(), BigRational::from_integer(1.into())]);
        out = &(&out * &lin) + &UniPoly::constant(coef[i].clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cubic() {
        let f = UniPoly::from_ints(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..5)
            .map(|i| {
                let x = BigRational::new((i * 3 - 4).into(), 2.into());
                (x.clone(), f.eval(&x))
            })
            .collect();
        assert_eq!(interpolate(&pts), f);
    }
}
