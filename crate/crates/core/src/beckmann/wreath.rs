//! The two-parameter family `∏(T − αᵢ) − u·∏(T − βᵢ)` used for wreath-product covers.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::ser;
use super::BeckmannError;
use crate::arith::{squarefree_decomposition, BiPoly, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathCover {
    /// The polynomial in `t = u` and `X = T`.
    #[serde(serialize_with = "ser::display")]
    pub poly: BiPoly,
    /// `disc_T` as a polynomial in `u`.
    #[serde(serialize_with = "ser::display")]
    pub discriminant: UniPoly,
    pub squarefree_disc: bool,
    /// A factor whose square divides the discriminant, when it is not squarefree.
    #[serde(serialize_with = "ser::display_opt")]
    pub square_factor: Option<UniPoly>,
}

fn distinct(xs: &[BigRational]) -> bool {
    xs.iter().enumerate().all(|(i, x)| !xs[..i].contains(x))
}

pub fn wreath_cover_poly(
    alphas: &[BigRational],
    betas: &[BigRational],
) -> Result<WreathCover, BeckmannError> {
    if alphas.is_empty() || alphas.len() != betas.len() {
        return Err(BeckmannError::InvalidCover("need equally many alphas and betas".into()));
    }
    if !distinct(alphas) || !distinct(betas) {
        return Err(BeckmannError::InvalidCover("repeated root".into()));
    }
    if alphas.iter().any(|a| betas.contains(a)) {
        return Err(BeckmannError::InvalidCover("alphas and betas overlap".into()));
    }
    let a = UniPoly::from_roots(alphas);
    let b = UniPoly::from_roots(betas);
    let poly = BiPoly::linear_in_t(&a, &-&b);
    let discriminant = if alphas.len() == 1 {
        UniPoly::constant(BigRational::one())
    } else {
        poly.disc_x()?
    };
    let square_factor = if discriminant.deg() >= 1 {
        squarefree_decomposition(&discriminant)?
            .factors
            .into_iter()
            .find(|(_, m)| *m >= 2)
            .map(|(h, _)| h)
    } else {
        None
    };
    Ok(WreathCover { poly, discriminant, squarefree_disc: square_factor.is_none(), square_factor })
}
