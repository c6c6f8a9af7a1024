//! Exact integer, rational and polynomial arithmetic.

mod bipoly;
mod factor;
mod hensel;
mod integer;
mod interp;
mod modp;
mod poly;
mod resultant;
mod squarefree;
mod valuation;
mod zpoly;

pub use bipoly::BiPoly;
pub use factor::{certify_irreducible, factor_rational_poly, Factorization, FACTOR_DEGREE_CAP};
pub use integer::{factor_integer, factor_integer_with_budget, is_prime, IntFactorization, DEFAULT_RHO_BUDGET};
pub use interp::interpolate;
pub use modp::FpPoly;
pub use poly::{parse_rational, UniPoly};
pub use resultant::{discriminant, resultant, zresultant};
pub use squarefree::{squarefree_decomposition, SquarefreeDecomposition};
pub use valuation::{padic_valuation, valuation_int};
pub use zpoly::ZPoly;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
}
