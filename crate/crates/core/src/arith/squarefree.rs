//! Squarefree decomposition over the rationals (Yun's algorithm).

use num_rational::BigRational;

use super::{ArithError, UniPoly};

/// `f = unit · ∏ gᵢ^mᵢ` with monic, squarefree, pairwise coprime `gᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: BigRational,
    /// Ordered by increasing multiplicity.
    pub factors: Vec<(UniPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, (g, m)| &acc * &g.pow(*m))
    }

    /// Product of the distinct factors.
    pub fn radical(&self) -> UniPoly {
        self.factors.iter().fold(UniPoly::one(), |acc, (g, _)| &acc * g)
    }
}

pub fn squarefree_decomposition(f: &UniPoly) -> Result<SquarefreeDecomposition, ArithError> {
    let unit = f.lc().ok_or(ArithError::ZeroPolynomial)?.clone();
    let monic = f.monic();
    let mut factors = Vec::new();
    if monic.is_constant() {
        return Ok(SquarefreeDecomposition { unit, factors });
    }
    let d = monic.derivative();
    let a0 = monic.gcd(&d);
    let mut b = monic.div_exact(&a0).expect("gcd divides");
    let c = d.div_exact(&a0).expect("gcd divides");
    let mut dd = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = b.gcd(&dd);
        let next_b = b.div_exact(&a).expect("gcd divides");
        let c = dd.div_exact(&a).expect("gcd divides");
        dd = &c - &next_b.derivative();
        if !a.is_constant() {
            factors.push((a, i));
        }
        b = next_b;
        i += 1;
    }
    Ok(SquarefreeDecomposition { unit, factors })
}
