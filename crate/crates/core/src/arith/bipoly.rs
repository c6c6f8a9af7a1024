//! Sparse bivariate polynomials in `t` and `X` over the rationals.
//!
//! File format: one term per line, `i j c` meaning `c·t^i·X^j` with `c` an integer or
//! `p/q`; blank lines and `#` comments are ignored.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::{interpolate, parse_rational, resultant, ArithError, UniPoly};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    /// `(i, j) ↦ coefficient of t^i X^j`, no zero entries.
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigRational)>) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    /// `a(X) + t·b(X)`.
    pub fn linear_in_t(a: &UniPoly, b: &UniPoly) -> Self {
        let mut out = Self::zero();
        for (j, c) in a.coeffs().iter().enumerate() {
            out.add_term(0, j as u32, c.clone());
        }
        for (j, c) in b.coeffs().iter().enumerate() {
            out.add_term(1, j as u32, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        let e = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn parse(text: &str) -> Result<Self, ArithError> {
        let mut out = Self::zero();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [i, j, c] = parts[..] else {
                return Err(ArithError::Parse(format!("line {}: expected `i j coeff`", n + 1)));
            };
            let bad = |s: &str| ArithError::Parse(format!("line {}: bad exponent {s:?}", n + 1));
            let i: u32 = i.parse().map_err(|_| bad(i))?;
            let j: u32 = j.parse().map_err(|_| bad(j))?;
            out.add_term(i, j, parse_rational(c)?);
        }
        Ok(out)
    }

    pub fn to_file_string(&self) -> String {
        self.terms
            .iter()
            .map(|((i, j), c)| format!("{i} {j} {c}\n"))
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn degree_t(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Coefficient of `X^j` as a polynomial in `t`.
    pub fn coeff_x(&self, j: u32) -> UniPoly {
        let d = self.degree_t().unwrap_or(0) as usize;
        let mut c = vec![BigRational::zero(); d + 1];
        for (&(i, jj), v) in &self.terms {
            if jj == j {
                c[i as usize] = v.clone();
            }
        }
        UniPoly::new(c)
    }

    /// Coefficient of `t^i` as a polynomial in `X`.
    pub fn coeff_t(&self, i: u32) -> UniPoly {
        let d = self.degree_x().unwrap_or(0) as usize;
        let mut c = vec![BigRational::zero(); d + 1];
        for (&(ii, j), v) in &self.terms {
            if ii == i {
                c[j as usize] = v.clone();
            }
        }
        UniPoly::new(c)
    }

    /// Leading coefficient in `X`, a polynomial in `t`.
    pub fn lc_x(&self) -> UniPoly {
        self.degree_x().map_or_else(UniPoly::zero, |n| self.coeff_x(n))
    }

    /// `f(a, X)`.
    pub fn specialize_t(&self, a: &BigRational) -> UniPoly {
        let n = self.degree_x().unwrap_or(0) as usize;
        let mut c = vec![BigRational::zero(); n + 1];
        for (&(i, j), v) in &self.terms {
            c[j as usize] += v * num_traits::pow(a.clone(), i as usize);
        }
        UniPoly::new(c)
    }

    pub fn derivative_x(&self) -> BiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * BigRational::from_integer(j.into()))),
        )
    }

    /// `res_X(self, other)` as a polynomial in `t`, by evaluation and interpolation.
    pub fn resultant_x(&self, other: &BiPoly) -> Result<UniPoly, ArithError> {
        let (n, m) = match (self.degree_x(), other.degree_x()) {
            (Some(n), Some(m)) => (n, m),
            _ => return Err(ArithError::ZeroPolynomial),
        };
        let bound = (m * self.degree_t().unwrap_or(0) + n * other.degree_t().unwrap_or(0)) as usize;
        let (la, lb) = (self.lc_x(), other.lc_x());
        let mut points = Vec::with_capacity(bound + 1);
        let mut k: i64 = 0;
        while points.len() <= bound {
            let t = BigRational::from_integer(k.into());
            k = if k >= 0 { -k - 1 } else { -k };
            if la.eval(&t).is_zero() || lb.eval(&t).is_zero() {
                continue;
            }
            let r = resultant(&self.specialize_t(&t), &other.specialize_t(&t))?;
            points.push((t, r));
        }
        Ok(interpolate(&points))
    }

    /// `disc_X(f) = (−1)^(n(n−1)/2)·res_X(f, f_X)/lc_X(f)` in `Q[t]`.
    pub fn disc_x(&self) -> Result<UniPoly, ArithError> {
        let n = self.degree_x().ok_or(ArithError::ZeroPolynomial)?;
        if n == 0 {
            return Err(ArithError::ConstantPolynomial);
        }
        if n == 1 {
            return Ok(UniPoly::one());
        }
        let r = self.resultant_x(&self.derivative_x())?;
        let r = if (n * (n - 1) / 2) % 2 == 0 { r } else { -&r };
        r.div_exact(&self.lc_x()).ok_or(ArithError::DivisionByZero)
    }

    /// Substitutes `t ↦ s(t)`.
    pub fn compose_t(&self, s: &UniPoly) -> BiPoly {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let st = s.pow(i).scale(c);
            for (k, v) in st.coeffs().iter().enumerate() {
                out.add_term(k as u32, j, v.clone());
            }
        }
        out
    }

    pub fn is_monic_in_x(&self) -> bool {
        self.lc_x().is_one()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(n) = self.degree_x() else {
            return f.write_str("0");
        };
        let mut first = true;
        for j in (0..=n).rev() {
            let c = self.coeff_x(j);
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let xs = match j {
                0 => String::new(),
                1 => "*X".into(),
                _ => format!("*X^{j}"),
            };
            write!(f, "({}){xs}", c.display_in("t"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}
