//! Cover presentations and branch points.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::BeckmannError;
use crate::arith::{parse_rational, BiPoly, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupHint {
    pub name: String,
    pub order: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// `f(t, X) = 0`, separable in `X`.
    Poly(BiPoly),
    /// `t = p(x)/q(x)` with coprime `p`, `q`.
    Ratmap { p: UniPoly, q: UniPoly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    presentation: Presentation,
    group_hint: Option<GroupHint>,
}

/// A point of the `t`-line: a rational value, the conjugacy class of an algebraic value
/// given by its monic minimal polynomial, or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BranchPoint {
    Rational(BigRational),
    Algebraic(UniPoly),
    Infinity,
}

impl BranchPoint {
    pub fn rational(n: i64) -> Self {
        BranchPoint::Rational(BigRational::from_integer(n.into()))
    }

    /// Builds the point for a monic irreducible polynomial in `t`.
    pub fn from_irreducible(h: &UniPoly) -> Self {
        let h = h.monic();
        if h.deg() == 1 {
            BranchPoint::Rational(-h.coeff(0))
        } else {
            BranchPoint::Algebraic(h)
        }
    }

    /// Number of geometric points in the class.
    pub fn degree(&self) -> usize {
        match self {
            BranchPoint::Algebraic(h) => h.deg() as usize,
            _ => 1,
        }
    }

    /// Monic minimal polynomial for finite points.
    pub fn min_poly(&self) -> Option<UniPoly> {
        match self {
            BranchPoint::Rational(b) => Some(UniPoly::new(vec![-b.clone(), BigRational::one()])),
            BranchPoint::Algebraic(h) => Some(h.clone()),
            BranchPoint::Infinity => None,
        }
    }

    /// True when the rational value `a` is (a conjugate of) this point.
    pub fn contains(&self, a: &BigRational) -> bool {
        match self {
            BranchPoint::Rational(b) => a == b,
            BranchPoint::Algebraic(h) => h.eval(a).is_zero(),
            BranchPoint::Infinity => false,
        }
    }

    /// `inf`, `∞`, or a rational.
    pub fn parse(s: &str) -> Result<Self, BeckmannError> {
        match s.trim() {
            "inf" | "infinity" | "∞" | "oo" => Ok(BranchPoint::Infinity),
            other => parse_rational(other)
                .map(BranchPoint::Rational)
                .map_err(|_| BeckmannError::Parse(format!("bad point {other:?}"))),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            BranchPoint::Rational(_) => 0,
            BranchPoint::Algebraic(_) => 1,
            BranchPoint::Infinity => 2,
        }
    }
}

impl Ord for BranchPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BranchPoint::Rational(a), BranchPoint::Rational(b)) => a.cmp(b),
            (BranchPoint::Algebraic(a), BranchPoint::Algebraic(b)) => {
                (a.deg(), a.coeffs()).cmp(&(b.deg(), b.coeffs()))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for BranchPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BranchPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchPoint::Rational(b) => write!(f, "{b}"),
            BranchPoint::Algebraic(h) => write!(f, "root of {}", h.display_in("t")),
            BranchPoint::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for BranchPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

const PSL2_11_COVER: &str = include_str!("../../data/psl2_11_cover.txt");

/// Names accepted by [`Cover::builtin`].
pub const BUILTIN_COVERS: &[&str] = &["psl2_11"];

impl Cover {
    /// A cover shipped with the crate.
    pub fn builtin(name: &str) -> Option<Cover> {
        match name {
            "psl2_11" => Some(Cover::parse(PSL2_11_COVER).expect("bundled cover parses")),
            _ => None,
        }
    }

    pub fn poly(f: BiPoly) -> Result<Self, BeckmannError> {
        let n = f.degree_x().unwrap_or(0);
        if n == 0 {
            return Err(BeckmannError::InvalidCover("degree in X must be positive".into()));
        }
        if f.degree_t().unwrap_or(0) == 0 {
            return Err(BeckmannError::InvalidCover("polynomial does not involve t".into()));
        }
        if n >= 2 && f.disc_x()?.is_zero() {
            return Err(BeckmannError::Inseparable);
        }
        Ok(Cover { presentation: Presentation::Poly(f), group_hint: None })
    }

    pub fn ratmap(p: UniPoly, q: UniPoly) -> Result<Self, BeckmannError> {
        if q.is_zero() {
            return Err(BeckmannError::InvalidCover("zero denominator".into()));
        }
        if !p.gcd(&q).is_one() {
            return Err(BeckmannError::InvalidCover("numerator and denominator share a factor".into()));
        }
        if p.deg().max(q.deg()) < 1 {
            return Err(BeckmannError::InvalidCover("constant map".into()));
        }
        Ok(Cover { presentation: Presentation::Ratmap { p, q }, group_hint: None })
    }

    pub fn with_group_hint(mut self, name: &str, order: u128) -> Self {
        self.group_hint = Some(GroupHint { name: name.to_string(), order });
        self
    }

    /// Parses the cover file format: a `poly` or `ratmap` header line, an optional
    /// `group NAME ORDER` line, then `i j coeff` terms or two ascending coefficient lines.
    pub fn parse(text: &str) -> Result<Self, BeckmannError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| BeckmannError::Parse("empty file".into()))?;
        let mut hint = None;
        let mut body = Vec::new();
        for line in lines {
            if let Some(rest) = line.strip_prefix("group") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [name, order] = parts[..] else {
                    return Err(BeckmannError::Parse("expected `group NAME ORDER`".into()));
                };
                let order = order
                    .parse()
                    .map_err(|_| BeckmannError::Parse(format!("bad group order {order:?}")))?;
                hint = Some(GroupHint { name: name.to_string(), order });
            } else {
                body.push(line);
            }
        }
        let mut cover = match header {
            "poly" => Cover::poly(BiPoly::parse(&body.join("\n"))?)?,
            "ratmap" => {
                let [p, q] = body[..] else {
                    return Err(BeckmannError::Parse("ratmap needs exactly two coefficient lines".into()));
                };
                Cover::ratmap(UniPoly::parse_coeffs(p)?, UniPoly::parse_coeffs(q)?)?
            }
            other => return Err(BeckmannError::Parse(format!("unknown presentation {other:?}"))),
        };
        cover.group_hint = hint;
        Ok(cover)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn group_hint(&self) -> Option<&GroupHint> {
        self.group_hint.as_ref()
    }

    /// Degree of the cover: `deg_X f`, or `max(deg p, deg q)`.
    pub fn degree(&self) -> usize {
        match &self.presentation {
            Presentation::Poly(f) => f.degree_x().unwrap_or(0) as usize,
            Presentation::Ratmap { p, q } => p.deg().max(q.deg()) as usize,
        }
    }

    /// The polynomial `f(t, X)` whose roots in `X` are the fiber; `p(X) − t·q(X)` for maps.
    pub fn defining_poly(&self) -> BiPoly {
        match &self.presentation {
            Presentation::Poly(f) => f.clone(),
            Presentation::Ratmap { p, q } => BiPoly::linear_in_t(p, &-q),
        }
    }

    /// `(p, q)` with `t = p/q`, for maps and for polynomials of degree one in `t`.
    pub fn as_ratmap(&self) -> Option<(UniPoly, UniPoly)> {
        match &self.presentation {
            Presentation::Ratmap { p, q } => Some((p.clone(), q.clone())),
            Presentation::Poly(f) => {
                if f.degree_t() != Some(1) {
                    return None;
                }
                let (a, b) = (f.coeff_t(0), f.coeff_t(1));
                if b.is_zero() || !a.gcd(&b).is_one() {
                    return None;
                }
                // a + t·b = 0, so t = −a/b; normalize q to positive leading coefficient
                if b.lc().is_some_and(|c| c.is_negative()) {
                    Some((a, -&b))
                } else {
                    Some((-&a, b))
                }
            }
        }
    }

    /// Finite rational `a` lying over a branch point, checked against the given list.
    pub(crate) fn ensure_not_branch(
        points: &[BranchPoint],
        a: &BigRational,
    ) -> Result<(), BeckmannError> {
        match points.iter().find(|bp| bp.contains(a)) {
            Some(bp) => Err(BeckmannError::IsBranchPoint(bp.to_string())),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_formats() {
        let c = Cover::parse("# t = x^2\nratmap\n0 0 1\n1\n").unwrap();
        assert_eq!(c.degree(), 2);
        let c = Cover::parse("poly\ngroup S3 6\n0 3 1\n1 0 -1\n").unwrap();
        assert_eq!(c.group_hint().unwrap().order, 6);
        assert_eq!(c.as_ratmap(), Some((UniPoly::from_ints(&[0, 0, 0, 1]), UniPoly::one())));
        assert!(Cover::parse("ratmap\n0 1\n0 1\n").is_err());
        assert!(Cover::parse("curve\n").is_err());
        assert!(matches!(Cover::parse("poly\n0 2 1\n1 0 0\n"), Err(_)));
        // (X − t)² is inseparable
        assert_eq!(
            Cover::parse("poly\n0 2 1\n1 1 -2\n2 0 1\n"),
            Err(BeckmannError::Inseparable)
        );
    }

    #[test]
    fn branch_point_order_and_parse() {
        let mut v = vec![BranchPoint::Infinity, BranchPoint::rational(3), BranchPoint::rational(-1)];
        v.sort();
        assert_eq!(v[0], BranchPoint::rational(-1));
        assert_eq!(BranchPoint::parse("inf").unwrap(), BranchPoint::Infinity);
        assert_eq!(BranchPoint::parse("-2/4").unwrap().to_string(), "-1/2");
    }
}
