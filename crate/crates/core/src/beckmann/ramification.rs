//! Branch points, ramification indices and pullbacks along `u ↦ t`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{BeckmannError, BranchPoint, Cover};
use crate::arith::{factor_rational_poly, squarefree_decomposition, BiPoly, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamEntry {
    pub point: BranchPoint,
    /// Ramification indices of the points over one geometric point, descending.
    pub indices: Vec<u32>,
    /// Least common multiple of the indices.
    pub e: u32,
}

impl RamEntry {
    pub fn new(point: BranchPoint, mut indices: Vec<u32>) -> Self {
        indices.sort_unstable_by(|a, b| b.cmp(a));
        let e = indices.iter().fold(1u32, |acc, &i| acc.lcm(&i));
        RamEntry { point, indices, e }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationType {
    /// Cover degree when known.
    pub degree: Option<usize>,
    pub entries: Vec<RamEntry>,
}

impl RamificationType {
    /// Number of geometric branch points.
    pub fn branch_point_count(&self) -> usize {
        self.entries.iter().map(|e| e.point.degree()).sum()
    }

    /// Index lcm per geometric branch point, ascending.
    pub fn flat(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.e, e.point.degree()))
            .collect();
        out.sort_unstable();
        out
    }

    /// `Σ (index − 1)` over all geometric points of all fibers.
    pub fn riemann_hurwitz_sum(&self) -> u64 {
        self.entries
            .iter()
            .map(|e| e.point.degree() as u64 * e.indices.iter().map(|&i| i as u64 - 1).sum::<u64>())
            .sum()
    }

    pub fn entry(&self, point: &BranchPoint) -> Option<&RamEntry> {
        self.entries.iter().find(|e| &e.point == point)
    }

    /// Parses `2,2,3@inf,5@0`. Unlabeled entries are placed at `1, 2, 3, …`, skipping
    /// labels already in use.
    pub fn parse_abstract(s: &str) -> Result<Self, BeckmannError> {
        let mut labeled = Vec::new();
        let mut unlabeled = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (e, at) = match item.split_once('@') {
                Some((e, at)) => (e, Some(BranchPoint::parse(at)?)),
                None => (item, None),
            };
            let e: u32 = e
                .trim()
                .parse()
                .map_err(|_| BeckmannError::Malformed(format!("bad index {e:?}")))?;
            if e == 0 {
                return Err(BeckmannError::Malformed("index 0".into()));
            }
            match at {
                Some(p) => labeled.push((p, e)),
                None => unlabeled.push(e),
            }
        }
        let used: BTreeSet<BranchPoint> = labeled.iter().map(|(p, _)| p.clone()).collect();
        if used.len() != labeled.len() {
            return Err(BeckmannError::Malformed("repeated branch point".into()));
        }
        let mut next = 1i64;
        let mut entries: Vec<RamEntry> = labeled.into_iter().map(|(p, e)| RamEntry::new(p, vec![e])).collect();
        for e in unlabeled {
            while used.contains(&BranchPoint::rational(next)) {
                next += 1;
            }
            entries.push(RamEntry::new(BranchPoint::rational(next), vec![e]));
            next += 1;
        }
        entries.sort_by(|a, b| a.point.cmp(&b.point));
        Ok(RamificationType { degree: None, entries })
    }
}

pub fn abhyankar_index(e1: u32, e2: u32) -> u32 {
    e1 / e1.gcd(&e2)
}

/// `Σ h_k p^k q^(deg h − k)`: vanishes exactly at the finite preimages of the roots of `h`.
fn homogenized(h: &UniPoly, p: &UniPoly, q: &UniPoly) -> UniPoly {
    let dh = h.deg().max(0) as u32;
    h.coeffs().iter().enumerate().fold(UniPoly::zero(), |acc, (k, c)| {
        let term = (&p.pow(k as u32) * &q.pow(dh - k as u32)).scale(c);
        &acc + &term
    })
}

/// Indices over one geometric root of `h`.
fn finite_fiber(p: &UniPoly, q: &UniPoly, n: usize, h: &UniPoly) -> Result<Vec<u32>, BeckmannError> {
    let dh = h.deg() as usize;
    let big_h = homogenized(h, p, q);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(&big_h)?.factors {
        let count = g.deg() as usize / dh;
        out.extend(std::iter::repeat_n(m, count));
    }
    let at_x_inf = (n * dh - big_h.deg() as usize) / dh;
    if at_x_inf > 0 {
        out.push(at_x_inf as u32);
    }
    Ok(out)
}

fn infinite_fiber(p: &UniPoly, q: &UniPoly) -> Result<Vec<u32>, BeckmannError> {
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(q)?.factors {
        out.extend(std::iter::repeat_n(m, g.deg() as usize));
    }
    if p.deg() > q.deg() {
        out.push((p.deg() - q.deg()) as u32);
    }
    Ok(out)
}

fn unsupported() -> BeckmannError {
    BeckmannError::Unsupported(
        "ramification indices need a rational map or a polynomial of degree one in t".into(),
    )
}

/// Ramification type of a genus-0 presentation `t = p(x)/q(x)`.
pub fn ramification_indices(c: &Cover) -> Result<RamificationType, BeckmannError> {
    let (p, q) = c.as_ratmap().ok_or_else(unsupported)?;
    let n = p.deg().max(q.deg()) as usize;
    let w = &(&p.derivative() * &q) - &(&p * &q.derivative());
    let mut candidates: BTreeSet<BranchPoint> = BTreeSet::new();
    let f = BiPoly::linear_in_t(&p, &-&q);
    for (g, _) in squarefree_decomposition(&w)?.factors {
        let g_fin = g.div_exact(&g.gcd(&q)).expect("gcd divides");
        if g_fin.deg() < 1 {
            continue;
        }
        let r = f.resultant_x(&BiPoly::linear_in_t(&g_fin, &UniPoly::zero()))?;
        for (h, _) in factor_rational_poly(&r)?.factors {
            candidates.insert(BranchPoint::from_irreducible(&h));
        }
    }
    if p.deg() <= q.deg() {
        let v = if p.deg() == q.deg() {
            p.lc().expect("nonzero") / q.lc().expect("nonzero")
        } else {
            BigRational::zero()
        };
        candidates.insert(BranchPoint::Rational(v));
    }
    let mut entries = Vec::new();
    for point in candidates {
        let h = point.min_poly().expect("finite");
        let fiber = finite_fiber(&p, &q, n, &h)?;
        if fiber.iter().any(|&i| i > 1) {
            entries.push(RamEntry::new(point, fiber));
        }
    }
    let inf = infinite_fiber(&p, &q)?;
    if inf.iter().any(|&i| i > 1) {
        entries.push(RamEntry::new(BranchPoint::Infinity, inf));
    }
    for e in entries.iter_mut() {
        let total: u32 = e.indices.iter().sum();
        e.indices.extend(std::iter::repeat_n(1, n - total as usize));
    }
    Ok(RamificationType { degree: Some(n), entries })
}

/// Branch points. Exact for rational maps and polynomials of degree one in `t`; otherwise
/// the roots of `disc_X f` and of `lc_X f`, plus `∞` when the discriminant or the leading
/// coefficient drops degree at `t = ∞` (a superset of the true branch locus).
pub fn branch_points(c: &Cover) -> Result<Vec<BranchPoint>, BeckmannError> {
    if c.as_ratmap().is_some() {
        return Ok(ramification_indices(c)?.entries.into_iter().map(|e| e.point).collect());
    }
    let f = c.defining_poly();
    let n = f.degree_x().expect("nonzero") as isize;
    let dt = f.degree_t().unwrap_or(0) as isize;
    let disc = f.disc_x()?;
    let lc = f.lc_x();
    let mut points = BTreeSet::new();
    for poly in [&disc, &lc] {
        if poly.deg() >= 1 {
            for (h, _) in factor_rational_poly(poly)?.factors {
                points.insert(BranchPoint::from_irreducible(&h));
            }
        }
    }
    if disc.deg() < (2 * n - 2) * dt || lc.deg() < dt {
        points.insert(BranchPoint::Infinity);
    }
    Ok(points.into_iter().collect())
}

/// Ramification type after pulling back along a cyclic map of degree `d` totally ramified
/// over the two given points.
///
/// With the points ordered so that `∞` (if present) is second, the map is `t = α + u^d`
/// for `(α, ∞)` and `t = (α + β·u^d)/(1 + u^d)` for finite `(α, β)`; the first point lies
/// under `u = 0`, the second under `u = ∞`.
pub fn pullback_type(
    rt: &RamificationType,
    d: u32,
    at: [&BranchPoint; 2],
) -> Result<RamificationType, BeckmannError> {
    if d < 2 {
        return Err(BeckmannError::Malformed("pullback degree must be at least 2".into()));
    }
    if at[0] == at[1] {
        return Err(BeckmannError::Malformed("distinguished points must differ".into()));
    }
    if at.iter().any(|p| matches!(p, BranchPoint::Algebraic(_))) {
        return Err(BeckmannError::Malformed("distinguished points must be rational or inf".into()));
    }
    let (first, second) = if *at[0] == BranchPoint::Infinity { (at[1], at[0]) } else { (at[0], at[1]) };
    let alpha = match first {
        BranchPoint::Rational(a) => a.clone(),
        _ => unreachable!("first point is finite"),
    };
    let one = BigRational::one();
    let ud = UniPoly::monomial(one.clone(), d as usize);
    // φ = num/den
    let (num, den) = match second {
        BranchPoint::Infinity => (&UniPoly::constant(alpha.clone()) + &ud, UniPoly::one()),
        BranchPoint::Rational(beta) => (
            &UniPoly::constant(alpha.clone()) + &ud.scale(beta),
            &UniPoly::one() + &ud,
        ),
        BranchPoint::Algebraic(_) => unreachable!(),
    };
    let mut entries = Vec::new();
    for entry in &rt.entries {
        if entry.point == *first || entry.point == *second {
            let point = if entry.point == *first { BranchPoint::rational(0) } else { BranchPoint::Infinity };
            let indices: Vec<u32> = entry
                .indices
                .iter()
                .flat_map(|&i| {
                    let g = i.gcd(&d);
                    std::iter::repeat_n(i / g, g as usize)
                })
                .collect();
            if indices.iter().any(|&i| i > 1) {
                entries.push(RamEntry::new(point, indices));
            }
            continue;
        }
        let pre = match &entry.point {
            BranchPoint::Infinity => den.clone(),
            finite => homogenized(&finite.min_poly().expect("finite"), &num, &den),
        };
        for (h, _) in factor_rational_poly(&pre)?.factors {
            entries.push(RamEntry::new(BranchPoint::from_irreducible(&h), entry.indices.clone()));
        }
    }
    entries.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(RamificationType { degree: rt.degree, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratmap(p: &[i64], q: &[i64]) -> Cover {
        Cover::ratmap(UniPoly::from_ints(p), UniPoly::from_ints(q)).unwrap()
    }

    #[test]
    fn square_map() {
        let c = ratmap(&[0, 0, 1], &[1]);
        let rt = ramification_indices(&c).unwrap();
        assert_eq!(branch_points(&c).unwrap(), vec![BranchPoint::rational(0), BranchPoint::Infinity]);
        assert_eq!(rt.entries[0].indices, vec![2]);
        assert_eq!(rt.entries[1].indices, vec![2]);
        assert_eq!(rt.riemann_hurwitz_sum(), 2);
    }

    #[test]
    fn double_critical_point() {
        // t = x³/(3x − 2): x = 0 has index 3 over 0, x = 1 index 2 over 1;
        // over ∞ the pole x = 2/3 is simple and x = ∞ has index 2.
        let c = ratmap(&[0, 0, 0, 1], &[-2, 3]);
        let rt = ramification_indices(&c).unwrap();
        let zero = rt.entry(&BranchPoint::rational(0)).unwrap();
        assert_eq!(zero.indices, vec![3]);
        let one = rt.entry(&BranchPoint::rational(1)).unwrap();
        assert_eq!(one.indices, vec![2, 1]);
        let inf = rt.entry(&BranchPoint::Infinity).unwrap();
        assert_eq!(inf.indices, vec![2, 1]);
        assert_eq!(rt.riemann_hurwitz_sum(), 4);
    }

    #[test]
    fn polynomial_discriminant_rule() {
        let c = Cover::parse("poly\n0 2 1\n2 0 -1\n1 0 1\n").unwrap();
        assert_eq!(
            branch_points(&c).unwrap(),
            vec![BranchPoint::rational(0), BranchPoint::rational(1), BranchPoint::Infinity]
        );
        assert!(ramification_indices(&c).is_err());
    }

    #[test]
    fn abhyankar() {
        assert_eq!(abhyankar_index(6, 2), 3);
        assert_eq!(abhyankar_index(4, 8), 1);
        assert_eq!(abhyankar_index(5, 3), 5);
    }

    #[test]
    fn pullback_examples() {
        let rt = RamificationType::parse_abstract("2,2,3@inf,5@0").unwrap();
        let out = pullback_type(&rt, 3, [&BranchPoint::rational(0), &BranchPoint::Infinity]).unwrap();
        assert_eq!(out.flat(), vec![2, 2, 2, 2, 2, 2, 5]);
        let rt = RamificationType::parse_abstract("2,2").unwrap();
        let out = pullback_type(&rt, 2, [&BranchPoint::rational(0), &BranchPoint::Infinity]).unwrap();
        assert_eq!(out.flat(), vec![2, 2, 2, 2]);
        let rt = RamificationType::parse_abstract("6@0,7@inf").unwrap();
        let out = pullback_type(&rt, 6, [&BranchPoint::rational(0), &BranchPoint::Infinity]).unwrap();
        assert_eq!(out.flat(), vec![7]);
        assert!(pullback_type(&rt, 1, [&BranchPoint::rational(0), &BranchPoint::Infinity]).is_err());
        assert!(RamificationType::parse_abstract("2@0,3@0").is_err());
    }

    #[test]
    fn pullback_of_real_cover_keeps_riemann_hurwitz() {
        // t = x³/(3x − 2) pulled back along t = u² at {0, ∞}
        let c = ratmap(&[0, 0, 0, 1], &[-2, 3]);
        let rt = ramification_indices(&c).unwrap();
        let out = pullback_type(&rt, 2, [&BranchPoint::rational(0), &BranchPoint::Infinity]).unwrap();
        // ∞ becomes unramified; 1 splits into ±1
        assert_eq!(out.branch_point_count(), 3);
        assert_eq!(out.riemann_hurwitz_sum(), 4);
        for e in &out.entries {
            assert_eq!(e.indices.iter().sum::<u32>(), 3);
        }
    }
}
