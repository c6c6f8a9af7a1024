//! Permutations of `{0, .., degree - 1}` stored as image vectors.
//!
//! Points are 0-based internally. Cycle notation (parsing and display) is
//! 1-based, so `(1,2,3)` maps point 0 to point 1.

use std::fmt;

use num_integer::Integer;

use super::PermError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::EmptyDegree);
        }
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotBijection);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::EmptyDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(PermError::PointOutOfRange { point: pt, degree });
                }
                if touched[pt - 1] {
                    return Err(PermError::Parse(format!(
                        "point {pt} occurs in more than one cycle"
                    )));
                }
                touched[pt - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(PermError::PointOutOfRange { point: next, degree });
                }
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self, PermError> {
        let cycles = parse_cycles(text)?;
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Preimage of `point`; linear time.
    pub fn inverse_apply(&self, point: usize) -> usize {
        self.images
            .iter()
            .position(|&j| j as usize == point)
            .expect("point within degree")
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `a.compose(b)` is `a ∘ b`, i.e. the map `i ↦ a(b(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked `self ∘ other`.
    #[inline]
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&j| self.images[j as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.degree();
        let mut images = vec![0u32; n];
        for cycle in self.cycles_with_fixed() {
            let len = cycle.len() as i64;
            let shift = k.rem_euclid(len) as usize;
            for (idx, &pt) in cycle.iter().enumerate() {
                images[pt] = cycle[(idx + shift) % cycle.len()] as u32;
            }
        }
        Permutation { images }
    }

    /// `h ∘ self ∘ h⁻¹`: the permutation obtained by relabelling points through `h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[h.images[i] as usize] = h.images[j as usize];
        }
        Permutation { images }
    }

    /// All cycles including fixed points, each starting at its smallest point.
    pub fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Non-trivial cycles (0-based points).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    /// Cycle lengths (fixed points included), sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles_with_fixed().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles_with_fixed()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.cycles_with_fixed()
            .iter()
            .map(|c| c.len() - 1)
            .sum::<usize>()
            % 2
            == 0
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&i| self.images[i] as usize != i)
            .collect()
    }

    /// Canonical byte encoding of the image sequence, used as a hash key.
    pub fn key(&self) -> Box<[u8]> {
        if self.degree() <= 256 {
            self.images.iter().map(|&i| i as u8).collect()
        } else {
            self.images
                .iter()
                .flat_map(|&i| (i as u16).to_le_bytes())
                .collect()
        }
    }

    /// Inverse of [`Permutation::key`].
    pub fn from_key(degree: usize, key: &[u8]) -> Permutation {
        let images = if degree <= 256 {
            key.iter().map(|&b| b as u32).collect()
        } else {
            key.chunks_exact(2)
                .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32)
                .collect()
        };
        Permutation { images }
    }

    /// Extends to a larger degree, fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Moves every point up by `offset` inside a permutation of degree `degree`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[i + offset] = j + offset as u32;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        Permutation::mul(self, rhs)
    }
}

/// Splits disjoint-cycle notation into 1-based cycles.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(PermError::Parse("empty permutation".into()));
    }
    let mut cycles = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| PermError::Parse(format!("expected '(' in {text:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| PermError::Parse(format!("unclosed cycle in {text:?}")))?;
        let inner = &body[..close];
        if !inner.is_empty() {
            let cycle = inner
                .split(',')
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| PermError::Parse(format!("bad point {tok:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(cycle);
        }
        rest = &body[close + 1..];
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse(deg, s).unwrap()
    }

    #[test]
    fn transposition_squared_is_identity() {
        let t = p(2, "(1,2)");
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn three_cycle_squared() {
        let c = p(3, "(1,2,3)");
        assert_eq!(c.compose(&c).unwrap(), p(3, "(1,3,2)"));
    }

    #[test]
    fn compose_matches_pointwise_lookup() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let mut a: Vec<u32> = (0..7).collect();
            let mut b: Vec<u32> = (0..7).collect();
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            let pa = Permutation::from_images(a.clone()).unwrap();
            let pb = Permutation::from_images(b.clone()).unwrap();
            let c = pa.compose(&pb).unwrap();
            for i in 0..7 {
                assert_eq!(c.apply(i), a[b[i] as usize] as usize);
            }
        }
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            a.compose(&b),
            Err(PermError::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(p(5, "(1,2)(3,4,5)").order(), 6);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let g = p(9, "(1,5,2)(3,9)");
        assert_eq!(g.to_string(), "(1,5,2)(3,9)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert!(Permutation::parse(3, "(1,2)(2,3)").is_err());
        assert!(Permutation::parse(3, "(1,4)").is_err());
        assert!(Permutation::parse(3, "1,2").is_err());
    }

    #[test]
    fn pow_and_inverse() {
        let g = p(6, "(1,2,3,4)(5,6)");
        assert_eq!(g.pow(-1), g.inverse());
        assert_eq!(g.pow(4), Permutation::identity(6));
        assert_eq!(g.pow(2), g.compose(&g).unwrap());
        assert_eq!(g.pow(5), g);
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let g = p(4, "(1,2,3)");
        let h = p(4, "(1,4)");
        let c = g.conjugate_by(&h);
        assert_eq!(c, p(4, "(4,2,3)"));
        assert_eq!(c, h.mul(&g).mul(&h.inverse()));
    }

    #[test]
    fn keys_round_trip() {
        let g = p(300, "(1,300,7)");
        assert_eq!(Permutation::from_key(300, &g.key()), g);
        let h = p(9, "(2,9)");
        assert_eq!(Permutation::from_key(9, &h.key()), h);
    }
}
