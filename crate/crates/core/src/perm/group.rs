use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use super::chain::{ChainElements, ChainOptions, StabChain};
use super::{PermError, Permutation};

/// A finitely generated permutation group with a lazily built stabilizer chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::EmptyDegree);
        }
        if generators.is_empty() {
            return Err(PermError::EmptyGenerators);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// Group generated by `elems`, all of the same degree.
    pub fn generated_by(elems: &[Permutation]) -> Result<Self, PermError> {
        let first = elems.first().ok_or(PermError::EmptyGenerators)?;
        PermGroup::new(first.degree(), elems.to_vec())
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: vec![Permutation::identity(degree)],
            chain: OnceLock::new(),
        }
    }

    fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermGroup {
            degree,
            generators,
            chain: cell,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators, ChainOptions::default()))
    }

    /// A fresh chain with the given base prefix; the cached chain is untouched.
    pub fn chain_with_base(&self, prefix: &[usize]) -> StabChain {
        let opts = ChainOptions {
            base_prefix: prefix,
            target_order: None,
        };
        let mut gens = self.chain().strong_generators();
        if gens.is_empty() {
            gens.push(Permutation::identity(self.degree));
        }
        StabChain::new(self.degree, &gens, opts)
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool, PermError> {
        if g.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            });
        }
        Ok(self.chain().contains(g))
    }

    pub(crate) fn ensure_member(&self, g: &Permutation) -> Result<(), PermError> {
        if self.contains(g)? {
            Ok(())
        } else {
            Err(PermError::NotMember(g.to_string()))
        }
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    pub fn elements(&self) -> ChainElements<'_> {
        self.chain().elements()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            head += 1;
            for g in &self.generators {
                let img = g.apply(pt);
                if !seen[img] {
                    seen[img] = true;
                    orbit.push(img);
                }
            }
        }
        orbit
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orb = self.orbit(p);
                for &q in &orb {
                    seen[q] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.chain().contains(g))
    }

    /// Same set of elements.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Subgroup generated by `elems`; an empty list gives the trivial group.
    pub fn subgroup(&self, elems: &[Permutation]) -> Result<PermGroup, PermError> {
        for e in elems {
            if e.degree() != self.degree {
                return Err(PermError::DegreeMismatch {
                    left: self.degree,
                    right: e.degree(),
                });
            }
        }
        if elems.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        PermGroup::new(self.degree, elems.to_vec())
    }

    /// Smallest normal subgroup of `self` containing `elems`.
    pub fn normal_closure(&self, elems: &[Permutation]) -> Result<PermGroup, PermError> {
        for e in elems {
            self.ensure_member(e)?;
        }
        let opts = ChainOptions::default();
        let mut chain = StabChain::new(self.degree, &[], opts);
        let mut gens: Vec<Permutation> = Vec::new();
        for e in elems {
            if chain.extend(e, opts) {
                gens.push(e.clone());
            }
        }
        let target = self.order();
        let mut i = 0;
        while i < gens.len() && chain.order() < target {
            for s in &self.generators {
                let c = gens[i].conjugate_by(s);
                if chain.extend(&c, opts) {
                    gens.push(c);
                }
            }
            i += 1;
        }
        Ok(PermGroup::with_chain(self.degree, gens, chain))
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms).expect("commutators are members")
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

/// Whether `gens` generate a group of order `target`.
///
/// When the generators lie in a group of that order this is a generation test; the
/// chain construction stops as soon as the partial order reaches `target`.
pub fn generates(degree: usize, gens: &[Permutation], target: u128) -> bool {
    let opts = ChainOptions {
        base_prefix: &[],
        target_order: Some(target),
    };
    StabChain::new(degree, gens, opts).order() >= target
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            degree,
            gens.iter().map(|s| Permutation::parse(degree, s).unwrap()).collect(),
        )
        .unwrap()
    }

    fn closure(g: &PermGroup) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(g.degree());
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for s in g.generators() {
                let y = s.mul(&x);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn symmetric_five() {
        assert_eq!(group(5, &["(1,2)", "(1,2,3,4,5)"]).order(), 120);
    }

    #[test]
    fn m11_order() {
        let g = group(11, &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"]);
        assert_eq!(g.order(), 7920);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut x = Permutation::identity(11);
            for _ in 0..15 {
                x = x.mul(&g.generators()[rng.gen_range(0..2)]);
            }
            assert!(g.contains(&x).unwrap());
        }
    }

    #[test]
    fn a5_membership() {
        let a5 = group(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        assert_eq!(a5.order(), 60);
        assert!(a5.contains(&Permutation::parse(5, "(1,2,3)").unwrap()).unwrap());
        assert!(!a5.contains(&Permutation::parse(5, "(1,2)").unwrap()).unwrap());
        assert!(a5.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn generated_small() {
        assert_eq!(PermGroup::generated_by(&[Permutation::identity(4)]).unwrap().order(), 1);
        assert_eq!(group(4, &["(1,2)", "(2,3)"]).order(), 6);
        assert!(PermGroup::generated_by(&[]).is_err());
    }

    #[test]
    fn a5_involutions_generate() {
        let a5 = group(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let invs: Vec<_> = a5.elements().filter(|g| g.order() == 2).collect();
        assert_eq!(invs.len(), 15);
        assert_eq!(PermGroup::generated_by(&invs).unwrap().order(), 60);
    }

    #[test]
    fn index_round_trip() {
        let g = group(6, &["(1,2,3,4,5,6)", "(1,2)"]);
        let chain = g.chain();
        for (i, x) in chain.elements().enumerate() {
            assert_eq!(chain.index_of(&x), Some(i as u64));
            assert_eq!(chain.element_at(i as u64), x);
        }
        let a6 = group(6, &["(1,2,3)", "(2,3,4,5,6)"]);
        assert_eq!(a6.chain().index_of(&Permutation::parse(6, "(1,2)").unwrap()), None);
    }

    #[test]
    fn elements_match_closure() {
        let g = group(7, &["(1,2,3)(4,5)", "(2,6,7)"]);
        let brute = closure(&g);
        let listed: HashSet<_> = g.elements().collect();
        assert_eq!(brute.len() as u128, g.order());
        assert_eq!(brute, listed);
    }

    #[test]
    fn normal_closures() {
        let a5 = group(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let n = a5.normal_closure(&[Permutation::parse(5, "(1,2,3)").unwrap()]).unwrap();
        assert_eq!(n.order(), 60);
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let n = s4.normal_closure(&[Permutation::parse(4, "(1,2)").unwrap()]).unwrap();
        assert_eq!(n.order(), 24);
        let n = s4.normal_closure(&[Permutation::parse(4, "(1,2)(3,4)").unwrap()]).unwrap();
        assert_eq!(n.order(), 4);
        assert_eq!(s4.normal_closure(&[Permutation::identity(4)]).unwrap().order(), 1);
        assert!(a5.normal_closure(&[Permutation::parse(5, "(1,2)").unwrap()]).is_err());
        assert_eq!(s4.derived_subgroup().order(), 12);
    }

    #[test]
    fn base_prefix_keeps_order() {
        let g = group(11, &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"]);
        let c = g.chain_with_base(&[10, 9, 8]);
        assert_eq!(c.base()[..3], [10, 9, 8]);
        assert_eq!(c.order(), 7920);
    }

    #[test]
    fn generation_test() {
        let s5 = [Permutation::parse(5, "(1,2)").unwrap(), Permutation::parse(5, "(1,2,3,4,5)").unwrap()];
        assert!(generates(5, &s5, 120));
        assert!(!generates(5, &s5[1..], 120));
    }
}
