//! Backtrack search over a stabilizer chain for elements `h` with `h g h⁻¹ = x`.
//!
//! The base is chosen along the cycles of `g`, so fixing the image of one point of a
//! cycle forces the images of the rest of it.

use super::chain::StabChain;
use super::{PermGroup, Permutation};

struct Search<'a> {
    chain: StabChain,
    g: &'a Permutation,
    x: &'a Permutation,
    /// `determined[i][a]`: every element of `G⁽ⁱ⁾` fixes `a`.
    determined: Vec<Vec<bool>>,
    /// Pairs `(a, g(a))` first fully determined at level `i`.
    new_pairs: Vec<Vec<usize>>,
    cyc_g: Vec<usize>,
    cyc_x: Vec<usize>,
}

fn cycle_lengths(p: &Permutation) -> Vec<usize> {
    let mut len = vec![1; p.degree()];
    for c in p.cycles() {
        for &pt in &c {
            len[pt] = c.len();
        }
    }
    len
}

impl<'a> Search<'a> {
    fn new(group: &PermGroup, g: &'a Permutation, x: &'a Permutation) -> Self {
        let mut cycles = g.cycles_with_fixed();
        cycles.sort_by(|a, b| b.len().cmp(&a.len()));
        let prefix: Vec<usize> = cycles.into_iter().flatten().collect();
        let chain = group.chain_with_base(&prefix);
        let n = group.degree();
        let nlev = chain.levels.len();
        let mut determined = Vec::with_capacity(nlev + 1);
        for i in 0..=nlev {
            let mut d = vec![true; n];
            if i < nlev {
                for s in &chain.levels[i].gens {
                    for (a, slot) in d.iter_mut().enumerate() {
                        if s.apply(a) != a {
                            *slot = false;
                        }
                    }
                }
            }
            determined.push(d);
        }
        let mut new_pairs = Vec::with_capacity(nlev + 1);
        for i in 0..=nlev {
            let d = &determined[i];
            let pairs: Vec<usize> = (0..n)
                .filter(|&a| {
                    let b = g.apply(a);
                    d[a] && d[b] && (i == 0 || !(determined[i - 1][a] && determined[i - 1][b]))
                })
                .collect();
            new_pairs.push(pairs);
        }
        Search {
            chain,
            g,
            x,
            determined,
            new_pairs,
            cyc_g: cycle_lengths(g),
            cyc_x: cycle_lengths(x),
        }
    }

    fn consistent(&self, i: usize, p: &Permutation) -> bool {
        self.new_pairs[i]
            .iter()
            .all(|&a| p.apply(self.g.apply(a)) == self.x.apply(p.apply(a)))
    }

    /// Candidate images `γ` in the level-`i` orbit for the coset `p·G⁽ⁱ⁾`.
    fn candidates(&self, i: usize, p: &Permutation) -> Vec<usize> {
        let lvl = &self.chain.levels[i];
        let b = lvl.base;
        let pred = self.g.inverse_apply(b);
        if self.determined[i][pred] {
            let want = self.x.apply(p.apply(pred));
            let gamma = p.inverse_apply(want);
            return if lvl.orbit_pos[gamma] != u32::MAX {
                vec![gamma]
            } else {
                vec![]
            };
        }
        lvl.orbit
            .iter()
            .copied()
            .filter(|&gamma| self.cyc_x[p.apply(gamma)] == self.cyc_g[b])
            .collect()
    }

    fn find_one(&self, i: usize, p: &Permutation) -> Option<Permutation> {
        if !self.consistent(i, p) {
            return None;
        }
        if i == self.chain.levels.len() {
            return Some(p.clone());
        }
        let lvl = &self.chain.levels[i];
        for gamma in self.candidates(i, p) {
            let q = p.mul(lvl.transversal[gamma].as_ref().unwrap());
            if let Some(h) = self.find_one(i + 1, &q) {
                return Some(h);
            }
        }
        None
    }

    /// Generators of the centralizer, valid when `x == g`.
    fn centralizer_gens(&self) -> Vec<Permutation> {
        let n = self.chain.degree();
        let id = Permutation::identity(n);
        let mut gens: Vec<Permutation> = Vec::new();
        for i in (0..self.chain.levels.len()).rev() {
            let lvl = &self.chain.levels[i];
            let b = lvl.base;
            let mut processed = vec![b];
            let mut seen = orbit_union(&processed, &gens, n);
            for gamma in self.candidates(i, &id) {
                if seen[gamma] {
                    continue;
                }
                processed.push(gamma);
                let q = lvl.transversal[gamma].as_ref().unwrap();
                if let Some(h) = self.find_one(i + 1, q) {
                    gens.push(h);
                }
                seen = orbit_union(&processed, &gens, n);
            }
        }
        gens
    }
}

fn orbit_union(points: &[usize], gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    for &p in points {
        if !seen[p] {
            seen[p] = true;
            stack.push(p);
        }
    }
    while let Some(pt) = stack.pop() {
        for s in gens {
            let img = s.apply(pt);
            if !seen[img] {
                seen[img] = true;
                stack.push(img);
            }
        }
    }
    seen
}

/// Some `h ∈ G` with `h g h⁻¹ = x`, if one exists.
pub(crate) fn conjugator(group: &PermGroup, g: &Permutation, x: &Permutation) -> Option<Permutation> {
    if g.cycle_type() != x.cycle_type() {
        return None;
    }
    let search = Search::new(group, g, x);
    search.find_one(0, &Permutation::identity(group.degree()))
}

pub(crate) fn centralizer(group: &PermGroup, g: &Permutation) -> PermGroup {
    let search = Search::new(group, g, g);
    let gens = search.centralizer_gens();
    group.subgroup(&gens).expect("same degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            degree,
            gens.iter().map(|s| Permutation::parse(degree, s).unwrap()).collect(),
        )
        .unwrap()
    }

    fn brute_centralizer_order(g: &PermGroup, x: &Permutation) -> u128 {
        g.elements().filter(|h| h.mul(x) == x.mul(h)).count() as u128
    }

    #[test]
    fn centralizers_match_brute_force() {
        let groups = [
            group(5, &["(1,2)", "(1,2,3,4,5)"]),
            group(6, &["(1,2,3)", "(2,3,4,5,6)"]),
            group(8, &["(1,2,3,4)(5,6,7,8)", "(1,5)(2,6)", "(1,3)"]),
            group(7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]),
        ];
        for g in &groups {
            for x in g.elements().step_by(7) {
                let c = centralizer(g, &x);
                assert_eq!(c.order(), brute_centralizer_order(g, &x), "x = {x}");
                assert!(c.generators().iter().all(|h| h.mul(&x) == x.mul(h)));
                assert!(c.is_subgroup_of(g));
            }
        }
    }

    #[test]
    fn conjugators_found_or_refuted() {
        let a5 = group(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let c = Permutation::parse(5, "(1,2,3,4,5)").unwrap();
        let sq = c.pow(2);
        assert!(conjugator(&a5, &c, &sq).is_none());
        let s5 = group(5, &["(1,2)", "(1,2,3,4,5)"]);
        let h = conjugator(&s5, &c, &sq).unwrap();
        assert_eq!(c.conjugate_by(&h), sq);
        let y = Permutation::parse(5, "(1,3)(2,5)").unwrap();
        let x = Permutation::parse(5, "(1,2)(3,4)").unwrap();
        let h = conjugator(&a5, &x, &y).unwrap();
        assert_eq!(x.conjugate_by(&h), y);
        assert!(a5.contains(&h).unwrap());
    }
}
