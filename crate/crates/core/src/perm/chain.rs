//! Base and strong generating set via deterministic Schreier–Sims.

use rand::Rng;

use super::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    /// Strong generators fixing every earlier base point.
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// `transversal[γ] = u` with `u(base) = γ`.
    pub transversal: Vec<Option<Permutation>>,
    pub transversal_inv: Vec<Option<Permutation>>,
    /// Position of each point in `orbit`, `u32::MAX` outside it.
    pub orbit_pos: Vec<u32>,
    /// Schreier generator pairs `(orbit index, gen index)` already confirmed, in γ-major order.
    checked: usize,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut lvl = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            transversal_inv: vec![None; degree],
            orbit_pos: vec![u32::MAX; degree],
            checked: 0,
        };
        lvl.rebuild(degree);
        lvl
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal_inv.iter_mut().for_each(|t| *t = None);
        self.orbit.clear();
        self.orbit_pos.iter_mut().for_each(|p| *p = u32::MAX);
        self.checked = 0;
        let id = Permutation::identity(degree);
        self.transversal[self.base] = Some(id.clone());
        self.transversal_inv[self.base] = Some(id);
        self.orbit_pos[self.base] = 0;
        self.orbit.push(self.base);
        let mut head = 0;
        while head < self.orbit.len() {
            let pt = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let img = s.apply(pt);
                if self.transversal[img].is_none() {
                    let u = s.mul(self.transversal[pt].as_ref().unwrap());
                    self.transversal_inv[img] = Some(u.inverse());
                    self.transversal[img] = Some(u);
                    self.orbit_pos[img] = self.orbit.len() as u32;
                    self.orbit.push(img);
                }
            }
        }
    }
}

/// A stabilizer chain `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ … ≥ 1` with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub(crate) levels: Vec<Level>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ChainOptions<'a> {
    /// Points to use as base points first, in order, when they are moved.
    pub base_prefix: &'a [usize],
    /// Stop as soon as the partial order reaches this value.
    pub target_order: Option<u128>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation], opts: ChainOptions<'_>) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let mut gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        gens.dedup();
        if gens.is_empty() {
            return chain;
        }
        let first = chain.first_base_point(&gens, opts.base_prefix);
        let mut lvl = Level::new(degree, first);
        lvl.gens = gens;
        lvl.rebuild(degree);
        chain.levels.push(lvl);
        chain.complete(opts);
        chain
    }

    fn first_base_point(&self, gens: &[Permutation], prefix: &[usize]) -> usize {
        if let Some(&p) = prefix.iter().find(|&&p| gens.iter().any(|g| g.apply(p) != p)) {
            return p;
        }
        // largest orbit first, smallest point on ties
        let mut seen = vec![false; self.degree];
        let mut best = (0usize, usize::MAX);
        for start in 0..self.degree {
            if seen[start] || gens.iter().all(|g| g.apply(start) == start) {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let pt = orbit[head];
                head += 1;
                for g in gens {
                    let img = g.apply(pt);
                    if !seen[img] {
                        seen[img] = true;
                        orbit.push(img);
                    }
                }
            }
            if orbit.len() > best.0 {
                best = (orbit.len(), start);
            }
        }
        best.1
    }

    fn new_base_point(&self, h: &Permutation, prefix: &[usize]) -> usize {
        let used = |p: usize| self.levels.iter().any(|l| l.base == p);
        if let Some(&p) = prefix.iter().find(|&&p| !used(p) && h.apply(p) != p) {
            return p;
        }
        h.cycles()
            .into_iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
            .map(|c| c[0])
            .expect("non-identity residue")
    }

    /// Adds `g` to the group, returning whether the group grew.
    pub fn extend(&mut self, g: &Permutation, opts: ChainOptions<'_>) -> bool {
        let (h, j) = self.sift(g, 0);
        if h.is_identity() {
            return false;
        }
        if j == self.levels.len() {
            let b = if self.levels.is_empty() {
                self.first_base_point(std::slice::from_ref(&h), opts.base_prefix)
            } else {
                self.new_base_point(&h, opts.base_prefix)
            };
            self.levels.push(Level::new(self.degree, b));
        }
        for lvl in &mut self.levels[..=j] {
            lvl.gens.push(h.clone());
            lvl.rebuild(self.degree);
        }
        self.complete(opts);
        true
    }

    fn complete(&mut self, opts: ChainOptions<'_>) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            if let Some(t) = opts.target_order {
                if self.order() >= t {
                    return;
                }
            }
            match self.next_failing_schreier(i as usize) {
                None => i -= 1,
                Some((h, j)) => {
                    let i_u = i as usize;
                    if j == self.levels.len() {
                        let b = self.new_base_point(&h, opts.base_prefix);
                        self.levels.push(Level::new(self.degree, b));
                    }
                    for lvl in &mut self.levels[i_u + 1..=j] {
                        lvl.gens.push(h.clone());
                        lvl.rebuild(self.degree);
                    }
                    i = j as isize;
                }
            }
        }
    }

    /// Scans Schreier generators of level `i`, returning the first whose sift fails.
    fn next_failing_schreier(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let ngens = self.levels[i].gens.len();
        let total = self.levels[i].orbit.len() * ngens;
        while self.levels[i].checked < total {
            let k = self.levels[i].checked;
            let lvl = &self.levels[i];
            let gamma = lvl.orbit[k / ngens];
            let s = &lvl.gens[k % ngens];
            let img = s.apply(gamma);
            let y = lvl.transversal_inv[img]
                .as_ref()
                .unwrap()
                .mul(&s.mul(lvl.transversal[gamma].as_ref().unwrap()));
            let (res, j) = self.sift(&y, i + 1);
            if !res.is_identity() {
                return Some((res, j));
            }
            self.levels[i].checked += 1;
        }
        None
    }

    /// Strips `g` through levels `from..`; returns the residue and the level where it stopped.
    pub(crate) fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for (k, lvl) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply(lvl.base);
            match &lvl.transversal_inv[beta] {
                Some(uinv) => g = uinv.mul(&g),
                None => return (g, k),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Mixed-radix index of `g` in `0..order()`, or `None` if `g` is not a member.
    /// Agrees with the enumeration order of [`StabChain::elements`].
    pub fn index_of(&self, g: &Permutation) -> Option<u64> {
        if g.degree() != self.degree {
            return None;
        }
        let mut g = g.clone();
        let mut idx: u64 = 0;
        for lvl in &self.levels {
            let beta = g.apply(lvl.base);
            let pos = lvl.orbit_pos[beta];
            if pos == u32::MAX {
                return None;
            }
            idx = idx * lvl.orbit.len() as u64 + pos as u64;
            g = lvl.transversal_inv[beta].as_ref().unwrap().mul(&g);
        }
        g.is_identity().then_some(idx)
    }

    /// Inverse of [`StabChain::index_of`].
    pub fn element_at(&self, mut idx: u64) -> Permutation {
        let mut digits = vec![0usize; self.levels.len()];
        for (k, lvl) in self.levels.iter().enumerate().rev() {
            let n = lvl.orbit.len() as u64;
            digits[k] = (idx % n) as usize;
            idx /= n;
        }
        let mut g = Permutation::identity(self.degree);
        for (lvl, &d) in self.levels.iter().zip(&digits) {
            g = g.mul(lvl.transversal[lvl.orbit[d]].as_ref().unwrap());
        }
        g
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .expect("group order exceeds u128")
        })
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for lvl in &self.levels {
            let pt = lvl.orbit[rng.gen_range(0..lvl.orbit.len())];
            g = g.mul(lvl.transversal[pt].as_ref().unwrap());
        }
        g
    }

    /// Every group element, each exactly once.
    pub fn elements(&self) -> ChainElements<'_> {
        ChainElements {
            chain: self,
            idx: vec![0; self.levels.len()],
            done: false,
        }
    }
}

pub struct ChainElements<'a> {
    chain: &'a StabChain,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for ChainElements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let mut g = Permutation::identity(self.chain.degree);
        for (lvl, &k) in self.chain.levels.iter().zip(&self.idx) {
            g = g.mul(lvl.transversal[lvl.orbit[k]].as_ref().unwrap());
        }
        // odometer, last level fastest
        let mut pos = self.idx.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.chain.levels[pos].orbit.len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(g)
    }
}
