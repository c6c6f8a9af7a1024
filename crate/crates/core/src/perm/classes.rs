//! Conjugacy classes, centralizers and normalizers of cyclic subgroups.

use std::collections::HashSet;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::backtrack;
use super::{PermError, PermGroup, Permutation};

/// Largest class materialized by hashing when no element index is available.
const ORBIT_CAP: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassStrategy {
    /// Every element visited; class sizes are counts.
    Exact,
    /// Representatives found by random sampling; sizes are `|G| / |C_G(rep)|`.
    Randomized,
}

#[derive(Clone, Debug)]
pub struct ClassOptions {
    /// Largest group order handled by full enumeration.
    pub enumeration_cap: u128,
    /// Fall back to random sampling above the cap instead of failing.
    pub allow_randomized: bool,
    pub seed: u64,
    /// Classes up to this size carry their element list.
    pub materialize_cap: u128,
    pub max_samples: usize,
}

impl Default for ClassOptions {
    fn default() -> Self {
        ClassOptions {
            enumeration_cap: 2_000_000,
            allow_randomized: true,
            seed: 0x5eed,
            materialize_cap: 5_000,
            max_samples: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: Permutation,
    pub size: u128,
    pub elt_order: u64,
    pub cycle_type: Vec<usize>,
    pub centralizer_order: u128,
    pub elements: Option<Vec<Permutation>>,
}

/// The conjugacy classes of a group in canonical order.
///
/// Classes are sorted by element order, then size, then cycle type, then the
/// representative's image bytes.
#[derive(Clone, Debug)]
pub struct ClassTable {
    group: PermGroup,
    classes: Vec<ConjClass>,
    strategy: ClassStrategy,
    /// Class index per element index of the group's chain (exact strategy only).
    class_of_index: Option<Vec<u32>>,
}

impl ClassTable {
    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn strategy(&self) -> ClassStrategy {
        self.strategy
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Index of the class containing `g`, or `None` when `g ∉ G`.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        if let Some(table) = &self.class_of_index {
            let idx = self.group.chain().index_of(g)?;
            return Some(table[idx as usize] as usize);
        }
        if !self.group.chain().contains(g) {
            return None;
        }
        let order = g.order();
        let ct = g.cycle_type();
        self.classes.iter().position(|c| {
            c.elt_order == order
                && c.cycle_type == ct
                && backtrack::conjugator(&self.group, &c.rep, g).is_some()
        })
    }

    /// Elements of class `i`.
    pub fn members(&self, i: usize) -> Result<Vec<Permutation>, PermError> {
        let class = &self.classes[i];
        if let Some(el) = &class.elements {
            return Ok(el.clone());
        }
        if let Some(table) = &self.class_of_index {
            let chain = self.group.chain();
            return Ok(table
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c as usize == i)
                .map(|(idx, _)| chain.element_at(idx as u64))
                .collect());
        }
        if class.size > ORBIT_CAP {
            return Err(PermError::CapExceeded {
                order: class.size,
                cap: ORBIT_CAP,
            });
        }
        Ok(conjugation_orbit(&self.group, &class.rep))
    }

    /// Class of `rep_i^k`.
    pub fn power_class(&self, i: usize, k: i64) -> usize {
        self.class_of(&self.classes[i].rep.pow(k))
            .expect("powers stay in the group")
    }

    /// Whether class `i` is closed under all powers coprime to its element order.
    pub fn is_rational(&self, i: usize) -> bool {
        let n = self.classes[i].elt_order;
        (2..n)
            .filter(|k| k.gcd(&n) == 1)
            .all(|k| self.power_class(i, k as i64) == i)
    }

    pub fn center_order(&self) -> u128 {
        self.classes.iter().filter(|c| c.size == 1).count() as u128
    }

    pub fn with_order(&self, order: u64) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].elt_order == order)
            .collect()
    }

    /// Lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1u64, |acc, c| acc.lcm(&c.elt_order))
    }
}

fn conjugation_orbit(group: &PermGroup, rep: &Permutation) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(rep.clone());
    let mut out = vec![rep.clone()];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for s in group.generators() {
            let y = x.conjugate_by(s);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
    }
    out
}

fn sort_key(c: &ConjClass) -> (u64, u128, Vec<usize>, Box<[u8]>) {
    (c.elt_order, c.size, c.cycle_type.clone(), c.rep.key())
}

fn exact_classes(group: &PermGroup, opts: &ClassOptions) -> ClassTable {
    let chain = group.chain();
    let n = chain.order() as usize;
    let gens = group.generators();
    let mut class_id = vec![u32::MAX; n];
    let mut found: Vec<(Permutation, u128)> = Vec::new();
    let mut queue: Vec<Permutation> = Vec::new();
    for start in 0..n {
        if class_id[start] != u32::MAX {
            continue;
        }
        let id = found.len() as u32;
        class_id[start] = id;
        let first = chain.element_at(start as u64);
        let mut best_key = first.key();
        let mut best = first.clone();
        let mut size: u128 = 0;
        queue.clear();
        queue.push(first);
        while let Some(x) = queue.pop() {
            size += 1;
            for s in gens {
                let y = x.conjugate_by(s);
                let k = chain.index_of(&y).expect("conjugate of a member") as usize;
                if class_id[k] == u32::MAX {
                    class_id[k] = id;
                    let key = y.key();
                    if key < best_key {
                        best_key = key;
                        best = y.clone();
                    }
                    queue.push(y);
                }
            }
        }
        found.push((best, size));
    }
    let order = n as u128;
    let mut classes: Vec<(usize, ConjClass)> = found
        .into_iter()
        .enumerate()
        .map(|(old, (rep, size))| {
            (
                old,
                ConjClass {
                    elt_order: rep.order(),
                    cycle_type: rep.cycle_type(),
                    centralizer_order: order / size,
                    rep,
                    size,
                    elements: None,
                },
            )
        })
        .collect();
    classes.sort_by_key(|(_, c)| sort_key(c));
    let mut relabel = vec![0u32; classes.len()];
    for (new, (old, _)) in classes.iter().enumerate() {
        relabel[*old] = new as u32;
    }
    for c in class_id.iter_mut() {
        *c = relabel[*c as usize];
    }
    let mut classes: Vec<ConjClass> = classes.into_iter().map(|(_, c)| c).collect();
    for (i, c) in classes.iter_mut().enumerate() {
        if c.size <= opts.materialize_cap {
            c.elements = Some(
                class_id
                    .iter()
                    .enumerate()
                    .filter(|&(_, &k)| k as usize == i)
                    .map(|(idx, _)| chain.element_at(idx as u64))
                    .collect(),
            );
        }
    }
    ClassTable {
        group: group.clone(),
        classes,
        strategy: ClassStrategy::Exact,
        class_of_index: Some(class_id),
    }
}

fn randomized_classes(group: &PermGroup, opts: &ClassOptions) -> Result<ClassTable, PermError> {
    let order = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut classes: Vec<ConjClass> = Vec::new();
    let mut total: u128 = 0;
    let mut pending: Vec<Permutation> = vec![Permutation::identity(group.degree())];
    pending.extend(group.generators().iter().cloned());
    let mut samples = 0usize;
    while total < order {
        let x = match pending.pop() {
            Some(x) => x,
            None => {
                samples += 1;
                if samples > opts.max_samples {
                    return Err(PermError::SearchExhausted(opts.max_samples));
                }
                group.random_element(&mut rng)
            }
        };
        let ord = x.order();
        let ct = x.cycle_type();
        let known = classes.iter().any(|c| {
            c.elt_order == ord
                && c.cycle_type == ct
                && backtrack::conjugator(group, &c.rep, &x).is_some()
        });
        if known {
            continue;
        }
        let cent = backtrack::centralizer(group, &x).order();
        let size = order / cent;
        total += size;
        // powers of a new representative often land in classes not seen yet
        for k in 2..ord {
            if ord % k != 0 || k == ord {
                continue;
            }
            pending.push(x.pow(k as i64));
        }
        classes.push(ConjClass {
            elements: (size <= opts.materialize_cap).then(|| conjugation_orbit(group, &x)),
            elt_order: ord,
            cycle_type: ct,
            centralizer_order: cent,
            rep: x,
            size,
        });
    }
    classes.sort_by_key(sort_key);
    Ok(ClassTable {
        group: group.clone(),
        classes,
        strategy: ClassStrategy::Randomized,
        class_of_index: None,
    })
}

impl PermGroup {
    pub fn conjugacy_classes(&self, opts: &ClassOptions) -> Result<ClassTable, PermError> {
        let order = self.order();
        if order <= opts.enumeration_cap {
            Ok(exact_classes(self, opts))
        } else if opts.allow_randomized {
            randomized_classes(self, opts)
        } else {
            Err(PermError::CapExceeded {
                order,
                cap: opts.enumeration_cap,
            })
        }
    }

    pub fn centralizer(&self, g: &Permutation) -> Result<PermGroup, PermError> {
        self.ensure_member(g)?;
        Ok(backtrack::centralizer(self, g))
    }

    /// Some `h ∈ G` with `h g h⁻¹ = x`.
    pub fn conjugator(&self, g: &Permutation, x: &Permutation) -> Result<Option<Permutation>, PermError> {
        self.ensure_member(g)?;
        self.ensure_member(x)?;
        Ok(backtrack::conjugator(self, g, x))
    }

    pub fn are_conjugate(&self, g: &Permutation, x: &Permutation) -> Result<bool, PermError> {
        Ok(self.conjugator(g, x)?.is_some())
    }

    /// Normalizer of the cyclic subgroup `⟨g⟩`.
    pub fn normalizer_cyclic(&self, g: &Permutation) -> Result<PermGroup, PermError> {
        let cent = self.centralizer(g)?;
        let n = g.order();
        let mut gens = cent.generators().to_vec();
        for k in 2..n {
            if k.gcd(&n) != 1 {
                continue;
            }
            if let Some(h) = backtrack::conjugator(self, g, &g.pow(k as i64)) {
                gens.push(h);
            }
        }
        self.subgroup(&gens)
    }

    /// Whether `g` is conjugate to every power `g^k` with `k` coprime to its order.
    pub fn is_rational(&self, g: &Permutation) -> Result<bool, PermError> {
        self.ensure_member(g)?;
        let n = g.order();
        Ok((2..n)
            .filter(|k| k.gcd(&n) == 1)
            .all(|k| backtrack::conjugator(self, g, &g.pow(k as i64)).is_some()))
    }
}
