use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use ramlab_core::perm::builtin::builtin;
use ramlab_core::perm::{ClassOptions, ClassTable, PermGroup, Permutation};
use ramlab_core::rigidity::generating_triple_count;

/// Closure of the generators by breadth-first multiplication; `None` above `cap`.
fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Option<HashSet<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x).unwrap();
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

fn perm_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn gens_strategy() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (2usize..=8).prop_flat_map(|n| (Just(n), proptest::collection::vec(perm_strategy(n), 1..=3)))
}

fn table(g: &PermGroup) -> ClassTable {
    g.conjugacy_classes(&ClassOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 25, max_global_rejects: 10_000, ..ProptestConfig::default() })]

    #[test]
    fn order_matches_enumeration((n, gens) in gens_strategy()) {
        let Some(elems) = closure(n, &gens, 2000) else {
            return Err(TestCaseError::reject("group larger than 2000"));
        };
        let g = PermGroup::new(n, gens).unwrap();
        prop_assert_eq!(g.order(), elems.len() as u128);
        for x in elems.iter().take(50) {
            prop_assert!(g.contains(x).unwrap());
        }
    }

    #[test]
    fn classes_partition_the_group((n, gens) in gens_strategy()) {
        let Some(elems) = closure(n, &gens, 2000) else {
            return Err(TestCaseError::reject("group larger than 2000"));
        };
        let g = PermGroup::new(n, gens).unwrap();
        let t = table(&g);
        let total: u128 = t.classes().iter().map(|c| c.size).sum();
        prop_assert_eq!(total, elems.len() as u128);
        for c in t.classes() {
            prop_assert_eq!(c.size * c.centralizer_order, g.order());
            prop_assert_eq!(g.centralizer(&c.rep).unwrap().order(), c.centralizer_order);
        }
        for x in elems.iter().take(40) {
            let i = t.class_of(x).unwrap();
            prop_assert_eq!(x.order(), t.classes()[i].elt_order);
        }
    }
}

/// Direct count over `C₁ × C₂`, closing the third element.
fn brute_count(t: &ClassTable, triple: [usize; 3]) -> u128 {
    let g = t.group();
    let a = t.members(triple[0]).unwrap();
    let b = t.members(triple[1]).unwrap();
    let mut n = 0;
    for x in &a {
        for y in &b {
            let z = x.compose(y).unwrap().inverse();
            if t.class_of(&z) == Some(triple[2])
                && PermGroup::new(g.degree(), vec![x.clone(), y.clone()]).unwrap().order() == g.order()
            {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn triple_counts_match_brute_force() {
    for name in ["S(3)", "D(4)", "A(4)", "D(5)", "S(4)", "A(5)", "PSL(2,7)", "PGL(2,5)"] {
        let g = builtin(name, None).unwrap();
        let t = table(&g);
        let nontrivial: Vec<usize> = (0..t.len()).filter(|&i| t.classes()[i].elt_order > 1).collect();
        let mut checked = 0;
        for &a in &nontrivial {
            for &b in &nontrivial {
                for &c in &nontrivial {
                    if !(a <= b && b <= c) {
                        continue;
                    }
                    let pairs = t.classes()[a].size * t.classes()[b].size;
                    if g.order() > 200 && pairs > 1200 {
                        continue;
                    }
                    assert_eq!(
                        generating_triple_count(&t, [a, b, c]).unwrap(),
                        brute_count(&t, [a, b, c]),
                        "{name} {a} {b} {c}"
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked > 0, "{name}");
    }
}
