//! Rigidity of class triples and the coprime-inertia criterion.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::perm::{builtin, generates, ClassTable, PermError, PermGroup, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RigidityError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("no class of element order {0}")]
    NoClass(u64),
    #[error("element order {order} is ambiguous; candidate classes {candidates:?}")]
    Ambiguous { order: u64, candidates: Vec<usize> },
    #[error("class index {0} out of range")]
    BadIndex(usize),
    #[error("n = {0} outside the supported odd range 7..=13")]
    OutOfRange(usize),
}

fn check_indices(table: &ClassTable, idx: &[usize]) -> Result<(), RigidityError> {
    match idx.iter().find(|&&i| i >= table.len()) {
        Some(&i) => Err(RigidityError::BadIndex(i)),
        None => Ok(()),
    }
}

/// Selects one class per requested element order, failing on ambiguity.
pub fn select_by_orders(table: &ClassTable, orders: &[u64]) -> Result<Vec<usize>, RigidityError> {
    orders
        .iter()
        .map(|&o| match table.with_order(o).as_slice() {
            [] => Err(RigidityError::NoClass(o)),
            [one] => Ok(*one),
            many => Err(RigidityError::Ambiguous {
                order: o,
                candidates: many.to_vec(),
            }),
        })
        .collect()
}

/// Every class tuple matching the requested element orders.
pub fn candidate_tuples(table: &ClassTable, orders: &[u64]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &o in orders {
        let opts = table.with_order(o);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&c| {
                    let mut t = prefix.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

/// `#{(x, y, z) ∈ C₁×C₂×C₃ : xyz = 1, ⟨x, y⟩ = G}`.
///
/// One class is pinned to a representative and the smallest class is iterated, using
/// that rotating a triple preserves both conditions and conjugation acts transitively
/// on the pinned class.
pub fn generating_triple_count(table: &ClassTable, triple: [usize; 3]) -> Result<u128, RigidityError> {
    check_indices(table, &triple)?;
    let size = |i: usize| table.classes()[triple[i]].size;
    let it = (0..3).min_by_key(|&i| (size(i), i)).expect("three classes");
    let pinned = triple[(it + 2) % 3];
    let iterated = triple[it];
    let target = triple[(it + 1) % 3];
    let group = table.group();
    let order = group.order();
    let x0 = table.classes()[pinned].rep.clone();
    let members = table.members(iterated)?;
    let hits = members
        .par_iter()
        .filter(|y| {
            let z = x0.compose(y).expect("same degree").inverse();
            table.class_of(&z) == Some(target)
                && generates(group.degree(), &[x0.clone(), (*y).clone()], order)
        })
        .count() as u128;
    Ok(table.classes()[pinned].size * hits)
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub classes: Vec<usize>,
    pub orders: Vec<u64>,
    pub count: u128,
    /// `|G| / |Z(G)|`.
    pub inner_order: u128,
    pub rigid: bool,
    pub rational: Vec<bool>,
    pub rationally_rigid: bool,
}

pub fn rigidity_report(table: &ClassTable, triple: [usize; 3]) -> Result<RigidityReport, RigidityError> {
    let count = generating_triple_count(table, triple)?;
    let inner_order = table.group().order() / table.center_order();
    let rigid = count > 0 && count == inner_order;
    let rational: Vec<bool> = triple.iter().map(|&i| table.is_rational(i)).collect();
    Ok(RigidityReport {
        classes: triple.to_vec(),
        orders: triple.iter().map(|&i| table.classes()[i].elt_order).collect(),
        count,
        inner_order,
        rigid,
        rationally_rigid: rigid && rational.iter().all(|&r| r),
        rational,
    })
}

pub fn is_rigid(table: &ClassTable, triple: [usize; 3]) -> Result<bool, RigidityError> {
    Ok(rigidity_report(table, triple)?.rigid)
}

pub fn is_rationally_rigid(table: &ClassTable, triple: [usize; 3]) -> Result<bool, RigidityError> {
    Ok(rigidity_report(table, triple)?.rationally_rigid)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionFailure {
    NotTwoLargeOrders,
    OrdersNotCoprime,
    CentralizerTooBig,
    DuplicateLargeClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassFacts {
    pub class: usize,
    pub elt_order: u64,
    pub size: u128,
    pub centralizer_order: u128,
    pub divides_gexp: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub passes: bool,
    pub gexp_value: u64,
    pub offending_condition: Option<CriterionFailure>,
    pub details: Vec<ClassFacts>,
}

/// Checks that exactly two entries have orders not dividing `gexp_value`, each the only
/// entry of its order, with coprime orders and self-centralizing cyclic subgroups.
pub fn coprime_criterion_check(
    table: &ClassTable,
    tuple: &[usize],
    gexp_value: u64,
) -> Result<CriterionReport, RigidityError> {
    check_indices(table, tuple)?;
    let details: Vec<ClassFacts> = tuple
        .iter()
        .map(|&i| {
            let c = &table.classes()[i];
            ClassFacts {
                class: i,
                elt_order: c.elt_order,
                size: c.size,
                centralizer_order: c.centralizer_order,
                divides_gexp: gexp_value % c.elt_order == 0,
            }
        })
        .collect();
    let large: Vec<&ClassFacts> = details.iter().filter(|f| !f.divides_gexp).collect();
    let duplicate = large
        .iter()
        .enumerate()
        .any(|(i, a)| large[i + 1..].iter().any(|b| b.elt_order == a.elt_order));
    let failure = if duplicate {
        Some(CriterionFailure::DuplicateLargeClass)
    } else if large.len() != 2 {
        Some(CriterionFailure::NotTwoLargeOrders)
    } else if large[0].elt_order.gcd(&large[1].elt_order) != 1 {
        Some(CriterionFailure::OrdersNotCoprime)
    } else if large
        .iter()
        .any(|f| f.centralizer_order != f.elt_order as u128)
    {
        Some(CriterionFailure::CentralizerTooBig)
    } else {
        None
    };
    Ok(CriterionReport {
        passes: failure.is_none(),
        gexp_value,
        offending_condition: failure,
        details,
    })
}

/// Unordered pairs of rational, self-centralizing classes with coprime orders not
/// dividing `gexp_value`.
pub fn find_criterion_pairs(table: &ClassTable, gexp_value: u64) -> Vec<(usize, usize)> {
    let good: Vec<usize> = (0..table.len())
        .filter(|&i| {
            let c = &table.classes()[i];
            gexp_value % c.elt_order != 0
                && c.centralizer_order == c.elt_order as u128
                && table.is_rational(i)
        })
        .collect();
    let mut out = Vec::new();
    for (k, &i) in good.iter().enumerate() {
        for &j in &good[k + 1..] {
            let (a, b) = (table.classes()[i].elt_order, table.classes()[j].elt_order);
            if a.gcd(&b) == 1 {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct AnClassFacts {
    pub cycle_type: Vec<usize>,
    pub elt_order: u64,
    pub rational: bool,
    pub centralizer_order: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnReport {
    pub n: usize,
    pub first: AnClassFacts,
    pub second: AnClassFacts,
    pub coprime: bool,
    pub passes: bool,
}

fn an_facts(group: &PermGroup, x: &Permutation) -> Result<AnClassFacts, RigidityError> {
    Ok(AnClassFacts {
        cycle_type: x.cycle_type(),
        elt_order: x.order(),
        rational: group.is_rational(x)?,
        centralizer_order: group.centralizer(x)?.order(),
    })
}

/// Classes of cycle types `(n−2, 1, 1)` and `(n−3, 2, 1)` in `Aₙ`, `n` odd in `7..=13`.
pub fn an_classes_report(n: usize) -> Result<AnReport, RigidityError> {
    if !(7..=13).contains(&n) || n % 2 == 0 {
        return Err(RigidityError::OutOfRange(n));
    }
    let group = builtin::alternating(n);
    let long = Permutation::from_cycles(n, &[(1..=n - 2).collect()])?;
    let split = Permutation::from_cycles(n, &[(1..=n - 3).collect(), vec![n - 2, n - 1]])?;
    let first = an_facts(&group, &long)?;
    let second = an_facts(&group, &split)?;
    let coprime = first.elt_order.gcd(&second.elt_order) == 1;
    let good = |f: &AnClassFacts| f.rational && f.centralizer_order == f.elt_order as u128;
    let passes = coprime
        && good(&first)
        && good(&second)
        && first.elt_order == (n - 2) as u64
        && second.elt_order == ((n - 3) as u64).lcm(&2);
    Ok(AnReport {
        n,
        first,
        second,
        coprime,
        passes,
    })
}

pub fn an_classes_check(n: usize) -> Result<bool, RigidityError> {
    Ok(an_classes_report(n)?.passes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::builtin::builtin;
    use crate::perm::ClassOptions;

    fn table(name: &str) -> ClassTable {
        builtin(name, None)
            .unwrap()
            .conjugacy_classes(&ClassOptions::default())
            .unwrap()
    }

    /// Direct count over all of `C₁ × C₂`.
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
    fn s3_triples() {
        let t = table("S(3)");
        let inv = t.with_order(2)[0];
        let three = t.with_order(3)[0];
        assert_eq!(generating_triple_count(&t, [inv, inv, three]).unwrap(), 6);
        assert_eq!(brute_count(&t, [inv, inv, three]), 6);
        assert_eq!(generating_triple_count(&t, [inv, inv, inv]).unwrap(), 0);
        assert!(!is_rigid(&t, [inv, inv, inv]).unwrap());
        assert!(is_rationally_rigid(&t, [inv, inv, three]).unwrap());
    }

    #[test]
    fn a4_counts_match_brute_force() {
        let t = table("A(4)");
        for a in 0..t.len() {
            for b in 0..t.len() {
                for c in 0..t.len() {
                    let n = generating_triple_count(&t, [a, b, c]).unwrap();
                    assert_eq!(n, brute_count(&t, [a, b, c]));
                    assert_eq!(n % 12, 0);
                }
            }
        }
    }

    #[test]
    fn order_selection() {
        let t = table("PGL(2,7)");
        assert!(matches!(
            select_by_orders(&t, &[2, 6, 7]),
            Err(RigidityError::Ambiguous { order: 2, .. })
        ));
        assert_eq!(select_by_orders(&t, &[6, 7]).unwrap().len(), 2);
        assert!(matches!(select_by_orders(&t, &[5]), Err(RigidityError::NoClass(5))));
        assert_eq!(candidate_tuples(&t, &[2, 6, 7]).len(), 2);
    }

    #[test]
    fn criterion_failures() {
        let t = table("PGL(2,7)");
        let six = t.with_order(6)[0];
        let seven = t.with_order(7)[0];
        let inv = t.with_order(2)[0];
        let r = coprime_criterion_check(&t, &[inv, six, seven], 2).unwrap();
        assert!(r.passes);
        let r = coprime_criterion_check(&t, &[inv, six, six], 2).unwrap();
        assert_eq!(r.offending_condition, Some(CriterionFailure::DuplicateLargeClass));
        let three = t.with_order(3)[0];
        let r = coprime_criterion_check(&t, &[three, six, seven], 2).unwrap();
        assert_eq!(r.offending_condition, Some(CriterionFailure::NotTwoLargeOrders));
        let r = coprime_criterion_check(&t, &[inv, three, six], 2).unwrap();
        assert_eq!(r.offending_condition, Some(CriterionFailure::OrdersNotCoprime));
        let four = t.with_order(4)[0];
        let r = coprime_criterion_check(&t, &[inv, four, seven], 2).unwrap();
        assert_eq!(r.offending_condition, Some(CriterionFailure::CentralizerTooBig));
    }

    #[test]
    fn abelian_has_no_pairs() {
        let t = table("C(6)");
        assert!(find_criterion_pairs(&t, 6).is_empty());
        assert!(find_criterion_pairs(&t, 1).is_empty());
    }

    #[test]
    fn an_range() {
        assert!(an_classes_check(7).unwrap());
        assert!(matches!(an_classes_check(8), Err(RigidityError::OutOfRange(8))));
        assert!(matches!(an_classes_check(15), Err(RigidityError::OutOfRange(15))));
    }
}
