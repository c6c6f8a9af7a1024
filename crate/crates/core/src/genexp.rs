//! Generator exponent: the least `L` such that `G` is generated by elements whose
//! orders all divide `L`.

use num_integer::Integer;
use serde::Serialize;

use crate::perm::{block_swap, direct_product, hat_group, restrict_block, ClassOptions, ClassTable, PermError, PermGroup, Permutation};

#[derive(Clone, Debug, Serialize)]
pub struct GexpReport {
    pub value: u64,
    pub exponent: u64,
    /// Distinct element orders in the certificate, ascending.
    pub witness_orders: Vec<u64>,
    /// Class representatives whose normal closure is the whole group.
    #[serde(serialize_with = "serialize_perms")]
    pub certificate: Vec<Permutation>,
}

fn serialize_perms<S: serde::Serializer>(perms: &[Permutation], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(perms.iter().map(|p| p.to_string()))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn exponent(table: &ClassTable) -> u64 {
    table.exponent()
}

fn closure_is_whole(group: &PermGroup, elems: &[Permutation]) -> bool {
    group
        .normal_closure(elems)
        .map(|n| n.order() == group.order())
        .unwrap_or(false)
}

/// Generator exponent from a precomputed class table.
pub fn gexp_from_classes(table: &ClassTable) -> GexpReport {
    let group = table.group();
    let exp = table.exponent();
    for l in divisors(exp) {
        let reps: Vec<Permutation> = table
            .classes()
            .iter()
            .filter(|c| c.elt_order > 1 && l % c.elt_order == 0)
            .map(|c| c.rep.clone())
            .collect();
        if !closure_is_whole(group, &reps) {
            continue;
        }
        let mut cert = reps;
        let mut i = 0;
        while i < cert.len() {
            let mut trial = cert.clone();
            trial.remove(i);
            if closure_is_whole(group, &trial) {
                cert = trial;
            } else {
                i += 1;
            }
        }
        let mut witness_orders: Vec<u64> = cert.iter().map(Permutation::order).collect();
        witness_orders.sort_unstable();
        witness_orders.dedup();
        return GexpReport {
            value: l,
            exponent: exp,
            witness_orders,
            certificate: cert,
        };
    }
    unreachable!("L = exp(G) always succeeds")
}

pub fn gexp(group: &PermGroup) -> Result<GexpReport, PermError> {
    let table = group.conjugacy_classes(&ClassOptions::default())?;
    Ok(gexp_from_classes(&table))
}

/// Whether `gexp(G × H) = lcm(gexp(G), gexp(H))`.
pub fn gexp_lcm_check(g: &PermGroup, h: &PermGroup) -> Result<bool, PermError> {
    let a = gexp(g)?.value;
    let b = gexp(h)?.value;
    let prod = gexp(&direct_product(g, h))?.value;
    Ok(prod == a.lcm(&b))
}

#[derive(Clone, Debug, Serialize)]
pub struct HatReport {
    pub order: u128,
    pub generators_are_involutions: bool,
    pub generators_swap_blocks: bool,
    pub gexp_value: u64,
    pub projection_onto: bool,
}

impl HatReport {
    pub fn passes(&self) -> bool {
        self.generators_are_involutions
            && self.generators_swap_blocks
            && self.gexp_value == 2
            && self.projection_onto
    }
}

pub fn hat_report(g: &PermGroup) -> Result<HatReport, PermError> {
    let d = g.degree();
    let hat = hat_group(g);
    let gens = hat.generators();
    let generators_are_involutions = gens.iter().all(|x| x.order() == 2);
    let generators_swap_blocks = gens.iter().all(|x| (0..d).all(|p| x.apply(p) >= d));
    // Schreier generators of the block-preserving subgroup for the transversal {1, a}
    let swap = block_swap(d);
    let mut firsts = Vec::new();
    for x in gens {
        for y in [x.compose(&swap)?, swap.compose(x)?] {
            firsts.push(restrict_block(&y, 0, d));
        }
    }
    let projection = PermGroup::new(d, firsts)?;
    let projection_onto = projection.same_as(g);
    Ok(HatReport {
        order: hat.order(),
        generators_are_involutions,
        generators_swap_blocks,
        gexp_value: gexp(&hat)?.value,
        projection_onto,
    })
}

/// The involution-generation checks on the hat construction of `G`.
pub fn hat_involution_check(g: &PermGroup) -> Result<bool, PermError> {
    Ok(hat_report(g)?.passes())
}
