//! Direct products, wreath products and the involution-generated subgroup of `G ≀ C₂`.

use super::chain::{ChainOptions, StabChain};
use super::{PermGroup, Permutation};

/// `G × H` on `deg G + deg H` points, `G` on the first block.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let n = g.degree() + h.degree();
    let mut gens: Vec<Permutation> = g.generators().iter().map(|x| x.shifted(0, n)).collect();
    gens.extend(h.generators().iter().map(|x| x.shifted(g.degree(), n)));
    PermGroup::new(n, gens).expect("nonempty generators")
}

/// `G ≀ H` in its imprimitive action: `deg H` blocks of `deg G` points, `H` permuting blocks.
pub fn wreath(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let d = g.degree();
    let m = h.degree();
    let n = d * m;
    let mut gens = Vec::new();
    for b in 0..m {
        gens.extend(
            g.generators()
                .iter()
                .filter(|x| !x.is_identity())
                .map(|x| x.shifted(b * d, n)),
        );
    }
    for top in h.generators().iter().filter(|x| !x.is_identity()) {
        let images: Vec<u32> = (0..n)
            .map(|p| (top.apply(p / d) * d + p % d) as u32)
            .collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    if gens.is_empty() {
        return PermGroup::trivial(n);
    }
    PermGroup::new(n, gens).expect("nonempty generators")
}

/// `G ≀ Sₙ`.
pub fn wreath_symmetric(g: &PermGroup, n: usize) -> PermGroup {
    wreath(g, &super::builtin::symmetric(n))
}

/// Swap of the two blocks of size `d`.
pub fn block_swap(d: usize) -> Permutation {
    let images: Vec<u32> = (0..2 * d).map(|p| ((p + d) % (2 * d)) as u32).collect();
    Permutation::from_images_unchecked(images)
}

/// Restriction of a block-preserving permutation of `2d` points to the block at `offset`.
pub fn restrict_block(p: &Permutation, offset: usize, d: usize) -> Permutation {
    let images: Vec<u32> = (offset..offset + d)
        .map(|i| (p.apply(i) - offset) as u32)
        .collect();
    Permutation::from_images_unchecked(images)
}

/// The subgroup of `G ≀ C₂` generated by all `(g, g⁻¹)·a`, `a` the block swap.
///
/// Only the generators needed to reach the full group are kept; each is an involution
/// exchanging the two blocks.
pub fn hat_group(g: &PermGroup) -> PermGroup {
    let d = g.degree();
    let swap = block_swap(d);
    let opts = ChainOptions::default();
    let mut chain = StabChain::new(2 * d, &[], opts);
    let mut gens = Vec::new();
    for x in g.elements() {
        let pair = direct_pair(&x, &x.inverse());
        let inv = pair.mul(&swap);
        if chain.extend(&inv, opts) {
            gens.push(inv);
        }
    }
    PermGroup::new(2 * d, gens).expect("at least the block swap")
}

fn direct_pair(a: &Permutation, b: &Permutation) -> Permutation {
    let d = a.degree();
    let images: Vec<u32> = (0..d)
        .map(|i| a.apply(i) as u32)
        .chain((0..d).map(|i| (b.apply(i) + d) as u32))
        .collect();
    Permutation::from_images_unchecked(images)
}

#[cfg(test)]
mod tests {
    use super::super::builtin::{alternating, cyclic, symmetric};
    use super::*;

    #[test]
    fn product_orders() {
        assert_eq!(wreath_symmetric(&cyclic(2), 2).order(), 8);
        assert_eq!(direct_product(&alternating(4), &cyclic(3)).order(), 36);
        assert_eq!(wreath_symmetric(&symmetric(3), 2).order(), 72);
        assert_eq!(wreath(&cyclic(3), &cyclic(3)).order(), 81);
        assert_eq!(wreath_symmetric(&cyclic(3), 1).order(), 3);
    }

    #[test]
    fn hat_small() {
        let h = hat_group(&cyclic(3));
        assert_eq!(h.order(), 6);
        assert!(h.generators().iter().all(|x| x.order() == 2));
        let t = hat_group(&PermGroup::trivial(1));
        assert_eq!(t.order(), 2);
    }
}
