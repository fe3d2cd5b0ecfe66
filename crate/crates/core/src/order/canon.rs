//! Canonical labeling, isomorphism and exhaustive generation of small
//! orders.

use std::collections::BTreeSet;

use super::relation::Order;
use crate::error::{Error, Result};

/// Largest carrier for which posets are generated exhaustively.
pub const MAX_ENUM: usize = 6;

fn invariant(o: &Order, x: usize) -> (u32, u32, usize, usize) {
    let covers_up = (0..o.len())
        .filter(|&y| y != x && o.leq(x, y) && is_cover(o, x, y))
        .count();
    let covers_down = (0..o.len())
        .filter(|&y| y != x && o.leq(y, x) && is_cover(o, y, x))
        .count();
    (
        o.down_set(x).count_ones(),
        o.up_set(x).count_ones(),
        covers_down,
        covers_up,
    )
}

fn is_cover(o: &Order, x: usize, y: usize) -> bool {
    !(0..o.len())
        .any(|z| z != x && z != y && o.leq(x, z) && o.leq(z, y) && !o.leq(z, x) && !o.leq(y, z))
}

/// Permutations respecting the invariant blocks, as maps old index -> new.
fn block_permutations(o: &Order) -> Vec<Vec<usize>> {
    let n = o.len();
    let mut keyed: Vec<((u32, u32, usize, usize), usize)> =
        (0..n).map(|x| (invariant(o, x), x)).collect();
    keyed.sort();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, &(key, x)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == key {
            blocks.last_mut().unwrap().push(x);
        } else {
            blocks.push(vec![x]);
        }
    }
    let mut out = Vec::new();
    let mut perm = vec![0; n];
    fill_blocks(&blocks, 0, 0, &mut perm, &mut out);
    out
}

fn fill_blocks(
    blocks: &[Vec<usize>],
    b: usize,
    offset: usize,
    perm: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if b == blocks.len() {
        out.push(perm.clone());
        return;
    }
    let block = &blocks[b];
    for arrangement in permutations(block.len()) {
        for (i, &slot) in arrangement.iter().enumerate() {
            perm[block[i]] = offset + slot;
        }
        fill_blocks(blocks, b + 1, offset + block.len(), perm, out);
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// The least relabeling of `o` among invariant-respecting permutations,
/// with the permutation (old index -> new index) producing it.
pub fn canonical_form(o: &Order) -> (Order, Vec<usize>) {
    block_permutations(o)
        .into_iter()
        .map(|p| (o.permuted(&p), p))
        .min()
        .expect("at least one permutation")
}

/// An isomorphism `a -> b` as a table, if one exists.
pub fn find_isomorphism(a: &Order, b: &Order) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.strict_count() != b.strict_count() {
        return None;
    }
    let (ca, pa) = canonical_form(a);
    let (cb, pb) = canonical_form(b);
    if ca != cb {
        return None;
    }
    let mut inv_b = vec![0; pb.len()];
    for (x, &c) in pb.iter().enumerate() {
        inv_b[c] = x;
    }
    Some(pa.iter().map(|&c| inv_b[c]).collect())
}

/// Order automorphisms, as tables.
pub fn automorphisms(o: &Order) -> Vec<Vec<usize>> {
    // an automorphism maps each element to one with the same invariant
    let base = block_permutations(o).swap_remove(0);
    let mut inv = vec![0; base.len()];
    for (x, &c) in base.iter().enumerate() {
        inv[c] = x;
    }
    let mut out: Vec<Vec<usize>> = block_permutations(o)
        .into_iter()
        .map(|p| p.iter().map(|&c| inv[c]).collect::<Vec<usize>>())
        .filter(|s| o.permuted(s) == *o)
        .collect();
    out.sort();
    out
}

/// Sort key for enumerated orders: size, number of strict relations, code.
pub fn order_key(o: &Order) -> (usize, usize, Order) {
    (o.len(), o.strict_count(), o.clone())
}

fn check_bound(n: usize, limit: usize, what: &str) -> Result<()> {
    if n > limit {
        let pairs = n * n.saturating_sub(1) / 2;
        return Err(Error::BoundExceeded {
            what: what.into(),
            requested: n,
            limit,
            estimate: format!("2^{pairs} candidate relations"),
        });
    }
    Ok(())
}

/// Posets on exactly `n` elements up to isomorphism, in canonical order.
pub fn posets_of_size(n: usize) -> Result<Vec<Order>> {
    check_bound(n, MAX_ENUM, "poset size")?;
    // every poset has a natural labeling: x < y implies index x < index y
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let mut found = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let o = Order::from_fn(n, |x, y| {
            x == y
                || (x < y && {
                    let idx = pairs.iter().position(|&p| p == (x, y)).unwrap();
                    mask >> idx & 1 == 1
                })
        });
        if o.first_non_transitive().is_none() {
            found.insert(order_key(&canonical_form(&o).0));
        }
    }
    Ok(found.into_iter().map(|k| k.2).collect())
}

/// Posets on at most `n` elements, smallest first.
pub fn posets_up_to(n: usize) -> Result<Vec<Order>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(posets_of_size(k)?);
    }
    Ok(out)
}

/// Largest carrier for which labeled preorders are listed.
pub const MAX_PREORDER_ENUM: usize = 4;

/// Every preorder on the labeled set `0..n`.
pub fn preorders_of_size(n: usize) -> Result<Vec<Order>> {
    check_bound(n, MAX_PREORDER_ENUM, "preorder size")?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let o = Order::from_fn(n, |x, y| {
            x == y || mask >> pairs.iter().position(|&p| p == (x, y)).unwrap() & 1 == 1
        });
        if o.first_non_transitive().is_none() {
            out.push(o);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| posets_of_size(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn preorder_counts() {
        // labeled preorders: 1, 1, 4, 29, 355
        let counts: Vec<usize> = (0..=4)
            .map(|n| preorders_of_size(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            posets_of_size(7),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn isomorphism_found_between_relabelings() {
        let o = Order::generated(4, [(0, 1), (2, 3), (2, 1)]);
        let p = o.permuted(&[3, 1, 0, 2]);
        let iso = find_isomorphism(&o, &p).unwrap();
        assert_eq!(o.permuted(&iso), p);
        assert!(find_isomorphism(&o, &Order::chain(4)).is_none());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&Order::discrete(3)).len(), 6);
        assert_eq!(automorphisms(&Order::chain(3)).len(), 1);
        assert_eq!(
            automorphisms(&Order::generated(4, [(0, 1), (2, 3)])).len(),
            2
        );
    }

    #[test]
    fn permutations_lexicographic() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }
}
