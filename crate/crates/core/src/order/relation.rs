//! Compact binary relations on `0..n` stored as one bitset row per element.

use crate::error::{Error, Result};

/// A relation on at most [`Order::MAX`] elements; bit `y` of `up[x]` says
/// `x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Order {
    n: usize,
    up: Vec<u64>,
}

impl Order {
    pub const MAX: usize = 64;

    fn blank(n: usize) -> Self {
        assert!(
            n <= Self::MAX,
            "orders are limited to {} elements",
            Self::MAX
        );
        Order { n, up: vec![0; n] }
    }

    pub fn checked_size(n: usize) -> Result<()> {
        if n > Self::MAX {
            return Err(Error::TooLarge(format!(
                "{n} elements exceed the {} supported by ordered carriers",
                Self::MAX
            )));
        }
        Ok(())
    }

    pub fn discrete(n: usize) -> Self {
        let mut o = Self::blank(n);
        for x in 0..n {
            o.up[x] = 1 << x;
        }
        o
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |x, y| x <= y)
    }

    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut o = Self::blank(n);
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    o.up[x] |= 1 << y;
                }
            }
        }
        o
    }

    /// Reflexive-transitive closure of the given pairs.
    pub fn generated(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut o = Self::discrete(n);
        for (x, y) in pairs {
            o.up[x] |= 1 << y;
        }
        o.closure()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    pub fn up_set(&self, x: usize) -> u64 {
        self.up[x]
    }

    pub fn down_set(&self, y: usize) -> u64 {
        (0..self.n)
            .filter(|&x| self.leq(x, y))
            .fold(0, |acc, x| acc | 1 << x)
    }

    pub fn first_non_reflexive(&self) -> Option<usize> {
        (0..self.n).find(|&x| !self.leq(x, x))
    }

    pub fn first_non_transitive(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                if !self.leq(x, y) {
                    continue;
                }
                for z in 0..self.n {
                    if self.leq(y, z) && !self.leq(x, z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn first_non_antisymmetric(&self) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.leq(x, y) && self.leq(y, x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_preorder(&self) -> bool {
        self.first_non_reflexive().is_none() && self.first_non_transitive().is_none()
    }

    pub fn is_poset(&self) -> bool {
        self.is_preorder() && self.first_non_antisymmetric().is_none()
    }

    /// Reflexive-transitive closure by repeated squaring of the relation.
    pub fn closure(&self) -> Order {
        let mut cur = self.clone();
        for x in 0..self.n {
            cur.up[x] |= 1 << x;
        }
        loop {
            let next_up: Vec<u64> = (0..self.n)
                .map(|x| {
                    let mut row = cur.up[x];
                    let mut bits = cur.up[x];
                    while bits != 0 {
                        let y = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        row |= cur.up[y];
                    }
                    row
                })
                .collect();
            if next_up == cur.up {
                return cur;
            }
            cur.up = next_up;
        }
    }

    /// Pairs `x < y` (or `x ≤ y`, `x ≠ y`) in lexicographic order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && self.leq(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn strict_count(&self) -> usize {
        self.up
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            - self.n
    }

    /// The same relation with element `x` renamed `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Order {
        let mut o = Self::blank(self.n);
        for x in 0..self.n {
            let mut bits = self.up[x];
            while bits != 0 {
                let y = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                o.up[perm[x]] |= 1 << perm[y];
            }
        }
        o
    }

    /// Image relation along `f` (not closed).
    pub fn image_pairs<'a>(&'a self, f: &'a [usize]) -> impl Iterator<Item = (usize, usize)> + 'a {
        (0..self.n).flat_map(move |x| {
            (0..self.n)
                .filter(move |&y| self.leq(x, y))
                .map(move |y| (f[x], f[y]))
        })
    }

    pub fn is_monotone(&self, cod: &Order, table: &[usize]) -> bool {
        self.first_non_monotone(cod, table).is_none()
    }

    pub fn first_non_monotone(&self, cod: &Order, table: &[usize]) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                if self.leq(x, y) && !cod.leq(table[x], table[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Whether `x ≤ y ⟺ f(x) ≤ f(y)`.
    pub fn reflects_along(&self, cod: &Order, table: &[usize]) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.leq(x, y) == cod.leq(table[x], table[y])))
    }

    /// Every monotone map into `cod`, in lexicographic table order.
    pub fn monotone_maps(&self, cod: &Order) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.n];
        self.extend_monotone(cod, &mut cur, 0, &|_, _| true, &mut out);
        out
    }

    /// Monotone maps whose value at each element passes `allowed(x, v)`.
    pub fn monotone_maps_filtered(
        &self,
        cod: &Order,
        allowed: &dyn Fn(&[usize], usize) -> bool,
    ) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.n];
        self.extend_monotone(cod, &mut cur, 0, allowed, &mut out);
        out
    }

    fn extend_monotone(
        &self,
        cod: &Order,
        cur: &mut Vec<usize>,
        i: usize,
        allowed: &dyn Fn(&[usize], usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == self.n {
            out.push(cur.clone());
            return;
        }
        'values: for v in 0..cod.len() {
            for j in 0..i {
                if (self.leq(j, i) && !cod.leq(cur[j], v))
                    || (self.leq(i, j) && !cod.leq(v, cur[j]))
                {
                    continue 'values;
                }
            }
            cur[i] = v;
            if allowed(&cur[..=i], i) {
                self.extend_monotone(cod, cur, i + 1, allowed, out);
            }
        }
    }

    /// Boolean matrix, row `x` column `y` set iff `x ≤ y`.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.leq(x, y) as u8).collect())
            .collect()
    }

    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Order> {
        let n = rows.len();
        Self::checked_size(n)?;
        if rows
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&b| b > 1))
        {
            return Err(Error::MatrixShape { n });
        }
        Ok(Self::from_fn(n, |x, y| rows[x][y] == 1))
    }

    /// Componentwise order on equal-image pairs.
    pub fn pullback(
        &self,
        f: &[usize],
        other: &Order,
        g: &[usize],
    ) -> Result<(Order, Vec<(usize, usize)>)> {
        let pairs = crate::tables::pullback_pairs(f, g);
        Self::checked_size(pairs.len())?;
        let o = Order::from_fn(pairs.len(), |i, j| {
            self.leq(pairs[i].0, pairs[j].0) && other.leq(pairs[i].1, pairs[j].1)
        });
        Ok((o, pairs))
    }

    /// Cycle classes `x ≤ y ≤ x` in canonical order and the induced partial
    /// order on them.
    pub fn reflection(&self) -> (Vec<usize>, Order) {
        let ids: Vec<usize> = (0..self.n)
            .map(|x| {
                (0..=x)
                    .find(|&y| self.leq(x, y) && self.leq(y, x))
                    .unwrap_or(x)
            })
            .collect();
        let class_of = crate::tables::canonical_ids(&ids);
        let k = crate::tables::class_count(&class_of);
        let mut reps = vec![usize::MAX; k];
        for (x, &c) in class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        let order = Order::from_fn(k, |a, b| self.leq(reps[a], reps[b]));
        (class_of, order)
    }

    /// Coequalizer in preorders of `f, g: _ ⇒ self`: classes and the closure
    /// of the image order.
    pub fn coequalize_preorder(&self, f: &[usize], g: &[usize]) -> (Vec<usize>, Order) {
        let class_of = crate::tables::coequalizer_ids(f, g, self.n);
        let k = crate::tables::class_count(&class_of);
        let order = Order::generated(k, self.image_pairs(&class_of));
        (class_of, order)
    }

    /// Coequalizer in posets: the preorder coequalizer followed by posetal
    /// reflection.
    pub fn coequalize_poset(&self, f: &[usize], g: &[usize]) -> (Vec<usize>, Order) {
        let (pre, pre_order) = self.coequalize_preorder(f, g);
        let (refl, order) = pre_order.reflection();
        (crate::tables::compose(&refl, &pre), order)
    }

    /// Regular-epi test for a monotone `f: self -> cod` between posets: the
    /// comparison from the coequalizer of the kernel pair must be an
    /// isomorphism.
    pub fn is_regular_epi(&self, cod: &Order, f: &[usize]) -> bool {
        let kp = crate::tables::pullback_pairs(f, f);
        let p0: Vec<usize> = kp.iter().map(|p| p.0).collect();
        let p1: Vec<usize> = kp.iter().map(|p| p.1).collect();
        let (q, qo) = self.coequalize_poset(&p0, &p1);
        match crate::tables::factor_surjective(&q, qo.len(), f) {
            Some(c) => {
                qo.len() == cod.len()
                    && crate::tables::is_injective(&c, cod.len())
                    && qo.reflects_along(cod, &c)
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_checks() {
        let o = Order::generated(3, [(0, 1), (1, 2)]);
        assert!(o.leq(0, 2));
        assert!(o.is_poset());
        assert_eq!(o.strict_count(), 3);
        let bad = Order::from_fn(3, |x, y| x == y || (x, y) == (0, 1) || (x, y) == (1, 2));
        assert_eq!(bad.first_non_transitive(), Some((0, 1, 2)));
        let cyc = Order::generated(2, [(0, 1), (1, 0)]);
        assert_eq!(cyc.first_non_antisymmetric(), Some((0, 1)));
    }

    #[test]
    fn monotone_enumeration() {
        let c2 = Order::chain(2);
        assert_eq!(
            c2.monotone_maps(&c2),
            vec![vec![0, 0], vec![0, 1], vec![1, 1]]
        );
        assert_eq!(Order::discrete(2).monotone_maps(&c2).len(), 4);
        assert_eq!(
            Order::discrete(0).monotone_maps(&Order::discrete(0)).len(),
            1
        );
    }

    #[test]
    fn reflection_of_cycle() {
        let cyc = Order::generated(3, [(0, 1), (1, 0), (1, 2)]);
        let (cls, o) = cyc.reflection();
        assert_eq!(cls, vec![0, 0, 1]);
        assert!(o.is_poset() && o.leq(0, 1) && !o.leq(1, 0));
    }
}
