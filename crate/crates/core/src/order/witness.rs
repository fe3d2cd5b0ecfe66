//! Explicit witnesses: a regular epimorphism of posets whose pullback is not
//! regular, and a coequalizer whose preorder and poset versions disagree.

use serde::Serialize;

use super::{
    classify_pos, coequalizer_pos, coequalizer_preord, enumerate_monotone, pullback_pos, FinPoset,
    FinPreorder, MonotoneMap, Order, PosClass,
};
use crate::finset::FinSet;

/// The square
///
/// ```text
///   P' ---> A
///   |u'     | p
///   v       v
///   C ----> B
///       i
/// ```
/// with `A = {a, b} × (0 → 1)`, `B = 0 → 1 → 2`, `C = 0 → 2`, and `p`
/// gluing `(a,1)` to `(b,0)`.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleBundle {
    pub a: FinPoset,
    pub b: FinPoset,
    pub c: FinPoset,
    pub p: MonotoneMap,
    pub i: MonotoneMap,
    pub pullback: FinPoset,
    pub to_a: MonotoneMap,
    pub u_prime: MonotoneMap,
    pub p_class: PosClass,
    pub u_prime_class: PosClass,
    pub pos_not_regular: bool,
}

pub fn pos_counterexample() -> CounterexampleBundle {
    let a = FinPoset::from_parts(
        FinSet::from_labels(["(a,0)", "(a,1)", "(b,0)", "(b,1)"]).unwrap(),
        Order::generated(4, [(0, 1), (2, 3)]),
    )
    .unwrap();
    let b = FinPoset::chain(3);
    let c =
        FinPoset::from_parts(FinSet::from_labels(["0", "2"]).unwrap(), Order::chain(2)).unwrap();
    let p = MonotoneMap::new(
        a.as_preorder().clone(),
        b.as_preorder().clone(),
        vec![0, 1, 1, 2],
    )
    .unwrap();
    let i = MonotoneMap::new(c.as_preorder().clone(), b.as_preorder().clone(), vec![0, 2]).unwrap();
    let (pullback, to_a, u_prime) = pullback_pos(&p, &i).unwrap();
    let p_class = classify_pos(&p).unwrap();
    let u_prime_class = classify_pos(&u_prime).unwrap();
    assert!(p_class.regular_epi, "p must be a regular epimorphism");
    assert!(
        u_prime_class.epi && !u_prime_class.regular_epi,
        "the pulled-back map must be epi but not regular"
    );
    CounterexampleBundle {
        pos_not_regular: p_class.regular_epi && !u_prime_class.regular_epi,
        a,
        b,
        c,
        p,
        i,
        pullback,
        to_a,
        u_prime,
        p_class,
        u_prime_class,
    }
}

/// A parallel pair whose preorder coequalizer has a cycle, so the poset
/// coequalizer collapses it, together with a preorder cocone that cannot
/// factor through the poset coequalizer.
#[derive(Clone, Debug, Serialize)]
pub struct DivergenceWitness {
    pub f: MonotoneMap,
    pub g: MonotoneMap,
    pub preorder_coequalizer: FinPreorder,
    pub preorder_projection: MonotoneMap,
    pub poset_coequalizer: FinPoset,
    pub poset_projection: MonotoneMap,
    /// The preorder cocone: here the preorder projection itself.
    pub blocking_cocone: MonotoneMap,
    /// Number of maps from the poset coequalizer to the cocone's target
    /// that factor the cocone; zero certifies the failure.
    pub factorizations: usize,
}

pub fn coequalizer_divergence() -> DivergenceWitness {
    let x = FinPreorder::new(FinSet::from_labels(["p", "q"]).unwrap(), Order::discrete(2)).unwrap();
    let y = FinPreorder::numbered(Order::generated(4, [(0, 1), (2, 3)])).unwrap();
    let f = MonotoneMap::new(x.clone(), y.clone(), vec![1, 3]).unwrap();
    let g = MonotoneMap::new(x, y, vec![2, 0]).unwrap();
    let (pre, pre_proj) = coequalizer_preord(&f, &g).unwrap();
    let (pos, pos_proj) = coequalizer_pos(&f, &g).unwrap();
    let cocone = pre_proj.clone();
    assert_eq!(cocone.after(&f).unwrap(), cocone.after(&g).unwrap());
    let factorizations = enumerate_monotone(&pos, &pre)
        .into_iter()
        .filter(|u| u.after(&pos_proj).unwrap() == cocone)
        .count();
    assert_eq!(pre.len(), 2);
    assert_eq!(pos.len(), 1);
    assert_eq!(factorizations, 0);
    DivergenceWitness {
        f,
        g,
        preorder_coequalizer: pre,
        preorder_projection: pre_proj,
        poset_coequalizer: pos,
        poset_projection: pos_proj,
        blocking_cocone: cocone,
        factorizations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::isomorphic;

    #[test]
    fn counterexample_shape() {
        let b = pos_counterexample();
        assert_eq!(b.pullback.len(), 2);
        assert_eq!(b.pullback.order().strict_count(), 0);
        assert_eq!(b.pullback.carrier().labels(), &["((a,0),0)", "((b,1),2)"]);
        assert!(b.u_prime.is_surjective() && b.u_prime.is_injective());
        assert!(!b.u_prime.is_isomorphism());
        assert!(b.pos_not_regular);
        assert!(isomorphic(&b.c, &FinPoset::chain(2)));
    }

    #[test]
    fn divergence_shape() {
        let w = coequalizer_divergence();
        assert!(!w.preorder_coequalizer.is_poset());
        assert_eq!(w.poset_coequalizer.len(), 1);
        assert_eq!(w.factorizations, 0);
    }
}
