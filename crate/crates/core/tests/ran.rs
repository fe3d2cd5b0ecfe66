use nogo_core::finset::{enumerate_fns, FinFn, FinRel, FinSet};
use nogo_core::ran::{
    an_implies_ran_check, closes, closing_relation, ran_hom_exists, verify_witness, RAnObj,
};
use proptest::prelude::*;

fn obj(n: usize, m: usize, t: Vec<usize>) -> RAnObj {
    RAnObj::new(FinFn::new(FinSet::numbered(n), FinSet::numbered(m), t).unwrap())
}

/// Every relation `x ⇸ y`.
fn relations(x: usize, y: usize) -> Vec<FinRel> {
    let cells: Vec<(usize, usize)> = (0..x).flat_map(|a| (0..y).map(move |b| (a, b))).collect();
    (0u32..1 << cells.len())
        .map(|mask| {
            let pairs = cells
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            FinRel::new(FinSet::numbered(x), FinSet::numbered(y), pairs).unwrap()
        })
        .collect()
}

#[test]
fn full_audit_at_three() {
    let r = an_implies_ran_check(3, 3).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.function_implies_refinement_violations, 0);
    assert_eq!(r.closing_relation_failures, 0);
    assert_eq!(r.converse_violations, 0);
    assert_eq!(r.preorder_violations, 0);
    let w = r.witness.clone().unwrap();
    verify_witness(&w).unwrap();
    // a function into an empty codomain exists only from an empty set, so
    // the refinement-without-function pairs are the empty-base ones
    assert_eq!(w.src.base().len(), 0);
    assert!(!w.src.arrow().cod().is_empty() && w.dst.arrow().cod().is_empty());
    assert!(r.relation_only_by_base[0] > 0);
    assert!(r.relation_only_by_base[1..].iter().all(|&c| c == 0));
    // pairs over |A| = a: (sum_x x^a)^2
    let pairs: usize = (0..=3u32)
        .map(|a| (0..=3usize).map(|x| x.pow(a)).sum::<usize>().pow(2))
        .sum();
    assert_eq!(r.pairs_checked, pairs);
}

#[test]
fn relational_closure_matches_refinement_by_brute_force() {
    for n in 0..=2 {
        for x in 0..=2 {
            for y in 0..=2 {
                let base = FinSet::numbered(n);
                let (xs, ys) = (FinSet::numbered(x), FinSet::numbered(y));
                for k in enumerate_fns(&base, &xs) {
                    for h in enumerate_fns(&base, &ys) {
                        let closable = relations(x, y)
                            .iter()
                            .any(|r| r.after(&k.graph()).unwrap() == h.graph());
                        let (src, dst) = (RAnObj::new(k.clone()), RAnObj::new(h.clone()));
                        assert_eq!(ran_hom_exists(&src, &dst).unwrap(), closable);
                    }
                }
            }
        }
    }
}

#[test]
fn bound_is_enforced() {
    assert!(an_implies_ran_check(4, 3).is_err());
}

#[test]
fn empty_base_pairs_are_related() {
    let src = obj(0, 2, vec![]);
    let dst = obj(0, 0, vec![]);
    assert!(ran_hom_exists(&src, &dst).unwrap());
    let r = closing_relation(&src, &dst).unwrap();
    assert!(r.pairs().is_empty());
    assert!(closes(&r, src.arrow(), dst.arrow()).unwrap());
}

fn arb_pair() -> impl Strategy<Value = (RAnObj, RAnObj)> {
    (0..=4usize, 1..=4usize, 1..=4usize).prop_flat_map(|(n, x, y)| {
        (
            proptest::collection::vec(0..x, n).prop_map(move |t| obj(n, x, t)),
            proptest::collection::vec(0..y, n).prop_map(move |t| obj(n, y, t)),
        )
    })
}

proptest! {
    #[test]
    fn closing_relations_close_exactly((src, dst) in arb_pair()) {
        match closing_relation(&src, &dst) {
            Ok(r) => prop_assert!(closes(&r, src.arrow(), dst.arrow()).unwrap()),
            Err(_) => prop_assert!(!ran_hom_exists(&src, &dst).unwrap()),
        }
    }

    #[test]
    fn functions_imply_relations((src, dst) in arb_pair()) {
        let (k, h) = (src.arrow(), dst.arrow());
        if enumerate_fns(k.cod(), h.cod()).any(|f| f.after(k).unwrap() == *h) {
            prop_assert!(ran_hom_exists(&src, &dst).unwrap());
        }
    }
}
