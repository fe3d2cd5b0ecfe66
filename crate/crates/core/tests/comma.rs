use std::sync::Arc;

use nogo_core::comma::fiber::{enumerate_cones, underlying_diagram};
use nogo_core::comma::{
    check_c1, check_c2, cone_point_check, coproduct_nonpreservation_witness, fiber,
    fiber_as_coslice_check, lift_counterexample, over_identity_check, projection_s,
    projection_s_mor, proof_diagrams, CommaCat, CoslObj, SynMor, SynObj,
};
use nogo_core::enumcat::{audit_regularity, check_axioms, EnumCat};
use nogo_core::finset::{limit_of_diagram, FinFn, FinSet};
use nogo_core::order::{enumerate_posets, pos_counterexample, FinPoset, MonotoneMap, Order};
use nogo_core::Error;
use proptest::prelude::*;

fn point(n: usize) -> CoslObj {
    CoslObj::identity_on(&FinSet::numbered(n))
}

fn constant(p: &FinPoset) -> SynObj {
    SynObj::constant(p.clone(), &point(1))
}

fn four_shape_comma() -> CommaCat {
    CommaCat::with_limits(1, 3, 4, 2).unwrap()
}

#[test]
fn cones_correspond_to_points_of_the_limit() {
    let r = cone_point_check(3, 2, 2).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.diagrams > 0 && r.cones > 0);
    assert_eq!(r.cones, r.points);
}

#[test]
fn cone_counts_by_hand() {
    // the span 1 <- 2 -> 1 ... as the chain 0 <= 1 with obj = {2, 1}: cones
    // from a point are elements of obj(0), and the limit has two points
    let d = nogo_core::finset::Diagram::new(
        FinPoset::chain(2),
        vec![FinSet::numbered(2), FinSet::numbered(1)],
        [(
            (0, 1),
            FinFn::new(FinSet::numbered(2), FinSet::numbered(1), vec![0, 0]).unwrap(),
        )]
        .into_iter()
        .collect(),
    )
    .unwrap();
    let (lim, _) = limit_of_diagram(&d).unwrap();
    assert_eq!(lim.len(), 2);
    assert_eq!(enumerate_cones(&FinSet::numbered(1), &d).len(), 2);
    assert_eq!(enumerate_cones(&FinSet::numbered(2), &d).len(), 4);
}

#[test]
fn fibers_are_coslices_of_diagrams() {
    for n in 0..=2 {
        for p in enumerate_posets(n).unwrap() {
            for a in 0..=1 {
                let r = fiber_as_coslice_check(&p, &FinSet::numbered(a), 2).unwrap();
                assert!(r.agrees, "{r:?}");
                assert_eq!(r.fiber_objects, r.coslice_objects);
            }
        }
    }
    let chain = fiber_as_coslice_check(&FinPoset::chain(2), &FinSet::numbered(1), 2).unwrap();
    // values: {*}, and {x, y} pointed at x or at y; a pointed map between
    // them is forced except between two-point sets, where it has two choices
    assert_eq!(chain.fiber_objects, 1 + 2 + 2 + 4 * 2);
}

#[test]
fn fiber_bounds_are_enforced() {
    assert!(matches!(
        fiber(&FinPoset::chain(5), &FinSet::numbered(1), 2),
        Err(Error::BoundExceeded { .. })
    ));
}

#[test]
fn fiber_objects_project_onto_the_shape() {
    let p = FinPoset::chain(2);
    let fib = fiber(&p, &FinSet::numbered(1), 2).unwrap();
    for x in fib.objects() {
        assert_eq!(projection_s(&x.to_syn()).order(), p.order());
        let d = underlying_diagram(x);
        assert_eq!(d.shape().order(), p.order());
    }
    check_axioms(&fib).unwrap();
}

#[test]
fn maps_over_identities_are_identities() {
    let (checked, violations) = over_identity_check(&CommaCat::new(1, 2).unwrap());
    assert!(checked > 0);
    assert_eq!(violations, 0);
}

#[test]
fn lifted_square_projects_to_the_poset_square() {
    let b = lift_counterexample(&FinSet::numbered(1), &four_shape_comma()).unwrap();
    assert!(b.verified(), "{b:?}");
    let pos = pos_counterexample();
    assert_eq!(projection_s(&b.pullback), pos.pullback);
    assert_eq!(projection_s_mor(&b.u_prime), pos.u_prime);
    assert_eq!(projection_s_mor(&b.p), pos.p);
}

#[test]
fn lifting_needs_room_for_four_element_shapes() {
    let small = CommaCat::new(1, 2).unwrap();
    assert!(lift_counterexample(&FinSet::numbered(1), &small).is_err());
}

#[test]
fn proof_obligations_hold_on_the_main_diagrams() {
    let cat = four_shape_comma();
    let d = proof_diagrams().unwrap();
    let (k, a, b, c, pb) = (
        constant(&d.kernel),
        constant(&d.a),
        constant(&d.b),
        constant(&d.c),
        constant(&d.pullback),
    );
    assert!(check_c1(&cat, (&d.k0, &d.k1, &d.p), [&k, &a, &b]).unwrap());
    assert!(check_c2(&cat, (&d.p, &d.i, &d.to_a, &d.u_prime), [&pb, &a, &c, &b]).unwrap());

    // a non-surjective cocone: p followed by the inclusion into a longer chain
    let long = FinPoset::chain(4);
    let widened = MonotoneMap::new(
        d.a.as_preorder().clone(),
        long.as_preorder().clone(),
        d.p.table().to_vec(),
    )
    .unwrap();
    assert!(!check_c1(&cat, (&d.k0, &d.k1, &widened), [&k, &a, &constant(&long)]).unwrap());

    // an apex with a duplicated element
    let fat = FinPoset::numbered(Order::discrete(3)).unwrap();
    let dup = |m: &MonotoneMap, to: &FinPoset| {
        let mut t = m.table().to_vec();
        t.push(t[0]);
        MonotoneMap::new(fat.as_preorder().clone(), to.as_preorder().clone(), t).unwrap()
    };
    let (l, r) = (dup(&d.to_a, &d.a), dup(&d.u_prime, &d.c));
    assert!(!check_c2(&cat, (&d.p, &d.i, &l, &r), [&constant(&fat), &a, &c, &b]).unwrap());
}

#[test]
fn decorations_must_commute_strictly() {
    let cat = four_shape_comma();
    let d = proof_diagrams().unwrap();
    let twisted = SynObj::constant(
        d.b.clone(),
        &CoslObj::from_arrow(
            FinFn::new(FinSet::numbered(1), FinSet::numbered(2), vec![1]).unwrap(),
        ),
    );
    let (k, a) = (constant(&d.kernel), constant(&d.a));
    assert!(matches!(
        check_c1(&cat, (&d.k0, &d.k1, &d.p), [&k, &a, &twisted]),
        Err(Error::NonCommuting(_))
    ));
    let other_base = SynObj::constant(d.b.clone(), &point(2));
    assert!(matches!(
        check_c1(&cat, (&d.k0, &d.k1, &d.p), [&k, &a, &other_base]),
        Err(Error::CarrierMismatch(_))
    ));
}

#[test]
fn naming_does_not_preserve_coproducts() {
    for n in 0..=2 {
        let w = coproduct_nonpreservation_witness(&FinSet::numbered(n), 2).unwrap();
        assert!(w.verified(), "base {n}: {w:?}");
    }
}

#[test]
fn comma_is_clean_until_four_element_shapes() {
    for bound in 0..=2 {
        let r = audit_regularity(&CommaCat::new(1, bound).unwrap())
            .unwrap()
            .report;
        assert!(r.is_clean(), "bound {bound}");
    }
}

#[test]
fn synthetic_objects_validate_their_equations() {
    let text = r#"{"shape":{"elements":["p","q"],"leq":[[1,1],[0,1]]},
        "base":{"labels":["a"]},
        "obj":{"p":{"dom":{"labels":["a"]},"cod":{"labels":["x","y"]},"table":[0]},
               "q":{"dom":{"labels":["a"]},"cod":{"labels":["z"]},"table":[0]}},
        "arr":{"p<=q":{"dom":{"labels":["x","y"]},"cod":{"labels":["z"]},"table":[0,0]}}}"#;
    let x: SynObj = serde_json::from_str(text).unwrap();
    assert_eq!(x.shape().len(), 2);
    let broken = text.replace(
        r#""cod":{"labels":["x","y"]},"table":[0]"#,
        r#""cod":{"labels":["x","y"]},"table":[1]"#,
    );
    assert!(
        serde_json::from_str::<SynObj>(&broken).is_ok(),
        "still commutes into a point"
    );
    let off_base = text
        .replace(
            r#""cod":{"labels":["z"]},"table":[0]}},"#,
            r#""cod":{"labels":["z","w"]},"table":[1]}},"#,
        )
        .replace(
            r#""cod":{"labels":["z"]},"table":[0,0]"#,
            r#""cod":{"labels":["z","w"]},"table":[0,0]"#,
        );
    let err = serde_json::from_str::<SynObj>(&off_base)
        .unwrap_err()
        .to_string();
    assert!(err.contains("p<=q") || err.contains("arr"), "{err}");
    let no_arrow = text.replace(r#""p<=q""#, r#""q<=p""#);
    assert!(serde_json::from_str::<SynObj>(&no_arrow).is_err());
}

fn comma_objects() -> Vec<Arc<nogo_core::comma::Indexed>> {
    CommaCat::new(1, 1).unwrap().objects().to_vec()
}

proptest! {
    #[test]
    fn projection_is_a_functor(i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let cat = CommaCat::new(1, 1).unwrap();
        let objs = comma_objects();
        let (x, y, z) = (&objs[i % objs.len()], &objs[j % objs.len()], &objs[k % objs.len()]);
        for f in cat.hom(x, y) {
            for g in cat.hom(y, z) {
                let (sf, sg): (SynMor, SynMor) = (f.to_mor(), g.to_mor());
                let composite = sg.after(&sf).unwrap();
                prop_assert_eq!(
                    projection_s_mor(&composite),
                    projection_s_mor(&sg).after(&projection_s_mor(&sf)).unwrap()
                );
                prop_assert_eq!(cat.compose(&g, &f).to_mor(), composite);
            }
        }
        let id = SynMor::identity(&x.to_syn());
        prop_assert_eq!(projection_s_mor(&id), MonotoneMap::identity(projection_s(&x.to_syn()).as_preorder()));
    }
}
