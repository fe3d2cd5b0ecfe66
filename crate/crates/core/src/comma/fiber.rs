//! Fibers of the projection onto shapes, and the correspondence between
//! cones under the base and points of the limit.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::coslice::Under;
use super::syn::{decorations, CommaCat, Indexed};
use crate::enumcat::EnumCat;
use crate::error::{Error, Result};
use crate::finset::{limit_of_diagram, Cone, Diagram, FinFn, FinSet};
use crate::order::{FinPoset, Order};
use crate::tables::{self, Tables};

/// Every coslice object `A -> n` with `n <= max_values`, not only one per
/// isomorphism class: fibers compare against plain diagrams of sets.
pub fn all_unders(base: usize, max_values: usize) -> Vec<Under> {
    (0..=max_values)
        .flat_map(|size| Tables::new(base, size).map(move |arrow| Under { size, arrow }))
        .collect()
}

/// A natural transformation between decorations of one shape whose
/// components are coslice morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NatTrans {
    pub dom: Arc<Indexed>,
    pub cod: Arc<Indexed>,
    pub comps: Vec<Vec<usize>>,
}

/// The fiber over a shape `P`: functors `P -> A/FinSet` with value sets of
/// at most `max_values` points, and natural transformations.
#[derive(Clone, Debug)]
pub struct FiberCat {
    shape: Arc<Order>,
    base: usize,
    max_values: usize,
    objects: Vec<Arc<Indexed>>,
}

impl FiberCat {
    pub const MAX_SHAPE: usize = 4;
    pub const MAX_BASE: usize = 2;
    pub const MAX_VALUES: usize = 2;

    pub fn shape(&self) -> &Order {
        &self.shape
    }

    pub fn base(&self) -> usize {
        self.base
    }
}

/// The fiber over `p` of functors into the coslice under `a`.
pub fn fiber(p: &FinPoset, a: &FinSet, max_values: usize) -> Result<FiberCat> {
    for (what, requested, limit) in [
        ("fiber shape size", p.len(), FiberCat::MAX_SHAPE),
        ("fiber base size", a.len(), FiberCat::MAX_BASE),
        ("fiber value-set size", max_values, FiberCat::MAX_VALUES),
    ] {
        if requested > limit {
            return Err(Error::BoundExceeded {
                what: what.into(),
                requested,
                limit,
                estimate: format!(
                    "{}^{} decorations before maps are chosen",
                    all_unders(a.len().min(FiberCat::MAX_BASE), max_values.min(3)).len(),
                    p.len()
                ),
            });
        }
    }
    let shape = Arc::new(p.order().clone());
    let objects = decorations(&shape, &all_unders(a.len(), max_values))
        .into_iter()
        .map(Arc::new)
        .collect();
    Ok(FiberCat {
        shape,
        base: a.len(),
        max_values,
        objects,
    })
}

fn natural_transformations(a: &Indexed, b: &Indexed) -> Vec<Vec<Vec<usize>>> {
    let n = a.len();
    let mut out = Vec::new();
    let mut cur: Vec<Vec<usize>> = vec![Vec::new(); n];
    extend_nat(a, b, &mut cur, 0, &mut out);
    out
}

fn extend_nat(
    a: &Indexed,
    b: &Indexed,
    cur: &mut Vec<Vec<usize>>,
    i: usize,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if i == cur.len() {
        out.push(cur.clone());
        return;
    }
    for c in a.deco[i].maps_to(&b.deco[i]) {
        let natural = (0..i).all(|j| {
            let down = !a.shape.leq(j, i)
                || tables::compose(b.map(j, i), &cur[j]) == tables::compose(&c, a.map(j, i));
            let up = !a.shape.leq(i, j)
                || tables::compose(b.map(i, j), &c) == tables::compose(&cur[j], a.map(i, j));
            down && up
        });
        if natural {
            cur[i] = c;
            extend_nat(a, b, cur, i + 1, out);
        }
    }
}

impl EnumCat for FiberCat {
    type Obj = Arc<Indexed>;
    type Mor = NatTrans;

    fn name(&self) -> String {
        "fiber".into()
    }

    fn bound(&self) -> usize {
        self.max_values
    }

    fn objects(&self) -> &[Arc<Indexed>] {
        &self.objects
    }

    fn level(&self, a: &Arc<Indexed>) -> usize {
        a.deco.iter().map(|u| u.size).sum()
    }

    fn hom(&self, a: &Arc<Indexed>, b: &Arc<Indexed>) -> Vec<NatTrans> {
        natural_transformations(a, b)
            .into_iter()
            .map(|comps| NatTrans {
                dom: a.clone(),
                cod: b.clone(),
                comps,
            })
            .collect()
    }

    fn dom(&self, f: &NatTrans) -> Arc<Indexed> {
        f.dom.clone()
    }

    fn cod(&self, f: &NatTrans) -> Arc<Indexed> {
        f.cod.clone()
    }

    fn compose(&self, g: &NatTrans, f: &NatTrans) -> NatTrans {
        NatTrans {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            comps: g
                .comps
                .iter()
                .zip(&f.comps)
                .map(|(gc, fc)| tables::compose(gc, fc))
                .collect(),
        }
    }

    fn identity(&self, a: &Arc<Indexed>) -> NatTrans {
        NatTrans {
            dom: a.clone(),
            cod: a.clone(),
            comps: a.deco.iter().map(|u| (0..u.size).collect()).collect(),
        }
    }

    fn is_iso(&self, f: &NatTrans) -> bool {
        f.comps
            .iter()
            .zip(&f.cod.deco)
            .all(|(c, u)| c.len() == u.size && tables::is_injective(c, u.size))
    }

    fn describe_obj(&self, a: &Arc<Indexed>) -> Value {
        json!(a.to_syn())
    }

    fn describe_mor(&self, f: &NatTrans) -> Value {
        json!({ "components": f.comps })
    }
}

/// The diagram of sets underlying a decoration, forgetting the base.
pub fn underlying_diagram(x: &Indexed) -> Diagram {
    let shape = FinPoset::numbered((*x.shape).clone()).expect("shapes are posets");
    let obj: Vec<FinSet> = x.deco.iter().map(|u| FinSet::numbered(u.size)).collect();
    let arr = x
        .shape
        .strict_pairs()
        .into_iter()
        .map(|(p, q)| {
            let f = FinFn::new(obj[p].clone(), obj[q].clone(), x.map(p, q).to_vec())
                .expect("tables are in range");
            ((p, q), f)
        })
        .collect();
    Diagram::new(shape, obj, arr).expect("decorations are functors")
}

/// The cone from the base given by the decoration's arrows.
pub fn decoration_cone(x: &Indexed, base: &FinSet) -> Cone {
    let d = underlying_diagram(x);
    let legs = x
        .deco
        .iter()
        .enumerate()
        .map(|(p, u)| FinFn::new(base.clone(), d.obj(p).clone(), u.arrow.clone()))
        .collect::<Result<Vec<_>>>()
        .expect("arrows are in range");
    Cone::new(base.clone(), d, legs).expect("decorations commute under the base")
}

/// The point `apex -> lim F` through which a cone factors.
pub fn cone_to_point(c: &Cone) -> Result<FinFn> {
    let d = c.diagram();
    let (lim, _) = limit_of_diagram(d)?;
    let families = d.compatible_families();
    let table = (0..c.apex().len())
        .map(|a| {
            let fam: Vec<usize> = c.legs().iter().map(|leg| leg.apply(a)).collect();
            families.binary_search(&fam).map_err(|_| {
                Error::NotNatural(format!(
                    "the legs at {} do not form a compatible family",
                    c.apex().label(a)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FinFn::new(c.apex().clone(), lim, table)
}

/// The cone obtained by composing a point of the limit with the limit
/// projections.
pub fn point_to_cone(a: &FinFn, d: &Diagram) -> Result<Cone> {
    let (lim, cone) = limit_of_diagram(d)?;
    if a.cod() != &lim {
        return Err(Error::CodomainMismatch(format!(
            "the point lands in {} but the limit is {}",
            a.cod(),
            lim
        )));
    }
    let legs = cone
        .legs()
        .iter()
        .map(|leg| leg.after(a))
        .collect::<Result<Vec<_>>>()?;
    Cone::new(a.dom().clone(), d.clone(), legs)
}

/// Every cone with the given apex over `d`, by brute force over families of
/// functions.
pub fn enumerate_cones(apex: &FinSet, d: &Diagram) -> Vec<Cone> {
    let n = d.shape().len();
    let mut out = Vec::new();
    let mut legs: Vec<FinFn> = Vec::with_capacity(n);
    extend_cones(apex, d, &mut legs, &mut out);
    out
}

fn extend_cones(apex: &FinSet, d: &Diagram, legs: &mut Vec<FinFn>, out: &mut Vec<Cone>) {
    let i = legs.len();
    if i == d.shape().len() {
        if let Ok(c) = Cone::new(apex.clone(), d.clone(), legs.clone()) {
            out.push(c);
        }
        return;
    }
    for t in Tables::new(apex.len(), d.obj(i).len()) {
        let leg = FinFn::new(apex.clone(), d.obj(i).clone(), t).expect("tables are in range");
        let natural = (0..i).all(|j| {
            (!d.shape().leq(j, i) || d.arr(j, i).after(&legs[j]).ok().as_ref() == Some(&leg))
                && (!d.shape().leq(i, j) || d.arr(i, j).after(&leg).ok().as_ref() == Some(&legs[j]))
        });
        if natural {
            legs.push(leg);
            extend_cones(apex, d, legs, out);
            legs.pop();
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConePointReport {
    pub max_shape: usize,
    pub max_values: usize,
    pub max_base: usize,
    pub diagrams: usize,
    pub cones: usize,
    pub points: usize,
    pub count_mismatches: usize,
    pub round_trip_failures: usize,
}

impl ConePointReport {
    pub fn passed(&self) -> bool {
        self.count_mismatches == 0 && self.round_trip_failures == 0
    }
}

/// `|Cone(A, F)| = |Hom(A, lim F)|` with both round trips, for every
/// diagram over a poset of at most `max_shape` elements with value sets of
/// at most `max_values` points, and every base of at most `max_base` points.
pub fn cone_point_check(
    max_shape: usize,
    max_values: usize,
    max_base: usize,
) -> Result<ConePointReport> {
    let mut report = ConePointReport {
        max_shape,
        max_values,
        max_base,
        ..Default::default()
    };
    let sets = all_unders(0, max_values);
    for shape in crate::order::canon::posets_up_to(max_shape)? {
        let shape = Arc::new(shape);
        for x in decorations(&shape, &sets) {
            let d = underlying_diagram(&x);
            let (lim, _) = limit_of_diagram(&d)?;
            report.diagrams += 1;
            for n in 0..=max_base {
                let apex = FinSet::numbered(n);
                let cones = enumerate_cones(&apex, &d);
                let points: Vec<FinFn> = Tables::new(n, lim.len())
                    .map(|t| FinFn::new(apex.clone(), lim.clone(), t))
                    .collect::<Result<_>>()?;
                report.cones += cones.len();
                report.points += points.len();
                if cones.len() != points.len() {
                    report.count_mismatches += 1;
                }
                for c in &cones {
                    let back = point_to_cone(&cone_to_point(c)?, &d)?;
                    if &back != c {
                        report.round_trip_failures += 1;
                    }
                }
                for a in &points {
                    if &cone_to_point(&point_to_cone(a, &d)?)? != a {
                        report.round_trip_failures += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub shape: FinPoset,
    pub base_size: usize,
    pub max_values: usize,
    pub fiber_objects: usize,
    pub coslice_objects: usize,
    pub object_bijection: bool,
    pub hom_pairs_compared: usize,
    pub hom_mismatches: usize,
    pub agrees: bool,
}

/// An object of the coslice of `ΔA` in diagrams over a fixed shape,
/// presented through the limit: a diagram of sets, its compatible families,
/// and a point `A -> lim F` as a table into them.
struct PointedDiagram {
    diagram: Indexed,
    families: Vec<Vec<usize>>,
    point: Vec<usize>,
}

fn forget_base(x: &Indexed) -> Indexed {
    Indexed {
        shape: x.shape.clone(),
        deco: x
            .deco
            .iter()
            .map(|u| Under {
                size: u.size,
                arrow: Vec::new(),
            })
            .collect(),
        maps: x.maps.clone(),
    }
}

/// Compares the fiber over `p` with the coslice of `ΔA` in diagrams over
/// `p`, whose objects are computed independently as diagrams of sets with
/// a point `A -> lim F`, and whose morphisms are natural transformations
/// `β` with `lim β ∘ a = a'`.
pub fn fiber_as_coslice_check(p: &FinPoset, a: &FinSet, max_values: usize) -> Result<FiberReport> {
    let fib = fiber(p, a, max_values)?;
    let shape = Arc::new(p.order().clone());

    let mut coslice: Vec<PointedDiagram> = Vec::new();
    for x in decorations(&shape, &all_unders(0, max_values)) {
        let families = underlying_diagram(&x).compatible_families();
        for point in Tables::new(a.len(), families.len()) {
            coslice.push(PointedDiagram {
                diagram: x.clone(),
                families: families.clone(),
                point,
            });
        }
    }

    // objects: decoration -> (diagram, point) via the cone/point correspondence
    let mut image = Vec::with_capacity(fib.objects().len());
    for x in fib.objects() {
        let point = cone_to_point(&decoration_cone(x, a))?;
        let plain = forget_base(x);
        image.push(
            coslice
                .iter()
                .position(|y| y.diagram == plain && y.point.as_slice() == point.table()),
        );
    }
    let hit: std::collections::BTreeSet<usize> = image.iter().flatten().copied().collect();
    let object_bijection =
        image.iter().all(Option::is_some) && hit.len() == image.len() && hit.len() == coslice.len();

    let mut hom_pairs = 0;
    let mut mismatches = 0;
    if object_bijection {
        for (i, x) in fib.objects().iter().enumerate() {
            for (j, y) in fib.objects().iter().enumerate() {
                let (src, dst) = (&coslice[image[i].unwrap()], &coslice[image[j].unwrap()]);
                let via_limits = natural_transformations(&src.diagram, &dst.diagram)
                    .into_iter()
                    .filter(|beta| {
                        let lim_beta: Vec<usize> = src
                            .families
                            .iter()
                            .map(|fam| {
                                let moved: Vec<usize> =
                                    fam.iter().enumerate().map(|(q, &v)| beta[q][v]).collect();
                                dst.families
                                    .binary_search(&moved)
                                    .expect("natural maps preserve compatible families")
                            })
                            .collect();
                        tables::compose(&lim_beta, &src.point) == dst.point
                    })
                    .count();
                hom_pairs += 1;
                if fib.hom(x, y).len() != via_limits {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(FiberReport {
        shape: p.clone(),
        base_size: a.len(),
        max_values,
        fiber_objects: fib.objects().len(),
        coslice_objects: coslice.len(),
        object_bijection,
        hom_pairs_compared: hom_pairs,
        hom_mismatches: mismatches,
        agrees: object_bijection && mismatches == 0,
    })
}

/// Morphisms of the comma instance lying over an identity shape map are
/// identities: counts `(pairs checked, violations)` over all test objects.
pub fn over_identity_check(cat: &CommaCat) -> (usize, usize) {
    let objs = cat.objects();
    let mut checked = 0;
    let mut violations = 0;
    for a in objs {
        for b in objs.iter().filter(|b| b.shape == a.shape) {
            checked += 1;
            let over_id = cat
                .hom(a, b)
                .into_iter()
                .filter(|f| f.table.iter().enumerate().all(|(i, &v)| i == v))
                .count();
            let expected = usize::from(a == b);
            if over_id != expected {
                violations += 1;
            }
        }
    }
    (checked, violations)
}
