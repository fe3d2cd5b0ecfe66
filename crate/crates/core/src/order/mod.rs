//! Finite preorders and posets, monotone maps, posetal reflection, and the
//! limits and colimits of the category of finite posets.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::{check_table, FinSet};
use crate::tables;

pub mod canon;
pub mod relation;
pub mod witness;

pub use relation::Order;
pub use witness::{
    coequalizer_divergence, pos_counterexample, CounterexampleBundle, DivergenceWitness,
};

/// A finite preorder: a labeled carrier with a reflexive, transitive `≤`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinPreorder {
    carrier: FinSet,
    order: Order,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrder {
    elements: Vec<String>,
    leq: Vec<Vec<u8>>,
}

impl Serialize for FinPreorder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawOrder {
            elements: self.carrier.labels().to_vec(),
            leq: self.order.matrix(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinPreorder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawOrder::deserialize(d)?;
        let carrier = FinSet::new(raw.elements).map_err(serde::de::Error::custom)?;
        if raw.leq.len() != carrier.len() {
            return Err(serde::de::Error::custom(Error::MatrixShape {
                n: carrier.len(),
            }));
        }
        let order = Order::from_matrix(&raw.leq).map_err(serde::de::Error::custom)?;
        FinPreorder::new(carrier, order).map_err(serde::de::Error::custom)
    }
}

impl FinPreorder {
    pub fn new(carrier: FinSet, order: Order) -> Result<Self> {
        if carrier.len() != order.len() {
            return Err(Error::MatrixShape { n: carrier.len() });
        }
        if let Some(x) = order.first_non_reflexive() {
            return Err(Error::NotReflexive {
                x: carrier.label(x).into(),
            });
        }
        if let Some((x, y, z)) = order.first_non_transitive() {
            return Err(Error::NotTransitive {
                x: carrier.label(x).into(),
                y: carrier.label(y).into(),
                z: carrier.label(z).into(),
            });
        }
        Ok(FinPreorder { carrier, order })
    }

    /// Elements labeled `0..n`.
    pub fn numbered(order: Order) -> Result<Self> {
        Self::new(FinSet::numbered(order.len()), order)
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order.leq(x, y)
    }

    pub fn label(&self, x: usize) -> &str {
        self.carrier.label(x)
    }

    pub fn is_poset(&self) -> bool {
        self.order.first_non_antisymmetric().is_none()
    }

    pub fn to_poset(&self) -> Result<FinPoset> {
        FinPoset::new(self.clone())
    }
}

/// A finite partially ordered set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FinPoset(FinPreorder);

impl<'de> Deserialize<'de> for FinPoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FinPoset::new(FinPreorder::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl FinPoset {
    pub fn new(pre: FinPreorder) -> Result<Self> {
        if let Some((x, y)) = pre.order.first_non_antisymmetric() {
            return Err(Error::NotAntisymmetric {
                x: pre.label(x).into(),
                y: pre.label(y).into(),
            });
        }
        Ok(FinPoset(pre))
    }

    pub fn from_parts(carrier: FinSet, order: Order) -> Result<Self> {
        FinPoset::new(FinPreorder::new(carrier, order)?)
    }

    pub fn numbered(order: Order) -> Result<Self> {
        FinPoset::new(FinPreorder::numbered(order)?)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        FinPoset::numbered(Order::chain(n)).expect("chains are posets")
    }

    pub fn as_preorder(&self) -> &FinPreorder {
        &self.0
    }

    pub fn into_preorder(self) -> FinPreorder {
        self.0
    }
}

impl Deref for FinPoset {
    type Target = FinPreorder;

    fn deref(&self) -> &FinPreorder {
        &self.0
    }
}

/// An order-preserving map between finite preorders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonotoneMap {
    dom: FinPreorder,
    cod: FinPreorder,
    table: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonotone {
    dom: FinPreorder,
    cod: FinPreorder,
    table: Vec<usize>,
}

impl<'de> Deserialize<'de> for MonotoneMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMonotone::deserialize(d)?;
        MonotoneMap::new(raw.dom, raw.cod, raw.table).map_err(serde::de::Error::custom)
    }
}

/// Whether `table` preserves order from `dom` to `cod`.
pub fn is_monotone(dom: &FinPreorder, cod: &FinPreorder, table: &[usize]) -> bool {
    check_table(table, dom.len(), cod.len()).is_ok() && dom.order.is_monotone(&cod.order, table)
}

impl MonotoneMap {
    pub fn new(dom: FinPreorder, cod: FinPreorder, table: Vec<usize>) -> Result<Self> {
        check_table(&table, dom.len(), cod.len())?;
        if let Some((x, y)) = dom.order.first_non_monotone(&cod.order, &table) {
            return Err(Error::NotMonotone {
                x: dom.label(x).into(),
                y: dom.label(y).into(),
                fx: cod.label(table[x]).into(),
                fy: cod.label(table[y]).into(),
            });
        }
        Ok(MonotoneMap { dom, cod, table })
    }

    pub fn identity(p: &FinPreorder) -> Self {
        MonotoneMap {
            dom: p.clone(),
            cod: p.clone(),
            table: (0..p.len()).collect(),
        }
    }

    pub fn dom(&self) -> &FinPreorder {
        &self.dom
    }

    pub fn cod(&self) -> &FinPreorder {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        if f.cod != self.dom {
            return Err(Error::CarrierMismatch(format!(
                "cannot compose: codomain {} differs from domain {}",
                f.cod.carrier, self.dom.carrier
            )));
        }
        Ok(MonotoneMap {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            table: tables::compose(&self.table, &f.table),
        })
    }

    pub fn is_surjective(&self) -> bool {
        tables::is_surjective(&self.table, self.cod.len())
    }

    pub fn is_injective(&self) -> bool {
        tables::is_injective(&self.table, self.cod.len())
    }

    /// Bijective, order-preserving and order-reflecting.
    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective()
            && self.is_injective()
            && self.dom.order.reflects_along(&self.cod.order, &self.table)
    }
}

fn joined_labels(carrier: &FinSet, class_of: &[usize]) -> FinSet {
    let k = tables::class_count(class_of);
    let mut members: Vec<Vec<&str>> = vec![Vec::new(); k];
    for (x, &c) in class_of.iter().enumerate() {
        members[c].push(carrier.label(x));
    }
    FinSet::new(members.into_iter().map(|m| m.join("=")).collect())
        .expect("classes are disjoint, so joined labels are distinct")
}

/// Quotient by the cycle equivalence `x ≤ y ≤ x`, with its unit.
pub fn posetal_reflection(x: &FinPreorder) -> (FinPoset, MonotoneMap) {
    let (class_of, order) = x.order.reflection();
    let carrier = joined_labels(&x.carrier, &class_of);
    let poset = FinPoset(FinPreorder { carrier, order });
    let unit = MonotoneMap {
        dom: x.clone(),
        cod: poset.0.clone(),
        table: class_of,
    };
    (poset, unit)
}

fn require_poset(p: &FinPreorder, role: &str) -> Result<()> {
    match p.order.first_non_antisymmetric() {
        Some((x, y)) => Err(Error::ShapeMismatch(format!(
            "{role} must be a poset but {} and {} form a cycle",
            p.label(x),
            p.label(y)
        ))),
        None => Ok(()),
    }
}

/// The pullback in posets: equal-image pairs `(x,y)` ordered componentwise.
pub fn pullback_pos(
    f: &MonotoneMap,
    g: &MonotoneMap,
) -> Result<(FinPoset, MonotoneMap, MonotoneMap)> {
    if f.cod != g.cod {
        return Err(Error::CodomainMismatch(format!(
            "{} vs {}",
            f.cod.carrier, g.cod.carrier
        )));
    }
    require_poset(&f.dom, "domain of the first map")?;
    require_poset(&g.dom, "domain of the second map")?;
    let (order, pairs) = f.dom.order.pullback(&f.table, &g.dom.order, &g.table)?;
    let carrier = FinSet::new(
        pairs
            .iter()
            .map(|&(x, y)| format!("({},{})", f.dom.label(x), g.dom.label(y)))
            .collect(),
    )?;
    let apex = FinPreorder { carrier, order };
    let left = MonotoneMap {
        dom: apex.clone(),
        cod: f.dom.clone(),
        table: pairs.iter().map(|p| p.0).collect(),
    };
    let right = MonotoneMap {
        dom: apex.clone(),
        cod: g.dom.clone(),
        table: pairs.iter().map(|p| p.1).collect(),
    };
    Ok((FinPoset(apex), left, right))
}

pub fn kernel_pair_pos(f: &MonotoneMap) -> Result<(FinPoset, MonotoneMap, MonotoneMap)> {
    pullback_pos(f, f)
}

fn check_parallel(f: &MonotoneMap, g: &MonotoneMap) -> Result<()> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::NotParallel(format!(
            "{} -> {} and {} -> {}",
            f.dom.carrier, f.cod.carrier, g.dom.carrier, g.cod.carrier
        )));
    }
    Ok(())
}

/// Coequalizer in preorders: the set coequalizer with the closure of the
/// image order.
pub fn coequalizer_preord(f: &MonotoneMap, g: &MonotoneMap) -> Result<(FinPreorder, MonotoneMap)> {
    check_parallel(f, g)?;
    let (class_of, order) = f.cod.order.coequalize_preorder(&f.table, &g.table);
    let carrier = joined_labels(&f.cod.carrier, &class_of);
    let target = FinPreorder { carrier, order };
    let proj = MonotoneMap {
        dom: f.cod.clone(),
        cod: target.clone(),
        table: class_of,
    };
    Ok((target, proj))
}

/// Coequalizer in posets: the preorder coequalizer followed by posetal
/// reflection.
pub fn coequalizer_pos(f: &MonotoneMap, g: &MonotoneMap) -> Result<(FinPoset, MonotoneMap)> {
    check_parallel(f, g)?;
    require_poset(&f.dom, "domain")?;
    require_poset(&f.cod, "codomain")?;
    let (class_of, order) = f.cod.order.coequalize_poset(&f.table, &g.table);
    let carrier = joined_labels(&f.cod.carrier, &class_of);
    let target = FinPreorder { carrier, order };
    let proj = MonotoneMap {
        dom: f.cod.clone(),
        cod: target.clone(),
        table: class_of,
    };
    Ok((FinPoset(target), proj))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosClass {
    pub epi: bool,
    pub regular_epi: bool,
}

/// Epi and regular-epi status of a monotone map between posets.
pub fn classify_pos(f: &MonotoneMap) -> Result<PosClass> {
    require_poset(&f.dom, "domain")?;
    require_poset(&f.cod, "codomain")?;
    Ok(PosClass {
        epi: f.is_surjective(),
        regular_epi: f.dom.order.is_regular_epi(&f.cod.order, &f.table),
    })
}

/// Posets on exactly `n` elements up to isomorphism, elements labeled `0..n`.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinPoset>> {
    canon::posets_of_size(n)?
        .into_iter()
        .map(FinPoset::numbered)
        .collect()
}

/// Every monotone map `x -> y`, in lexicographic table order.
pub fn enumerate_monotone(x: &FinPreorder, y: &FinPreorder) -> Vec<MonotoneMap> {
    x.order
        .monotone_maps(&y.order)
        .into_iter()
        .map(|table| MonotoneMap {
            dom: x.clone(),
            cod: y.clone(),
            table,
        })
        .collect()
}

/// Whether the two posets are isomorphic.
pub fn isomorphic(a: &FinPreorder, b: &FinPreorder) -> bool {
    canon::find_isomorphism(&a.order, &b.order).is_some()
}

/// Outcome of comparing `Pos(RX, P)` with `Pre(X, P)` through the unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub max_preorder: usize,
    pub max_poset: usize,
    pub pairs_checked: usize,
    pub maps_compared: usize,
    pub mismatches: usize,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Checks that precomposition with the reflection unit is a bijection
/// `Pos(RX, P) -> Pre(X, P)` for every preorder `X` and poset `P` up to the
/// given sizes (up to isomorphism on both sides).
pub fn reflection_adjunction_check(
    max_preorder: usize,
    max_poset: usize,
) -> Result<AdjunctionReport> {
    let mut preorders = Vec::new();
    for n in 0..=max_preorder {
        preorders.extend(canon::preorders_of_size(n)?);
    }
    let mut posets = Vec::new();
    for n in 0..=max_poset {
        posets.extend(canon::posets_of_size(n)?);
    }
    let mut report = AdjunctionReport {
        max_preorder,
        max_poset,
        pairs_checked: 0,
        maps_compared: 0,
        mismatches: 0,
    };
    for x in &preorders {
        let x = FinPreorder::numbered(x.clone())?;
        let (rx, unit) = posetal_reflection(&x);
        for p in &posets {
            let p = FinPreorder::numbered(p.clone())?;
            report.pairs_checked += 1;
            let direct = enumerate_monotone(&x, &p);
            let through: std::collections::BTreeSet<Vec<usize>> = enumerate_monotone(&rx, &p)
                .iter()
                .map(|u| u.after(&unit).map(|m| m.table))
                .collect::<Result<_>>()?;
            report.maps_compared += direct.len();
            let all_hit = direct.iter().all(|m| through.contains(&m.table));
            let injective = through.len() == enumerate_monotone(&rx, &p).len();
            if !(all_hit && injective && through.len() == direct.len()) {
                report.mismatches += 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinPreorder {
        FinPoset::chain(n).into_preorder()
    }

    fn mono(d: &FinPreorder, c: &FinPreorder, t: &[usize]) -> MonotoneMap {
        MonotoneMap::new(d.clone(), c.clone(), t.to_vec()).unwrap()
    }

    #[test]
    fn is_monotone_examples() {
        let c2 = chain(2);
        assert!(is_monotone(&c2, &c2, &[0, 1]));
        assert!(is_monotone(&c2, &c2, &[1, 1]));
        assert!(!is_monotone(&c2, &c2, &[1, 0]));
        assert!(matches!(
            MonotoneMap::new(c2.clone(), c2.clone(), vec![1, 0]),
            Err(Error::NotMonotone { .. })
        ));
    }

    #[test]
    fn reflection_examples() {
        let c3 = chain(3);
        let (p, unit) = posetal_reflection(&c3);
        assert_eq!(p.len(), 3);
        assert!(unit.is_isomorphism());
        let cyc = FinPreorder::new(
            FinSet::from_labels(["x", "y"]).unwrap(),
            Order::generated(2, [(0, 1), (1, 0)]),
        )
        .unwrap();
        let (p, unit) = posetal_reflection(&cyc);
        assert_eq!(p.carrier().labels(), &["x=y"]);
        assert_eq!(unit.table(), &[0, 0]);
    }

    #[test]
    fn pullback_examples() {
        let c3 = chain(3);
        let f = mono(&chain(2), &c3, &[0, 2]);
        let (apex, _, right) = pullback_pos(&f, &MonotoneMap::identity(&c3)).unwrap();
        assert!(isomorphic(&apex, &chain(2)));
        assert!(right.is_injective());
        let id = MonotoneMap::identity(&c3);
        let (apex, l, r) = pullback_pos(&id, &id).unwrap();
        assert_eq!(apex.len(), 3);
        assert!(isomorphic(&apex, &c3));
        assert_eq!(l.table(), r.table());
    }

    fn two_chains() -> (MonotoneMap, MonotoneMap) {
        let x =
            FinPreorder::new(FinSet::from_labels(["p", "q"]).unwrap(), Order::discrete(2)).unwrap();
        let y = FinPreorder::numbered(Order::generated(4, [(0, 1), (2, 3)])).unwrap();
        (mono(&x, &y, &[1, 3]), mono(&x, &y, &[2, 0]))
    }

    #[test]
    fn coequalizer_preord_examples() {
        let (f, g) = two_chains();
        let (q, _) = coequalizer_preord(&f, &f).unwrap();
        assert!(isomorphic(&q, f.cod()));
        let (q, proj) = coequalizer_preord(&f, &g).unwrap();
        assert_eq!(q.len(), 2);
        assert!(q.leq(0, 1) && q.leq(1, 0));
        assert_eq!(proj.table(), &[0, 1, 1, 0]);
        assert_eq!(q.carrier().labels(), &["0=3", "1=2"]);
        let pt = FinPreorder::numbered(Order::discrete(1)).unwrap();
        let c2 = chain(2);
        let (q, _) = coequalizer_preord(&mono(&pt, &c2, &[0]), &mono(&pt, &c2, &[1])).unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn coequalizer_pos_examples() {
        let (f, g) = two_chains();
        let (q, proj) = coequalizer_pos(&f, &f).unwrap();
        assert!(proj.is_isomorphism());
        assert_eq!(q.len(), 4);
        let (q, _) = coequalizer_pos(&f, &g).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.carrier().labels(), &["0=1=2=3"]);
    }

    #[test]
    fn classify_examples() {
        let c2 = chain(2);
        let id = MonotoneMap::identity(&c2);
        assert_eq!(
            classify_pos(&id).unwrap(),
            PosClass {
                epi: true,
                regular_epi: true
            }
        );
        let anti = FinPreorder::numbered(Order::discrete(2)).unwrap();
        let u = mono(&anti, &c2, &[0, 1]);
        assert_eq!(
            classify_pos(&u).unwrap(),
            PosClass {
                epi: true,
                regular_epi: false
            }
        );
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_posets(1).unwrap().len(), 1);
        assert_eq!(enumerate_posets(2).unwrap().len(), 2);
        assert_eq!(enumerate_posets(3).unwrap().len(), 5);
        let c2 = chain(2);
        assert_eq!(enumerate_monotone(&c2, &chain(3)).len(), 6);
    }

    #[test]
    fn json_rejects_bad_matrices() {
        let bad = r#"{"elements":["a","b","c"],"leq":[[1,1,0],[0,1,1],[0,0,1]]}"#;
        let err = serde_json::from_str::<FinPreorder>(bad)
            .unwrap_err()
            .to_string();
        assert!(err.contains("offending triple (a, b, c)"), "{err}");
        let bad = r#"{"elements":["a"],"leq":[[0]]}"#;
        let err = serde_json::from_str::<FinPreorder>(bad)
            .unwrap_err()
            .to_string();
        assert!(err.contains("not reflexive"), "{err}");
        let cyc = r#"{"elements":["a","b"],"leq":[[1,1],[1,1]]}"#;
        assert!(serde_json::from_str::<FinPreorder>(cyc).is_ok());
        assert!(serde_json::from_str::<FinPoset>(cyc).is_err());
    }
}
