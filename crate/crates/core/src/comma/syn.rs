//! The strict comma category of posets decorated by functors into the
//! coslice: objects are `(P, F: P -> A/FinSet)`, morphisms are monotone
//! maps `h` with `G ∘ h = F` on the nose.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::coslice::{skeleton, CoslMor, CoslObj, Under};
use crate::enumcat::{EnumCat, Span};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::order::{canon, FinPoset, MonotoneMap, Order};
use crate::tables::{self, Tables};

/// A labeled synthetic object: a functor from `shape` into the coslice
/// under `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynObj {
    shape: FinPoset,
    base: FinSet,
    obj: Vec<CoslObj>,
    arr: BTreeMap<(usize, usize), CoslMor>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSynObj {
    shape: FinPoset,
    base: FinSet,
    obj: BTreeMap<String, FinFn>,
    arr: BTreeMap<String, FinFn>,
}

impl Serialize for SynObj {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let label = |p: usize| self.shape.label(p).to_string();
        RawSynObj {
            shape: self.shape.clone(),
            base: self.base.clone(),
            obj: self
                .obj
                .iter()
                .enumerate()
                .map(|(p, o)| (label(p), o.arrow().clone()))
                .collect(),
            arr: self
                .arr
                .iter()
                .filter(|((p, q), _)| p != q)
                .map(|(&(p, q), m)| (format!("{}<={}", label(p), label(q)), m.map().clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SynObj {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSynObj::deserialize(d)?;
        SynObj::from_raw(raw).map_err(serde::de::Error::custom)
    }
}

impl SynObj {
    fn from_raw(raw: RawSynObj) -> Result<Self> {
        let shape = raw.shape;
        let mut obj = Vec::with_capacity(shape.len());
        for p in 0..shape.len() {
            let arrow = raw.obj.get(shape.label(p)).ok_or_else(|| {
                Error::ShapeMismatch(format!("no object given for element {}", shape.label(p)))
            })?;
            obj.push(CoslObj::new(raw.base.clone(), arrow.clone())?);
        }
        if let Some(extra) = raw
            .obj
            .keys()
            .find(|k| shape.carrier().index_of(k).is_none())
        {
            return Err(Error::ShapeMismatch(format!(
                "object given for unknown element {extra}"
            )));
        }
        let mut maps = BTreeMap::new();
        for (key, map) in raw.arr {
            let (p, q) = split_relation(&shape, &key)?;
            maps.insert((p, q), map);
        }
        SynObj::new(shape, raw.base, obj, maps)
    }

    /// `arr` holds the map for each strict relation `p < q`; identities may
    /// be omitted. Validation names the first failing equation.
    pub fn new(
        shape: FinPoset,
        base: FinSet,
        obj: Vec<CoslObj>,
        mut maps: BTreeMap<(usize, usize), FinFn>,
    ) -> Result<Self> {
        let n = shape.len();
        if obj.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{} objects for a shape of {n} elements",
                obj.len()
            )));
        }
        let label = |p: usize| shape.label(p).to_string();
        for (p, o) in obj.iter().enumerate() {
            if o.base() != &base {
                return Err(Error::CarrierMismatch(format!(
                    "obj({}) lives under a different base",
                    label(p)
                )));
            }
        }
        for p in 0..n {
            maps.entry((p, p))
                .or_insert_with(|| FinFn::identity(obj[p].carrier()));
        }
        let mut arr = BTreeMap::new();
        for (&(p, q), m) in &maps {
            if p >= n || q >= n || !shape.leq(p, q) {
                return Err(Error::NotFunctorial(format!(
                    "arrow given for a non-relation ({p}, {q})"
                )));
            }
            let mor =
                CoslMor::new(obj[p].clone(), obj[q].clone(), m.clone()).map_err(|e| match e {
                    Error::NonCommuting(_) => Error::NonCommuting(format!(
                        "arr({p}<={q}) . obj({p}) != obj({q})",
                        p = label(p),
                        q = label(q)
                    )),
                    other => other,
                })?;
            if p == q && m != &FinFn::identity(obj[p].carrier()) {
                return Err(Error::NotFunctorial(format!(
                    "arr({0}<={0}) is not the identity",
                    label(p)
                )));
            }
            arr.insert((p, q), mor);
        }
        for (p, q) in shape.order().strict_pairs() {
            if !arr.contains_key(&(p, q)) {
                return Err(Error::NotFunctorial(format!(
                    "missing arr({}<={})",
                    label(p),
                    label(q)
                )));
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if shape.leq(p, q) && shape.leq(q, r) {
                        let composite = arr[&(q, r)].map().after(arr[&(p, q)].map())?;
                        if &composite != arr[&(p, r)].map() {
                            return Err(Error::NotFunctorial(format!(
                                "arr({q}<={r}) . arr({p}<={q}) != arr({p}<={r})",
                                p = label(p),
                                q = label(q),
                                r = label(r)
                            )));
                        }
                    }
                }
            }
        }
        Ok(SynObj {
            shape,
            base,
            obj,
            arr,
        })
    }

    pub fn shape(&self) -> &FinPoset {
        &self.shape
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }

    pub fn obj(&self, p: usize) -> &CoslObj {
        &self.obj[p]
    }

    pub fn arr(&self, p: usize, q: usize) -> &CoslMor {
        &self.arr[&(p, q)]
    }

    /// The constant functor at `x`.
    pub fn constant(shape: FinPoset, x: &CoslObj) -> Self {
        let n = shape.len();
        let maps = shape
            .order()
            .strict_pairs()
            .into_iter()
            .map(|pq| (pq, FinFn::identity(x.carrier())))
            .collect();
        SynObj::new(shape, x.base().clone(), vec![x.clone(); n], maps)
            .expect("constant functors are functors")
    }

    pub fn to_indexed(&self) -> Indexed {
        let n = self.shape.len();
        let mut maps = vec![Vec::new(); n * n];
        for (&(p, q), m) in &self.arr {
            maps[p * n + q] = m.map().table().to_vec();
        }
        Indexed {
            shape: Arc::new(self.shape.order().clone()),
            deco: self.obj.iter().map(CoslObj::to_under).collect(),
            maps,
        }
    }
}

fn split_relation(shape: &FinPoset, key: &str) -> Result<(usize, usize)> {
    for (i, _) in key.match_indices("<=") {
        let (l, r) = (&key[..i], &key[i + 2..]);
        if let (Some(p), Some(q)) = (shape.carrier().index_of(l), shape.carrier().index_of(r)) {
            return Ok((p, q));
        }
    }
    Err(Error::ShapeMismatch(format!(
        "arrow key `{key}` is not of the form p<=q over the shape"
    )))
}

/// The name of a coslice object: the one-point synthetic object.
pub fn name_embedding(x: &CoslObj) -> SynObj {
    SynObj::constant(FinPoset::chain(1), x)
}

/// A morphism of synthetic objects: a monotone map of shapes under which
/// the decorations agree strictly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynMor {
    src: SynObj,
    dst: SynObj,
    map: MonotoneMap,
}

impl Serialize for SynMor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({ "map": self.map }).serialize(s)
    }
}

impl SynMor {
    pub fn new(src: SynObj, dst: SynObj, map: MonotoneMap) -> Result<Self> {
        if map.dom() != src.shape.as_preorder() || map.cod() != dst.shape.as_preorder() {
            return Err(Error::CarrierMismatch(
                "the shape map must run from the source shape to the target shape".into(),
            ));
        }
        let (sl, dl) = (|p: usize| src.shape.label(p), |p: usize| dst.shape.label(p));
        for p in 0..src.shape.len() {
            let hp = map.apply(p);
            if dst.obj(hp) != src.obj(p) {
                return Err(Error::NonCommuting(format!(
                    "dst.obj({}) != src.obj({})",
                    dl(hp),
                    sl(p)
                )));
            }
        }
        for (&(p, q), m) in &src.arr {
            let (hp, hq) = (map.apply(p), map.apply(q));
            if dst.arr(hp, hq).map() != m.map() {
                return Err(Error::NonCommuting(format!(
                    "dst.arr({}<={}) != src.arr({}<={})",
                    dl(hp),
                    dl(hq),
                    sl(p),
                    sl(q)
                )));
            }
        }
        Ok(SynMor { src, dst, map })
    }

    pub fn identity(x: &SynObj) -> Self {
        SynMor {
            src: x.clone(),
            dst: x.clone(),
            map: MonotoneMap::identity(x.shape.as_preorder()),
        }
    }

    pub fn src(&self) -> &SynObj {
        &self.src
    }

    pub fn dst(&self) -> &SynObj {
        &self.dst
    }

    pub fn map(&self) -> &MonotoneMap {
        &self.map
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &SynMor) -> Result<SynMor> {
        if f.dst != self.src {
            return Err(Error::CarrierMismatch(
                "cannot compose synthetic morphisms".into(),
            ));
        }
        Ok(SynMor {
            src: f.src.clone(),
            dst: self.dst.clone(),
            map: self.map.after(&f.map)?,
        })
    }
}

/// The projection onto shapes, on objects.
pub fn projection_s(x: &SynObj) -> FinPoset {
    x.shape.clone()
}

/// The projection onto shapes, on morphisms.
pub fn projection_s_mor(f: &SynMor) -> MonotoneMap {
    f.map.clone()
}

/// Unlabeled synthetic object. `maps[p * n + q]` is the decoration of
/// `p ≤ q` and is empty for non-relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Indexed {
    pub shape: Arc<Order>,
    pub deco: Vec<Under>,
    pub maps: Vec<Vec<usize>>,
}

impl Indexed {
    pub fn len(&self) -> usize {
        self.shape.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shape.is_empty()
    }

    pub fn map(&self, p: usize, q: usize) -> &[usize] {
        &self.maps[p * self.len() + q]
    }

    pub fn constant(shape: Arc<Order>, x: &Under) -> Self {
        let n = shape.len();
        let id: Vec<usize> = (0..x.size).collect();
        let maps = (0..n * n)
            .map(|i| {
                if shape.leq(i / n, i % n) {
                    id.clone()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Indexed {
            shape,
            deco: vec![x.clone(); n],
            maps,
        }
    }

    pub fn to_syn(&self) -> SynObj {
        let shape = FinPoset::numbered((*self.shape).clone()).expect("shapes are posets");
        let obj: Vec<CoslObj> = self.deco.iter().map(Under::to_obj).collect();
        let base = FinSet::numbered(self.deco.first().map_or(0, |u| u.arrow.len()));
        let maps = self
            .shape
            .strict_pairs()
            .into_iter()
            .map(|(p, q)| {
                let m = FinFn::new(
                    obj[p].carrier().clone(),
                    obj[q].carrier().clone(),
                    self.map(p, q).to_vec(),
                )
                .expect("tables are in range");
                ((p, q), m)
            })
            .collect();
        SynObj::new(shape, base, obj, maps).expect("indexed objects are functors")
    }

    /// Relabeling along a permutation of the shape (old -> new).
    fn permuted(&self, perm: &[usize]) -> Indexed {
        let n = self.len();
        let mut deco = self.deco.clone();
        let mut maps = vec![Vec::new(); n * n];
        for p in 0..n {
            deco[perm[p]] = self.deco[p].clone();
            for q in 0..n {
                maps[perm[p] * n + perm[q]] = self.maps[p * n + q].clone();
            }
        }
        Indexed {
            shape: Arc::new(self.shape.permuted(perm)),
            deco,
            maps,
        }
    }

    fn deco_key(&self, objects: &[Under]) -> (Vec<usize>, Vec<Vec<usize>>) {
        (
            self.deco
                .iter()
                .map(|u| objects.iter().position(|o| o == u).unwrap_or(usize::MAX))
                .collect(),
            self.maps.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedMor {
    pub dom: Arc<Indexed>,
    pub cod: Arc<Indexed>,
    pub table: Vec<usize>,
}

// Hashing the ends in full dominates the checkers' hash sets; the table
// and the carrier sizes are enough to spread morphisms.
impl std::hash::Hash for IndexedMor {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.dom.len().hash(h);
        self.cod.len().hash(h);
        self.table.hash(h);
    }
}

impl IndexedMor {
    pub fn to_mor(&self) -> SynMor {
        let (src, dst) = (self.dom.to_syn(), self.cod.to_syn());
        let map = MonotoneMap::new(
            src.shape.as_preorder().clone(),
            dst.shape.as_preorder().clone(),
            self.table.clone(),
        )
        .expect("instance maps are monotone");
        SynMor::new(src, dst, map).expect("instance maps commute")
    }
}

/// Every functor from `shape` into the given coslice objects, with maps
/// chosen in lexicographic order.
pub fn decorations(shape: &Arc<Order>, values: &[Under]) -> Vec<Indexed> {
    let n = shape.len();
    let strict = shape.strict_pairs();
    let mut out = Vec::new();
    for choice in Tables::new(n, values.len()) {
        let deco: Vec<Under> = choice.iter().map(|&i| values[i].clone()).collect();
        let mut maps = vec![Vec::new(); n * n];
        for p in 0..n {
            maps[p * n + p] = (0..deco[p].size).collect();
        }
        let mut partial = Indexed {
            shape: shape.clone(),
            deco,
            maps,
        };
        extend_decoration(&mut partial, &strict, 0, &mut out);
    }
    out
}

fn extend_decoration(
    cur: &mut Indexed,
    strict: &[(usize, usize)],
    k: usize,
    out: &mut Vec<Indexed>,
) {
    let n = cur.len();
    if k == strict.len() {
        let functorial = strict.iter().all(|&(p, r)| {
            (0..n).all(|q| {
                !(cur.shape.leq(p, q) && cur.shape.leq(q, r))
                    || tables::compose(cur.map(q, r), cur.map(p, q)) == cur.map(p, r)
            })
        });
        if functorial {
            out.push(cur.clone());
        }
        return;
    }
    let (p, q) = strict[k];
    for m in cur.deco[p].maps_to(&cur.deco[q]) {
        cur.maps[p * n + q] = m;
        extend_decoration(cur, strict, k + 1, out);
    }
    cur.maps[p * n + q] = Vec::new();
}

/// The comma category at desk scale: shapes with at most `max_shape`
/// elements, decorations by coslice objects with at most `max_values`
/// points, one test object per isomorphism class.
#[derive(Clone, Debug)]
pub struct CommaCat {
    base: usize,
    bound: usize,
    max_shape: usize,
    max_values: usize,
    values: Vec<Under>,
    objects: Vec<Arc<Indexed>>,
    probes: Vec<Arc<Indexed>>,
}

impl CommaCat {
    pub const MAX_BASE: usize = 2;
    pub const MAX_SHAPE: usize = 4;
    pub const MAX_VALUES: usize = 2;
    /// Largest shape among the probes an audit verifies constructions
    /// against.
    pub const PROBE_SHAPE: usize = 2;

    /// Audit bound `b`: shapes up to `b + 1` elements, value sets up to 2.
    pub fn new(base: usize, bound: usize) -> Result<Self> {
        Self::with_limits(base, bound, bound + 1, Self::MAX_VALUES)
    }

    pub fn with_limits(
        base: usize,
        bound: usize,
        max_shape: usize,
        max_values: usize,
    ) -> Result<Self> {
        let refuse = |what: &str, requested: usize, limit: usize| {
            let shapes: usize = (0..=max_shape.min(canon::MAX_ENUM))
                .map(|k| canon::posets_of_size(k).map_or(0, |v| v.len()))
                .sum();
            Err(Error::BoundExceeded {
                what: what.into(),
                requested,
                limit,
                estimate: format!(
                    "over {shapes} shapes, each decorated in up to {}^{max_shape} ways before maps are chosen",
                    skeleton(base, max_values).len()
                ),
            })
        };
        if base > Self::MAX_BASE {
            return refuse("comma base size", base, Self::MAX_BASE);
        }
        if max_shape > Self::MAX_SHAPE {
            return refuse("comma shape size", max_shape, Self::MAX_SHAPE);
        }
        if max_values > Self::MAX_VALUES {
            return refuse("comma value-set size", max_values, Self::MAX_VALUES);
        }
        let values = skeleton(base, max_values);
        let mut objects = Vec::new();
        for shape in canon::posets_up_to(max_shape)? {
            let auts = canon::automorphisms(&shape);
            let shape = Arc::new(shape);
            for d in decorations(&shape, &values) {
                let key = d.deco_key(&values);
                if auts.iter().all(|a| key <= d.permuted(a).deco_key(&values)) {
                    objects.push(Arc::new(d));
                }
            }
        }
        let probes = objects
            .iter()
            .filter(|o| o.len() <= Self::PROBE_SHAPE)
            .cloned()
            .collect();
        Ok(CommaCat {
            base,
            bound,
            max_shape,
            max_values,
            values,
            objects,
            probes,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn max_shape(&self) -> usize {
        self.max_shape
    }

    pub fn max_values(&self) -> usize {
        self.max_values
    }

    /// Coslice objects available as decorations.
    pub fn values(&self) -> &[Under] {
        &self.values
    }

    fn is_morphism(&self, a: &Indexed, b: &Indexed, t: &[usize]) -> bool {
        let n = a.len();
        a.shape.is_monotone(&b.shape, t)
            && (0..n).all(|p| b.deco[t[p]] == a.deco[p])
            && (0..n)
                .all(|p| (0..n).all(|q| !a.shape.leq(p, q) || b.map(t[p], t[q]) == a.map(p, q)))
    }
}

impl EnumCat for CommaCat {
    type Obj = Arc<Indexed>;
    type Mor = IndexedMor;

    fn name(&self) -> String {
        "comma".into()
    }

    fn bound(&self) -> usize {
        self.bound
    }

    fn objects(&self) -> &[Arc<Indexed>] {
        &self.objects
    }

    fn probes(&self) -> &[Arc<Indexed>] {
        &self.probes
    }

    fn parameters(&self) -> Value {
        json!({
            "base_size": self.base,
            "max_shape": self.max_shape,
            "max_values": self.max_values,
            "probe_shape": Self::PROBE_SHAPE,
        })
    }

    fn level(&self, a: &Arc<Indexed>) -> usize {
        a.len()
    }

    fn hom(&self, a: &Arc<Indexed>, b: &Arc<Indexed>) -> Vec<IndexedMor> {
        let allowed = |cur: &[usize], i: usize| {
            let v = cur[i];
            b.deco[v] == a.deco[i]
                && (0..i).all(|j| {
                    (!a.shape.leq(j, i) || b.map(cur[j], v) == a.map(j, i))
                        && (!a.shape.leq(i, j) || b.map(v, cur[j]) == a.map(i, j))
                })
        };
        a.shape
            .monotone_maps_filtered(&b.shape, &allowed)
            .into_iter()
            .map(|table| IndexedMor {
                dom: a.clone(),
                cod: b.clone(),
                table,
            })
            .collect()
    }

    fn dom(&self, f: &IndexedMor) -> Arc<Indexed> {
        f.dom.clone()
    }

    fn cod(&self, f: &IndexedMor) -> Arc<Indexed> {
        f.cod.clone()
    }

    fn compose(&self, g: &IndexedMor, f: &IndexedMor) -> IndexedMor {
        IndexedMor {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            table: tables::compose(&g.table, &f.table),
        }
    }

    fn identity(&self, a: &Arc<Indexed>) -> IndexedMor {
        IndexedMor {
            dom: a.clone(),
            cod: a.clone(),
            table: (0..a.len()).collect(),
        }
    }

    /// Computed as in posets, with the decoration inherited from either leg.
    fn pullback(&self, f: &IndexedMor, g: &IndexedMor) -> Option<Span<Arc<Indexed>, IndexedMor>> {
        if f.cod != g.cod {
            return None;
        }
        let (x, y) = (&f.dom, &g.dom);
        let (order, pairs) = x.shape.pullback(&f.table, &y.shape, &g.table).ok()?;
        let n = pairs.len();
        let mut maps = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                if order.leq(i, j) {
                    maps[i * n + j] = x.map(pairs[i].0, pairs[j].0).to_vec();
                }
            }
        }
        let apex = Arc::new(Indexed {
            shape: Arc::new(order),
            deco: pairs.iter().map(|p| x.deco[p.0].clone()).collect(),
            maps,
        });
        Some(Span {
            left: IndexedMor {
                dom: apex.clone(),
                cod: x.clone(),
                table: pairs.iter().map(|p| p.0).collect(),
            },
            right: IndexedMor {
                dom: apex.clone(),
                cod: y.clone(),
                table: pairs.iter().map(|p| p.1).collect(),
            },
            apex,
        })
    }

    /// The poset coequalizer of the shapes, when the decoration descends to
    /// it: every class carries one coslice object and every relation of the
    /// quotient one composite map.
    fn coequalizer(&self, f: &IndexedMor, g: &IndexedMor) -> Option<IndexedMor> {
        if f.dom != g.dom || f.cod != g.cod {
            return None;
        }
        let y = &f.cod;
        let n = y.len();
        let (ids, order) = y.shape.coequalize_poset(&f.table, &g.table);
        let k = order.len();
        let mut deco: Vec<Option<Under>> = vec![None; k];
        for (p, &c) in ids.iter().enumerate() {
            match &deco[c] {
                Some(u) if u != &y.deco[p] => return None,
                Some(_) => {}
                None => deco[c] = Some(y.deco[p].clone()),
            }
        }
        let deco: Vec<Under> = deco.into_iter().collect::<Option<_>>()?;
        // composites of generating relations, from each class
        let mut maps = vec![Vec::new(); k * k];
        for c in 0..k {
            let start: Vec<usize> = (0..deco[c].size).collect();
            let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::from([(c, start.clone())]);
            let mut stack = vec![(c, start)];
            while let Some((d, m)) = stack.pop() {
                for p in (0..n).filter(|&p| ids[p] == d) {
                    for q in 0..n {
                        if y.shape.leq(p, q) {
                            let next = (ids[q], tables::compose(y.map(p, q), &m));
                            if seen.insert(next.clone()) {
                                stack.push(next);
                            }
                        }
                    }
                }
            }
            for d in 0..k {
                let mut reached = seen.iter().filter(|(e, _)| *e == d).map(|(_, m)| m);
                match (reached.next(), reached.next()) {
                    (Some(m), None) => {
                        if c == d && m.iter().enumerate().any(|(i, &v)| i != v) {
                            return None;
                        }
                        maps[c * k + d] = m.clone();
                    }
                    (None, _) if !order.leq(c, d) => {}
                    _ => return None,
                }
            }
        }
        Some(IndexedMor {
            dom: y.clone(),
            cod: Arc::new(Indexed {
                shape: Arc::new(order),
                deco,
                maps,
            }),
            table: ids,
        })
    }

    fn factor_through(&self, q: &IndexedMor, h: &IndexedMor) -> Vec<IndexedMor> {
        if !tables::is_surjective(&q.table, q.cod.len()) {
            return self
                .hom(&q.cod, &h.cod)
                .into_iter()
                .filter(|u| self.compose(u, q) == *h)
                .collect();
        }
        tables::factor_surjective(&q.table, q.cod.len(), &h.table)
            .filter(|t| self.is_morphism(&q.cod, &h.cod, t))
            .map(|table| IndexedMor {
                dom: q.cod.clone(),
                cod: h.cod.clone(),
                table,
            })
            .into_iter()
            .collect()
    }

    /// Kernel pairs are computed on shapes and inherit their decoration,
    /// and that decoration always descends to the shape coequalizer (both
    /// legs of a kernel pair land in one fiber). So the comparison is an
    /// isomorphism exactly when it is one on shapes.
    fn kernel_pair_regular(&self, f: &IndexedMor) -> Option<bool> {
        Some(f.dom.shape.is_regular_epi(&f.cod.shape, &f.table))
    }

    fn is_iso(&self, f: &IndexedMor) -> bool {
        f.dom.len() == f.cod.len()
            && tables::is_injective(&f.table, f.cod.len())
            && f.dom.shape.reflects_along(&f.cod.shape, &f.table)
    }

    /// Surjective on shapes. A map missing `y` is separated by the two maps
    /// into the target with `y` doubled.
    fn is_epi(&self, f: &IndexedMor) -> bool {
        tables::is_surjective(&f.table, f.cod.len())
    }

    fn describe_obj(&self, a: &Arc<Indexed>) -> Value {
        json!(a.to_syn())
    }

    fn describe_mor(&self, f: &IndexedMor) -> Value {
        json!(f.to_mor())
    }
}
