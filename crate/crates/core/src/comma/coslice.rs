//! The coslice category `A/FinSet`: arrows out of a fixed base and the
//! commuting triangles between them.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::enumcat::{EnumCat, Span};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::tables::{self, Tables};

/// An object `A -> X` of the coslice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCoslObj")]
pub struct CoslObj {
    base: FinSet,
    arrow: FinFn,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoslObj {
    base: FinSet,
    arrow: FinFn,
}

impl TryFrom<RawCoslObj> for CoslObj {
    type Error = Error;

    fn try_from(raw: RawCoslObj) -> Result<Self> {
        CoslObj::new(raw.base, raw.arrow)
    }
}

impl CoslObj {
    pub fn new(base: FinSet, arrow: FinFn) -> Result<Self> {
        if arrow.dom() != &base {
            return Err(Error::CarrierMismatch(
                "the arrow of a coslice object must start at the base".into(),
            ));
        }
        Ok(CoslObj { base, arrow })
    }

    pub fn from_arrow(arrow: FinFn) -> Self {
        CoslObj {
            base: arrow.dom().clone(),
            arrow,
        }
    }

    pub fn identity_on(base: &FinSet) -> Self {
        Self::from_arrow(FinFn::identity(base))
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }

    pub fn arrow(&self) -> &FinFn {
        &self.arrow
    }

    pub fn carrier(&self) -> &FinSet {
        self.arrow.cod()
    }

    pub fn to_under(&self) -> Under {
        Under {
            size: self.carrier().len(),
            arrow: self.arrow.table().to_vec(),
        }
    }
}

/// A commuting triangle `map ∘ src.arrow = dst.arrow`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoslMor {
    src: CoslObj,
    dst: CoslObj,
    map: FinFn,
}

impl CoslMor {
    pub fn new(src: CoslObj, dst: CoslObj, map: FinFn) -> Result<Self> {
        if src.base != dst.base {
            return Err(Error::CarrierMismatch(
                "coslice objects over different bases".into(),
            ));
        }
        if map.dom() != src.carrier() || map.cod() != dst.carrier() {
            return Err(Error::CarrierMismatch(
                "the map must run between the objects' carriers".into(),
            ));
        }
        if map.after(&src.arrow)? != dst.arrow {
            return Err(Error::NonCommuting("map . src.arrow != dst.arrow".into()));
        }
        Ok(CoslMor { src, dst, map })
    }

    pub fn identity(x: &CoslObj) -> Self {
        CoslMor {
            src: x.clone(),
            dst: x.clone(),
            map: FinFn::identity(x.carrier()),
        }
    }

    pub fn src(&self) -> &CoslObj {
        &self.src
    }

    pub fn dst(&self) -> &CoslObj {
        &self.dst
    }

    pub fn map(&self) -> &FinFn {
        &self.map
    }

    pub fn after(&self, f: &CoslMor) -> Result<CoslMor> {
        CoslMor::new(f.src.clone(), self.dst.clone(), self.map.after(&f.map)?)
    }
}

/// Unlabeled coslice object: `arrow: A -> size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Under {
    pub size: usize,
    pub arrow: Vec<usize>,
}

impl Under {
    pub fn to_obj(&self) -> CoslObj {
        CoslObj::from_arrow(
            FinFn::new(
                FinSet::numbered(self.arrow.len()),
                FinSet::numbered(self.size),
                self.arrow.clone(),
            )
            .expect("arrow tables are in range"),
        )
    }

    /// Maps `self -> other` commuting under the base, lexicographically.
    pub fn maps_to(&self, other: &Under) -> Vec<Vec<usize>> {
        let mut forced: Vec<Option<usize>> = vec![None; self.size];
        for (&x, &y) in self.arrow.iter().zip(&other.arrow) {
            match forced[x] {
                Some(v) if v != y => return Vec::new(),
                _ => forced[x] = Some(y),
            }
        }
        let free: Vec<usize> = (0..self.size).filter(|&x| forced[x].is_none()).collect();
        let base: Vec<usize> = forced.iter().map(|v| v.unwrap_or(0)).collect();
        Tables::new(free.len(), other.size)
            .map(|choice| {
                let mut t = base.clone();
                for (&x, &v) in free.iter().zip(&choice) {
                    t[x] = v;
                }
                t
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnderMor {
    pub dom: Under,
    pub cod: Under,
    pub table: Vec<usize>,
}

impl UnderMor {
    pub fn to_mor(&self) -> CoslMor {
        let (src, dst) = (self.dom.to_obj(), self.cod.to_obj());
        let map = FinFn::new(
            src.carrier().clone(),
            dst.carrier().clone(),
            self.table.clone(),
        )
        .expect("tables are in range");
        CoslMor::new(src, dst, map).expect("instance morphisms commute")
    }
}

/// Coslice objects over a base of `n` points, one per isomorphism class:
/// the image in first-occurrence order followed by the extra points.
pub fn skeleton(n: usize, max_size: usize) -> Vec<Under> {
    let mut out = Vec::new();
    for ids in Tables::new(n, n.max(1)) {
        if tables::canonical_ids(&ids) != ids {
            continue;
        }
        let k = tables::class_count(&ids);
        for size in k..=max_size {
            out.push(Under {
                size,
                arrow: ids.clone(),
            });
        }
    }
    out.sort_by(|a, b| {
        (a.size, a.size - tables::class_count(&a.arrow), &a.arrow).cmp(&(
            b.size,
            b.size - tables::class_count(&b.arrow),
            &b.arrow,
        ))
    });
    out
}

#[derive(Clone, Debug)]
pub struct CosliceCat {
    base: usize,
    bound: usize,
    objects: Vec<Under>,
}

impl CosliceCat {
    pub const MAX_BASE: usize = 3;
    pub const MAX_BOUND: usize = 4;

    pub fn new(base: usize, bound: usize) -> Result<Self> {
        if base > Self::MAX_BASE {
            return Err(Error::BoundExceeded {
                what: "coslice base size".into(),
                requested: base,
                limit: Self::MAX_BASE,
                estimate: format!(
                    "{} arrows out of the base per carrier",
                    bound.pow(base as u32)
                ),
            });
        }
        if bound > Self::MAX_BOUND {
            return Err(Error::BoundExceeded {
                what: "coslice bound".into(),
                requested: bound,
                limit: Self::MAX_BOUND,
                estimate: format!(
                    "up to {} maps per pair of objects",
                    (bound as u128).pow(bound as u32)
                ),
            });
        }
        Ok(CosliceCat {
            base,
            bound,
            objects: skeleton(base, bound),
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }
}

impl EnumCat for CosliceCat {
    type Obj = Under;
    type Mor = UnderMor;

    fn name(&self) -> String {
        "coslice".into()
    }

    fn bound(&self) -> usize {
        self.bound
    }

    fn objects(&self) -> &[Under] {
        &self.objects
    }

    fn level(&self, a: &Under) -> usize {
        a.size
    }

    fn parameters(&self) -> Value {
        json!({ "base_size": self.base })
    }

    fn hom(&self, a: &Under, b: &Under) -> Vec<UnderMor> {
        a.maps_to(b)
            .into_iter()
            .map(|table| UnderMor {
                dom: a.clone(),
                cod: b.clone(),
                table,
            })
            .collect()
    }

    fn dom(&self, f: &UnderMor) -> Under {
        f.dom.clone()
    }

    fn cod(&self, f: &UnderMor) -> Under {
        f.cod.clone()
    }

    fn compose(&self, g: &UnderMor, f: &UnderMor) -> UnderMor {
        UnderMor {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            table: tables::compose(&g.table, &f.table),
        }
    }

    fn identity(&self, a: &Under) -> UnderMor {
        UnderMor {
            dom: a.clone(),
            cod: a.clone(),
            table: (0..a.size).collect(),
        }
    }

    fn pullback(&self, f: &UnderMor, g: &UnderMor) -> Option<Span<Under, UnderMor>> {
        if f.cod != g.cod {
            return None;
        }
        let pairs = tables::pullback_pairs(&f.table, &g.table);
        let arrow = f
            .dom
            .arrow
            .iter()
            .zip(&g.dom.arrow)
            .map(|(&x, &y)| pairs.iter().position(|&p| p == (x, y)))
            .collect::<Option<Vec<_>>>()?;
        let apex = Under {
            size: pairs.len(),
            arrow,
        };
        Some(Span {
            left: UnderMor {
                dom: apex.clone(),
                cod: f.dom.clone(),
                table: pairs.iter().map(|p| p.0).collect(),
            },
            right: UnderMor {
                dom: apex.clone(),
                cod: g.dom.clone(),
                table: pairs.iter().map(|p| p.1).collect(),
            },
            apex,
        })
    }

    fn coequalizer(&self, f: &UnderMor, g: &UnderMor) -> Option<UnderMor> {
        if f.dom != g.dom || f.cod != g.cod {
            return None;
        }
        let ids = tables::coequalizer_ids(&f.table, &g.table, f.cod.size);
        let cod = Under {
            size: tables::class_count(&ids),
            arrow: tables::compose(&ids, &f.cod.arrow),
        };
        Some(UnderMor {
            dom: f.cod.clone(),
            cod,
            table: ids,
        })
    }

    fn factor_through(&self, q: &UnderMor, h: &UnderMor) -> Vec<UnderMor> {
        if !tables::is_surjective(&q.table, q.cod.size) {
            return self
                .hom(&q.cod, &h.cod)
                .into_iter()
                .filter(|u| self.compose(u, q) == *h)
                .collect();
        }
        tables::factor_surjective(&q.table, q.cod.size, &h.table)
            .map(|table| UnderMor {
                dom: q.cod.clone(),
                cod: h.cod.clone(),
                table,
            })
            .into_iter()
            .collect()
    }

    fn is_iso(&self, f: &UnderMor) -> bool {
        f.dom.size == f.cod.size && tables::is_injective(&f.table, f.cod.size)
    }

    fn is_epi(&self, f: &UnderMor) -> bool {
        tables::is_surjective(&f.table, f.cod.size)
    }

    fn describe_obj(&self, a: &Under) -> Value {
        json!(a.to_obj())
    }

    fn describe_mor(&self, f: &UnderMor) -> Value {
        json!(f.to_mor())
    }
}
