//! The category of finite posets, one test object per isomorphism class.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{EnumCat, Span};
use crate::error::{Error, Result};
use crate::order::{canon, FinPoset, MonotoneMap, Order};
use crate::tables;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PosMor {
    pub dom: Arc<Order>,
    pub cod: Arc<Order>,
    pub table: Vec<usize>,
}

impl From<&MonotoneMap> for PosMor {
    fn from(f: &MonotoneMap) -> Self {
        PosMor {
            dom: Arc::new(f.dom().order().clone()),
            cod: Arc::new(f.cod().order().clone()),
            table: f.table().to_vec(),
        }
    }
}

pub(crate) fn numbered_poset(o: &Order) -> FinPoset {
    FinPoset::numbered(o.clone()).expect("instance objects are posets")
}

impl PosMor {
    pub fn to_map(&self) -> MonotoneMap {
        MonotoneMap::new(
            numbered_poset(&self.dom).into_preorder(),
            numbered_poset(&self.cod).into_preorder(),
            self.table.clone(),
        )
        .expect("instance morphisms are monotone")
    }
}

#[derive(Clone, Debug)]
pub struct PosCat {
    bound: usize,
    objects: Vec<Arc<Order>>,
    probes: Vec<Arc<Order>>,
}

impl PosCat {
    pub const MAX_BOUND: usize = 5;
    /// Largest poset among the probes an audit verifies constructions
    /// against: the point and the two-element posets see elements and order.
    pub const PROBE_SIZE: usize = 2;

    pub fn new(bound: usize) -> Result<Self> {
        if bound > Self::MAX_BOUND {
            let naive: u128 = (0..=bound as u32)
                .flat_map(|a| (0..=bound as u128).map(move |b| b.pow(a)))
                .sum();
            return Err(Error::BoundExceeded {
                what: "finpos bound".into(),
                requested: bound,
                limit: Self::MAX_BOUND,
                estimate: format!(
                    "up to {naive} candidate maps per pair of shapes over every poset of size <= {bound}"
                ),
            });
        }
        let objects: Vec<Arc<Order>> = canon::posets_up_to(bound)?
            .into_iter()
            .map(Arc::new)
            .collect();
        let probes = objects
            .iter()
            .filter(|o| o.len() <= Self::PROBE_SIZE)
            .cloned()
            .collect();
        Ok(PosCat {
            bound,
            objects,
            probes,
        })
    }
}

impl EnumCat for PosCat {
    type Obj = Arc<Order>;
    type Mor = PosMor;

    fn name(&self) -> String {
        "finpos".into()
    }

    fn bound(&self) -> usize {
        self.bound
    }

    fn objects(&self) -> &[Arc<Order>] {
        &self.objects
    }

    fn probes(&self) -> &[Arc<Order>] {
        &self.probes
    }

    fn parameters(&self) -> Value {
        json!({ "probe_size": Self::PROBE_SIZE })
    }

    fn level(&self, a: &Arc<Order>) -> usize {
        a.len()
    }

    fn hom(&self, a: &Arc<Order>, b: &Arc<Order>) -> Vec<PosMor> {
        a.monotone_maps(b)
            .into_iter()
            .map(|table| PosMor {
                dom: a.clone(),
                cod: b.clone(),
                table,
            })
            .collect()
    }

    fn dom(&self, f: &PosMor) -> Arc<Order> {
        f.dom.clone()
    }

    fn cod(&self, f: &PosMor) -> Arc<Order> {
        f.cod.clone()
    }

    fn compose(&self, g: &PosMor, f: &PosMor) -> PosMor {
        PosMor {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            table: tables::compose(&g.table, &f.table),
        }
    }

    fn identity(&self, a: &Arc<Order>) -> PosMor {
        PosMor {
            dom: a.clone(),
            cod: a.clone(),
            table: (0..a.len()).collect(),
        }
    }

    fn pullback(&self, f: &PosMor, g: &PosMor) -> Option<Span<Arc<Order>, PosMor>> {
        if f.cod != g.cod {
            return None;
        }
        let (order, pairs) = f.dom.pullback(&f.table, &g.dom, &g.table).ok()?;
        let apex = Arc::new(order);
        Some(Span {
            left: PosMor {
                dom: apex.clone(),
                cod: f.dom.clone(),
                table: pairs.iter().map(|p| p.0).collect(),
            },
            right: PosMor {
                dom: apex.clone(),
                cod: g.dom.clone(),
                table: pairs.iter().map(|p| p.1).collect(),
            },
            apex,
        })
    }

    fn coequalizer(&self, f: &PosMor, g: &PosMor) -> Option<PosMor> {
        if f.dom != g.dom || f.cod != g.cod {
            return None;
        }
        let (ids, order) = f.cod.coequalize_poset(&f.table, &g.table);
        Some(PosMor {
            dom: f.cod.clone(),
            cod: Arc::new(order),
            table: ids,
        })
    }

    fn factor_through(&self, q: &PosMor, h: &PosMor) -> Vec<PosMor> {
        if !tables::is_surjective(&q.table, q.cod.len()) {
            return self
                .hom(&q.cod, &h.cod)
                .into_iter()
                .filter(|u| self.compose(u, q) == *h)
                .collect();
        }
        tables::factor_surjective(&q.table, q.cod.len(), &h.table)
            .filter(|t| q.cod.is_monotone(&h.cod, t))
            .map(|table| PosMor {
                dom: q.cod.clone(),
                cod: h.cod.clone(),
                table,
            })
            .into_iter()
            .collect()
    }

    /// Kernel pair and its coequalizer computed on tables, without building
    /// the kernel pair as a poset (it can exceed the bitset width).
    fn kernel_pair_regular(&self, f: &PosMor) -> Option<bool> {
        Some(f.dom.is_regular_epi(&f.cod, &f.table))
    }

    fn is_iso(&self, f: &PosMor) -> bool {
        f.dom.len() == f.cod.len()
            && tables::is_injective(&f.table, f.cod.len())
            && f.dom.reflects_along(&f.cod, &f.table)
    }

    fn is_epi(&self, f: &PosMor) -> bool {
        tables::is_surjective(&f.table, f.cod.len())
    }

    fn describe_obj(&self, a: &Arc<Order>) -> Value {
        json!(numbered_poset(a))
    }

    fn describe_mor(&self, f: &PosMor) -> Value {
        json!(f.to_map())
    }
}
