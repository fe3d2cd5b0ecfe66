//! The category of finite sets, skeletally: one object per cardinality.

use serde_json::{json, Value};

use super::{EnumCat, Span};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::tables::{self, Tables};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetMor {
    pub dom: usize,
    pub cod: usize,
    pub table: Vec<usize>,
}

impl From<&FinFn> for SetMor {
    fn from(f: &FinFn) -> Self {
        SetMor {
            dom: f.dom().len(),
            cod: f.cod().len(),
            table: f.table().to_vec(),
        }
    }
}

impl SetMor {
    pub fn to_fn(&self) -> FinFn {
        FinFn::new(
            FinSet::numbered(self.dom),
            FinSet::numbered(self.cod),
            self.table.clone(),
        )
        .expect("tables are in range")
    }
}

/// Finite sets of cardinality at most `bound` as test objects.
#[derive(Clone, Debug)]
pub struct SetCat {
    bound: usize,
    objects: Vec<usize>,
}

impl SetCat {
    pub const MAX_BOUND: usize = 5;

    pub fn new(bound: usize) -> Result<Self> {
        if bound > Self::MAX_BOUND {
            let arrows: u128 = (0..=bound as u32)
                .flat_map(|a| (0..=bound as u128).map(move |b| b.pow(a)))
                .sum();
            return Err(Error::BoundExceeded {
                what: "finset bound".into(),
                requested: bound,
                limit: Self::MAX_BOUND,
                estimate: format!("{arrows} arrows, each audited against every cospan"),
            });
        }
        Ok(SetCat {
            bound,
            objects: (0..=bound).collect(),
        })
    }
}

impl EnumCat for SetCat {
    type Obj = usize;
    type Mor = SetMor;

    fn name(&self) -> String {
        "finset".into()
    }

    fn bound(&self) -> usize {
        self.bound
    }

    fn objects(&self) -> &[usize] {
        &self.objects
    }

    fn level(&self, a: &usize) -> usize {
        *a
    }

    fn hom(&self, a: &usize, b: &usize) -> Vec<SetMor> {
        Tables::new(*a, *b)
            .map(|table| SetMor {
                dom: *a,
                cod: *b,
                table,
            })
            .collect()
    }

    fn dom(&self, f: &SetMor) -> usize {
        f.dom
    }

    fn cod(&self, f: &SetMor) -> usize {
        f.cod
    }

    fn compose(&self, g: &SetMor, f: &SetMor) -> SetMor {
        debug_assert_eq!(f.cod, g.dom);
        SetMor {
            dom: f.dom,
            cod: g.cod,
            table: tables::compose(&g.table, &f.table),
        }
    }

    fn identity(&self, a: &usize) -> SetMor {
        SetMor {
            dom: *a,
            cod: *a,
            table: (0..*a).collect(),
        }
    }

    fn pullback(&self, f: &SetMor, g: &SetMor) -> Option<Span<usize, SetMor>> {
        if f.cod != g.cod {
            return None;
        }
        let pairs = tables::pullback_pairs(&f.table, &g.table);
        let apex = pairs.len();
        Some(Span {
            apex,
            left: SetMor {
                dom: apex,
                cod: f.dom,
                table: pairs.iter().map(|p| p.0).collect(),
            },
            right: SetMor {
                dom: apex,
                cod: g.dom,
                table: pairs.iter().map(|p| p.1).collect(),
            },
        })
    }

    fn coequalizer(&self, f: &SetMor, g: &SetMor) -> Option<SetMor> {
        if f.dom != g.dom || f.cod != g.cod {
            return None;
        }
        let ids = tables::coequalizer_ids(&f.table, &g.table, f.cod);
        Some(SetMor {
            dom: f.cod,
            cod: tables::class_count(&ids),
            table: ids,
        })
    }

    fn factor_through(&self, q: &SetMor, h: &SetMor) -> Vec<SetMor> {
        if !tables::is_surjective(&q.table, q.cod) {
            return self
                .hom(&q.cod, &h.cod)
                .into_iter()
                .filter(|u| self.compose(u, q) == *h)
                .collect();
        }
        tables::factor_surjective(&q.table, q.cod, &h.table)
            .map(|table| SetMor {
                dom: q.cod,
                cod: h.cod,
                table,
            })
            .into_iter()
            .collect()
    }

    fn is_iso(&self, f: &SetMor) -> bool {
        f.dom == f.cod && tables::is_injective(&f.table, f.cod)
    }

    fn is_epi(&self, f: &SetMor) -> bool {
        tables::is_surjective(&f.table, f.cod)
    }

    fn describe_obj(&self, a: &usize) -> Value {
        json!(FinSet::numbered(*a))
    }

    fn describe_mor(&self, f: &SetMor) -> Value {
        json!(f.to_fn())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumcat::{
        check_axioms, is_coequalizer, is_pullback, is_regular_epi_in, RegEpiMethod,
    };

    #[test]
    fn axioms_hold_at_small_bound() {
        check_axioms(&SetCat::new(2).unwrap()).unwrap();
    }

    #[test]
    fn coequalizer_checker_examples() {
        let cat = SetCat::new(3).unwrap();
        let f = SetMor {
            dom: 1,
            cod: 3,
            table: vec![0],
        };
        let g = SetMor {
            dom: 1,
            cod: 3,
            table: vec![1],
        };
        let q = cat.coequalizer(&f, &g).unwrap();
        assert!(is_coequalizer(&cat, &f, &g, &q).unwrap());
        let not_onto = SetMor {
            dom: 3,
            cod: 3,
            table: vec![0, 0, 1],
        };
        assert!(!is_coequalizer(&cat, &f, &g, &not_onto).unwrap());
        let id = cat.identity(&3);
        assert!(is_coequalizer(&cat, &f, &f, &id).unwrap());
    }

    #[test]
    fn pullback_checker_examples() {
        let cat = SetCat::new(3).unwrap();
        let f = SetMor {
            dom: 2,
            cod: 2,
            table: vec![0, 1],
        };
        let g = SetMor {
            dom: 3,
            cod: 2,
            table: vec![0, 0, 1],
        };
        let span = cat.pullback(&f, &g).unwrap();
        assert!(is_pullback(&cat, &f, &g, &span).unwrap());
        // an extra element over the same cone breaks uniqueness
        let mut left = span.left.table.clone();
        let mut right = span.right.table.clone();
        left.push(left[0]);
        right.push(right[0]);
        let fat = Span {
            apex: span.apex + 1,
            left: SetMor {
                dom: span.apex + 1,
                cod: 2,
                table: left,
            },
            right: SetMor {
                dom: span.apex + 1,
                cod: 3,
                table: right,
            },
        };
        assert!(!is_pullback(&cat, &f, &g, &fat).unwrap());
        let id = cat.identity(&2);
        let ids = Span {
            apex: 2,
            left: id.clone(),
            right: id.clone(),
        };
        assert!(is_pullback(&cat, &id, &id, &ids).unwrap());
    }

    #[test]
    fn surjections_are_regular() {
        let cat = SetCat::new(3).unwrap();
        let f = SetMor {
            dom: 3,
            cod: 2,
            table: vec![0, 1, 1],
        };
        let v = is_regular_epi_in(&cat, &f);
        assert!(v.regular);
        assert_eq!(v.method, RegEpiMethod::KernelPair);
        assert!(is_regular_epi_in(&cat, &cat.identity(&0)).regular);
    }

    #[test]
    fn bound_refused_with_estimate() {
        let err = SetCat::new(9).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { .. }));
        assert!(err.to_string().contains("arrows"));
    }
}
