//! Poset-shaped diagrams of finite sets, cones over them, and their limits.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::order::FinPoset;

/// A functor from a finite poset to finite sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    shape: FinPoset,
    obj: Vec<FinSet>,
    arr: BTreeMap<(usize, usize), FinFn>,
}

impl Diagram {
    /// `arr` must hold a map for every strict relation `p < q`; identities
    /// may be omitted.
    pub fn new(
        shape: FinPoset,
        obj: Vec<FinSet>,
        mut arr: BTreeMap<(usize, usize), FinFn>,
    ) -> Result<Self> {
        if obj.len() != shape.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} objects for a shape of {} elements",
                obj.len(),
                shape.len()
            )));
        }
        let label = |p: usize| shape.label(p).to_string();
        for (&(p, q), f) in &arr {
            if p >= shape.len() || q >= shape.len() || !shape.leq(p, q) {
                return Err(Error::NotFunctorial(format!(
                    "arrow given for a non-relation ({p}, {q})"
                )));
            }
            if f.dom() != &obj[p] || f.cod() != &obj[q] {
                return Err(Error::NotFunctorial(format!(
                    "arr({}<={}) does not run from obj({}) to obj({})",
                    label(p),
                    label(q),
                    label(p),
                    label(q)
                )));
            }
        }
        for p in 0..shape.len() {
            let id = FinFn::identity(&obj[p]);
            match arr.get(&(p, p)) {
                Some(f) if f != &id => {
                    return Err(Error::NotFunctorial(format!(
                        "arr({0}<={0}) is not the identity",
                        label(p)
                    )))
                }
                Some(_) => {}
                None => {
                    arr.insert((p, p), id);
                }
            }
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
        let n = shape.len();
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if shape.leq(p, q) && shape.leq(q, r) {
                        let composite = arr[&(q, r)].after(&arr[&(p, q)])?;
                        if composite != arr[&(p, r)] {
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
        Ok(Diagram { shape, obj, arr })
    }

    pub fn shape(&self) -> &FinPoset {
        &self.shape
    }

    pub fn obj(&self, p: usize) -> &FinSet {
        &self.obj[p]
    }

    pub fn objects(&self) -> &[FinSet] {
        &self.obj
    }

    /// The map `obj(p) -> obj(q)` for `p ≤ q`.
    pub fn arr(&self, p: usize, q: usize) -> &FinFn {
        &self.arr[&(p, q)]
    }

    pub fn arrows(&self) -> &BTreeMap<(usize, usize), FinFn> {
        &self.arr
    }

    /// Families `(x_p)` with `arr(p≤q)(x_p) = x_q`, in lexicographic order.
    pub fn compatible_families(&self) -> Vec<Vec<usize>> {
        let n = self.shape.len();
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        self.extend_family(&mut cur, 0, &mut out);
        out
    }

    fn extend_family(&self, cur: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        'values: for v in 0..self.obj[i].len() {
            for j in 0..i {
                if self.shape.leq(j, i) && self.arr[&(j, i)].apply(cur[j]) != v {
                    continue 'values;
                }
                if self.shape.leq(i, j) && self.arr[&(i, j)].apply(v) != cur[j] {
                    continue 'values;
                }
            }
            cur[i] = v;
            self.extend_family(cur, i + 1, out);
        }
    }
}

/// A cone with the given apex over a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    apex: FinSet,
    diagram: Diagram,
    legs: Vec<FinFn>,
}

impl Cone {
    pub fn new(apex: FinSet, diagram: Diagram, legs: Vec<FinFn>) -> Result<Self> {
        let shape = diagram.shape();
        if legs.len() != shape.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} legs for a shape of {} elements",
                legs.len(),
                shape.len()
            )));
        }
        for (p, leg) in legs.iter().enumerate() {
            if leg.dom() != &apex || leg.cod() != diagram.obj(p) {
                return Err(Error::NotNatural(format!(
                    "leg at {} does not run from the apex to obj({})",
                    shape.label(p),
                    shape.label(p)
                )));
            }
        }
        for (&(p, q), f) in diagram.arrows() {
            if f.after(&legs[p])? != legs[q] {
                return Err(Error::NotNatural(format!(
                    "arr({p}<={q}) . leg({p}) != leg({q})",
                    p = shape.label(p),
                    q = shape.label(q)
                )));
            }
        }
        Ok(Cone {
            apex,
            diagram,
            legs,
        })
    }

    pub fn apex(&self) -> &FinSet {
        &self.apex
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn legs(&self) -> &[FinFn] {
        &self.legs
    }

    pub fn leg(&self, p: usize) -> &FinFn {
        &self.legs[p]
    }
}

/// The set of compatible families, labeled `(x_0,...,x_n)`, and the cone of
/// coordinate projections.
pub fn limit_of_diagram(d: &Diagram) -> Result<(FinSet, Cone)> {
    let families = d.compatible_families();
    let set = FinSet::new(
        families
            .iter()
            .map(|fam| {
                let parts: Vec<&str> = fam
                    .iter()
                    .enumerate()
                    .map(|(p, &x)| d.obj(p).label(x))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect(),
    )?;
    let legs = (0..d.shape().len())
        .map(|p| {
            FinFn::new(
                set.clone(),
                d.obj(p).clone(),
                families.iter().map(|f| f[p]).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let cone = Cone::new(set.clone(), d.clone(), legs)?;
    Ok((set, cone))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Order;

    fn set(n: usize) -> FinSet {
        FinSet::numbered(n)
    }

    #[test]
    fn one_point_limit() {
        let d = Diagram::new(FinPoset::chain(1), vec![set(3)], BTreeMap::new()).unwrap();
        let (lim, _) = limit_of_diagram(&d).unwrap();
        assert_eq!(lim.len(), 3);
    }

    #[test]
    fn discrete_limit_is_product() {
        let shape = FinPoset::numbered(Order::discrete(2)).unwrap();
        let d = Diagram::new(shape, vec![set(2), set(3)], BTreeMap::new()).unwrap();
        let (lim, cone) = limit_of_diagram(&d).unwrap();
        assert_eq!(lim.len(), 6);
        assert_eq!(cone.leg(1).table(), &[0, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn chain_limit_matches_initial_object() {
        let f = FinFn::new(set(3), set(2), vec![0, 1, 1]).unwrap();
        let d = Diagram::new(
            FinPoset::chain(2),
            vec![set(3), set(2)],
            BTreeMap::from([((0, 1), f)]),
        )
        .unwrap();
        let (lim, cone) = limit_of_diagram(&d).unwrap();
        assert_eq!(lim.len(), 3);
        assert!(cone.leg(0).is_bijective());
    }

    #[test]
    fn functoriality_is_checked() {
        let f = FinFn::new(set(2), set(2), vec![1, 0]).unwrap();
        let g = FinFn::new(set(2), set(2), vec![0, 0]).unwrap();
        let arr = BTreeMap::from([((0, 1), f.clone()), ((1, 2), f), ((0, 2), g)]);
        let err = Diagram::new(FinPoset::chain(3), vec![set(2), set(2), set(2)], arr).unwrap_err();
        assert!(matches!(err, Error::NotFunctorial(_)));
    }

    #[test]
    fn cone_naturality_is_checked() {
        let f = FinFn::new(set(2), set(1), vec![0, 0]).unwrap();
        let d = Diagram::new(
            FinPoset::chain(2),
            vec![set(2), set(1)],
            BTreeMap::from([((0, 1), f)]),
        )
        .unwrap();
        let legs = vec![
            FinFn::new(set(1), set(2), vec![1]).unwrap(),
            FinFn::new(set(1), set(1), vec![0]).unwrap(),
        ];
        assert!(Cone::new(set(1), d, legs).is_ok());
    }
}
