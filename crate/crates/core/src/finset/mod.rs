//! Finite sets, functions, relations and partitions, with the limits and
//! colimits of the category of finite sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tables::{self, Tables};

pub mod diagram;

pub use diagram::{limit_of_diagram, Cone, Diagram};

/// A finite set of distinctly labeled elements, indexed `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFinSet")]
pub struct FinSet {
    labels: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFinSet {
    labels: Vec<String>,
}

impl TryFrom<RawFinSet> for FinSet {
    type Error = Error;

    fn try_from(raw: RawFinSet) -> Result<Self> {
        FinSet::new(raw.labels)
    }
}

impl FinSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(FinSet { labels })
    }

    pub fn from_labels<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        FinSet::new(labels.into_iter().map(Into::into).collect())
    }

    /// The set `{"0", ..., "n-1"}`.
    pub fn numbered(n: usize) -> Self {
        FinSet {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn empty() -> Self {
        FinSet { labels: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(", "))
    }
}

/// A total function between finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFinFn")]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFinFn {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl TryFrom<RawFinFn> for FinFn {
    type Error = Error;

    fn try_from(raw: RawFinFn) -> Result<Self> {
        FinFn::new(raw.dom, raw.cod, raw.table)
    }
}

pub(crate) fn check_table(table: &[usize], n: usize, m: usize) -> Result<()> {
    if table.len() != n {
        return Err(Error::TableLength {
            expected: n,
            got: table.len(),
        });
    }
    if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= m) {
        return Err(Error::TableOutOfRange {
            index,
            value,
            cod: m,
        });
    }
    Ok(())
}

impl FinFn {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        check_table(&table, dom.len(), cod.len())?;
        Ok(FinFn { dom, cod, table })
    }

    pub fn identity(set: &FinSet) -> Self {
        FinFn {
            dom: set.clone(),
            cod: set.clone(),
            table: (0..set.len()).collect(),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinFn) -> Result<FinFn> {
        if f.cod != self.dom {
            return Err(Error::CarrierMismatch(format!(
                "cannot compose: codomain {} differs from domain {}",
                f.cod, self.dom
            )));
        }
        Ok(FinFn {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            table: tables::compose(&self.table, &f.table),
        })
    }

    pub fn is_injective(&self) -> bool {
        tables::is_injective(&self.table, self.cod.len())
    }

    pub fn is_surjective(&self) -> bool {
        tables::is_surjective(&self.table, self.cod.len())
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn graph(&self) -> FinRel {
        FinRel {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            pairs: self.table.iter().copied().enumerate().collect(),
        }
    }
}

/// A relation `dom ⇸ cod` as a set of index pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFinRel")]
pub struct FinRel {
    dom: FinSet,
    cod: FinSet,
    pairs: BTreeSet<(usize, usize)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFinRel {
    dom: FinSet,
    cod: FinSet,
    pairs: Vec<(usize, usize)>,
}

impl TryFrom<RawFinRel> for FinRel {
    type Error = Error;

    fn try_from(raw: RawFinRel) -> Result<Self> {
        FinRel::new(raw.dom, raw.cod, raw.pairs)
    }
}

impl FinRel {
    pub fn new(dom: FinSet, cod: FinSet, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a >= dom.len() || b >= cod.len() {
                return Err(Error::RelationOutOfRange(format!("({a}, {b})")));
            }
            if !set.insert((a, b)) {
                return Err(Error::DuplicatePair(format!("({a}, {b})")));
            }
        }
        Ok(FinRel {
            dom,
            cod,
            pairs: set,
        })
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    /// Relational composite `self ∘ r`: pairs `(a, c)` with some `b` such
    /// that `(a, b) ∈ r` and `(b, c) ∈ self`.
    pub fn after(&self, r: &FinRel) -> Result<FinRel> {
        if r.cod != self.dom {
            return Err(Error::CarrierMismatch(format!(
                "cannot compose relations: codomain {} differs from domain {}",
                r.cod, self.dom
            )));
        }
        let pairs = r
            .pairs
            .iter()
            .flat_map(|&(a, b)| {
                self.pairs
                    .range((b, 0)..(b + 1, 0))
                    .map(move |&(_, c)| (a, c))
            })
            .collect();
        Ok(FinRel {
            dom: r.dom.clone(),
            cod: self.cod.clone(),
            pairs,
        })
    }
}

/// An equivalence relation on a finite carrier, stored as class ids in
/// first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct Partition {
    carrier: FinSet,
    class_of: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPartition {
    carrier: FinSet,
    class_of: Vec<usize>,
}

impl TryFrom<RawPartition> for Partition {
    type Error = Error;

    fn try_from(raw: RawPartition) -> Result<Self> {
        Partition::new(raw.carrier, &raw.class_of)
    }
}

impl Partition {
    /// Builds a partition from arbitrary class ids; the ids are canonicalized.
    pub fn new(carrier: FinSet, ids: &[usize]) -> Result<Self> {
        if ids.len() != carrier.len() {
            return Err(Error::TableLength {
                expected: carrier.len(),
                got: ids.len(),
            });
        }
        Ok(Partition {
            class_of: tables::canonical_ids(ids),
            carrier,
        })
    }

    pub fn discrete(carrier: &FinSet) -> Self {
        Partition {
            class_of: (0..carrier.len()).collect(),
            carrier: carrier.clone(),
        }
    }

    pub fn indiscrete(carrier: &FinSet) -> Self {
        Partition {
            class_of: vec![0; carrier.len()],
            carrier: carrier.clone(),
        }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn num_classes(&self) -> usize {
        tables::class_count(&self.class_of)
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Members of each class, in index order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}

/// The equivalence `a ≈ a'` iff `h(a) = h(a')`.
pub fn kernel_partition(h: &FinFn) -> Partition {
    Partition {
        carrier: h.dom.clone(),
        class_of: tables::canonical_ids(&h.table),
    }
}

/// Whether every class of `p` lies inside a class of `q`.
pub fn refines(p: &Partition, q: &Partition) -> Result<bool> {
    if p.carrier != q.carrier {
        return Err(Error::CarrierMismatch(format!(
            "partitions live on {} and {}",
            p.carrier, q.carrier
        )));
    }
    Ok(induced_table(p, q).is_some())
}

fn induced_table(p: &Partition, q: &Partition) -> Option<Vec<usize>> {
    tables::factor_surjective(&p.class_of, p.num_classes(), &q.class_of)
}

/// The quotient set, labeled by the least-index member of each class, and
/// the projection onto it.
pub fn quotient(p: &Partition) -> (FinSet, FinFn) {
    let labels = p
        .classes()
        .iter()
        .map(|members| p.carrier.label(members[0]).to_string())
        .collect();
    let set = FinSet { labels };
    let proj = FinFn {
        dom: p.carrier.clone(),
        cod: set.clone(),
        table: p.class_of.clone(),
    };
    (set, proj)
}

/// The map `carrier/p -> carrier/q` sending a `p`-class to the `q`-class
/// containing it.
pub fn induced_map(p: &Partition, q: &Partition) -> Result<FinFn> {
    if p.carrier != q.carrier {
        return Err(Error::CarrierMismatch(format!(
            "partitions live on {} and {}",
            p.carrier, q.carrier
        )));
    }
    let table = induced_table(p, q).ok_or_else(|| {
        Error::RefinementViolation("some class of the source meets two target classes".into())
    })?;
    Ok(FinFn {
        dom: quotient(p).0,
        cod: quotient(q).0,
        table,
    })
}

/// `X ×_Z Y` with its two projections. Elements are labeled `(x,y)`.
pub fn pullback_fn(f: &FinFn, g: &FinFn) -> Result<(FinSet, FinFn, FinFn)> {
    if f.cod != g.cod {
        return Err(Error::CodomainMismatch(format!("{} vs {}", f.cod, g.cod)));
    }
    let pairs = tables::pullback_pairs(&f.table, &g.table);
    let apex = FinSet {
        labels: pairs
            .iter()
            .map(|&(x, y)| format!("({},{})", f.dom.label(x), g.dom.label(y)))
            .collect(),
    };
    let left = FinFn {
        dom: apex.clone(),
        cod: f.dom.clone(),
        table: pairs.iter().map(|p| p.0).collect(),
    };
    let right = FinFn {
        dom: apex.clone(),
        cod: g.dom.clone(),
        table: pairs.iter().map(|p| p.1).collect(),
    };
    Ok((apex, left, right))
}

pub fn kernel_pair(f: &FinFn) -> (FinSet, FinFn, FinFn) {
    pullback_fn(f, f).expect("a map shares its codomain with itself")
}

fn check_parallel(f: &FinFn, g: &FinFn) -> Result<()> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::NotParallel(format!(
            "{} -> {} and {} -> {}",
            f.dom, f.cod, g.dom, g.cod
        )));
    }
    Ok(())
}

/// Quotient of the common codomain by the equivalence generated by
/// `f(x) ~ g(x)`.
pub fn coequalizer_fn(f: &FinFn, g: &FinFn) -> Result<(FinSet, FinFn)> {
    check_parallel(f, g)?;
    let ids = tables::coequalizer_ids(&f.table, &g.table, f.cod.len());
    let p = Partition {
        carrier: f.cod.clone(),
        class_of: ids,
    };
    Ok(quotient(&p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FnClass {
    pub mono: bool,
    pub epi: bool,
    pub regular_epi: bool,
}

/// Regularity is decided by comparing the coequalizer of the kernel pair
/// with the codomain.
pub fn classify_fn(f: &FinFn) -> FnClass {
    let (_, p0, p1) = kernel_pair(f);
    let (_, q) = coequalizer_fn(&p0, &p1).expect("kernel pair projections are parallel");
    let k = q.cod.len();
    let comparison =
        tables::factor_surjective(&q.table, k, &f.table).expect("f coequalizes its kernel pair");
    FnClass {
        mono: f.is_injective(),
        epi: f.is_surjective(),
        regular_epi: tables::is_injective(&comparison, f.cod.len())
            && tables::is_surjective(&comparison, f.cod.len()),
    }
}

/// Every function `x -> y`, in lexicographic table order.
pub fn enumerate_fns<'a>(x: &'a FinSet, y: &'a FinSet) -> impl Iterator<Item = FinFn> + 'a {
    Tables::new(x.len(), y.len()).map(move |table| FinFn {
        dom: x.clone(),
        cod: y.clone(),
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize) -> FinSet {
        FinSet::numbered(n)
    }

    fn fun(n: usize, m: usize, t: &[usize]) -> FinFn {
        FinFn::new(set(n), set(m), t.to_vec()).unwrap()
    }

    fn gluing_map() -> FinFn {
        let a = FinSet::from_labels(["(a,0)", "(a,1)", "(b,0)", "(b,1)"]).unwrap();
        FinFn::new(a, set(3), vec![0, 1, 1, 2]).unwrap()
    }

    #[test]
    fn finset_rejects_duplicates() {
        assert_eq!(
            FinSet::from_labels(["x", "x"]),
            Err(Error::DuplicateLabel("x".into()))
        );
    }

    #[test]
    fn finfn_validates_table() {
        assert!(matches!(
            FinFn::new(set(2), set(1), vec![0]),
            Err(Error::TableLength { .. })
        ));
        assert!(matches!(
            FinFn::new(set(1), set(1), vec![1]),
            Err(Error::TableOutOfRange { .. })
        ));
    }

    #[test]
    fn kernel_partition_examples() {
        assert_eq!(
            kernel_partition(&fun(3, 1, &[0, 0, 0])).class_of(),
            &[0, 0, 0]
        );
        assert_eq!(
            kernel_partition(&fun(3, 3, &[0, 1, 2])).class_of(),
            &[0, 1, 2]
        );
        let k = kernel_partition(&gluing_map());
        assert_eq!(k.classes(), vec![vec![0], vec![1, 2], vec![3]]);
    }

    #[test]
    fn refines_examples() {
        let c = set(3);
        let coarse = Partition::new(c.clone(), &[0, 0, 1]).unwrap();
        let fine = Partition::discrete(&c);
        assert!(refines(&fine, &coarse).unwrap());
        assert!(refines(&coarse, &coarse).unwrap());
        assert!(!refines(&coarse, &fine).unwrap());
        let other = Partition::discrete(&set(2));
        assert!(matches!(
            refines(&fine, &other),
            Err(Error::CarrierMismatch(_))
        ));
    }

    #[test]
    fn quotient_examples() {
        let c = set(3);
        let (q, proj) = quotient(&Partition::discrete(&c));
        assert_eq!(q.len(), 3);
        assert!(proj.is_bijective());
        let (q, _) = quotient(&Partition::indiscrete(&c));
        assert_eq!(q.len(), 1);
        let (q, proj) = quotient(&kernel_partition(&gluing_map()));
        assert_eq!(q.labels(), &["(a,0)", "(a,1)", "(b,1)"]);
        assert_eq!(kernel_partition(&proj), kernel_partition(&gluing_map()));
    }

    #[test]
    fn induced_map_examples() {
        let c = set(3);
        let p = Partition::new(c.clone(), &[0, 1, 0]).unwrap();
        let id = induced_map(&p, &p).unwrap();
        assert_eq!(id.table(), &[0, 1]);
        let m = induced_map(&Partition::discrete(&c), &Partition::indiscrete(&c)).unwrap();
        assert_eq!((m.dom().len(), m.cod().len()), (3, 1));
        assert!(matches!(
            induced_map(&Partition::indiscrete(&c), &Partition::discrete(&c)),
            Err(Error::RefinementViolation(_))
        ));
    }

    #[test]
    fn pullback_examples() {
        let f = fun(3, 2, &[0, 1, 1]);
        let (apex, _, _) = pullback_fn(&f, &FinFn::identity(&set(2))).unwrap();
        assert_eq!(apex.len(), 3);
        let (apex, _, _) = pullback_fn(&fun(2, 1, &[0, 0]), &fun(3, 1, &[0, 0, 0])).unwrap();
        assert_eq!(apex.len(), 6);
        assert_eq!(apex.label(1), "(0,1)");
        let (kp, _, _) = kernel_pair(&fun(3, 2, &[0, 0, 1]));
        assert_eq!(kp.len(), 5);
        assert!(matches!(
            pullback_fn(&f, &fun(1, 3, &[0])),
            Err(Error::CodomainMismatch(_))
        ));
    }

    #[test]
    fn kernel_pair_extremes() {
        let (kp, a, b) = kernel_pair(&fun(3, 4, &[0, 2, 3]));
        assert_eq!(kp.len(), 3);
        assert_eq!(a.table(), b.table());
        let (kp, _, _) = kernel_pair(&fun(3, 1, &[0, 0, 0]));
        assert_eq!(kp.len(), 9);
    }

    #[test]
    fn coequalizer_examples() {
        let f = fun(2, 3, &[0, 2]);
        let (q, proj) = coequalizer_fn(&f, &f).unwrap();
        assert_eq!(q.len(), 3);
        assert!(proj.is_bijective());
        let (q, _) = coequalizer_fn(&fun(2, 3, &[0, 1]), &fun(2, 3, &[1, 2])).unwrap();
        assert_eq!(q.len(), 1);
        assert!(matches!(
            coequalizer_fn(&f, &fun(2, 2, &[0, 1])),
            Err(Error::NotParallel(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let id = FinFn::identity(&set(2));
        assert_eq!(
            classify_fn(&id),
            FnClass {
                mono: true,
                epi: true,
                regular_epi: true
            }
        );
        let incl = fun(1, 2, &[0]);
        let c = classify_fn(&incl);
        assert!(c.mono && !c.epi && !c.regular_epi);
        assert!(classify_fn(&gluing_map()).regular_epi);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_fns(&set(0), &set(0)).count(), 1);
        assert_eq!(enumerate_fns(&set(2), &set(2)).count(), 4);
        let (x, y) = (set(3), set(2));
        let all: Vec<_> = enumerate_fns(&x, &y).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all.iter().filter(|f| f.is_surjective()).count(), 6);
        assert_eq!(all[1].table(), &[0, 0, 1]);
    }

    #[test]
    fn relation_composition() {
        let f = fun(3, 2, &[0, 1, 1]);
        let g = fun(2, 2, &[1, 0]);
        assert_eq!(
            g.graph().after(&f.graph()).unwrap(),
            g.after(&f).unwrap().graph()
        );
        assert!(matches!(
            FinRel::new(set(1), set(1), vec![(0, 0), (0, 0)]),
            Err(Error::DuplicatePair(_))
        ));
    }

    #[test]
    fn json_shapes() {
        let f = fun(2, 1, &[0, 0]);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(
            text,
            r#"{"dom":{"labels":["0","1"]},"cod":{"labels":["0"]},"table":[0,0]}"#
        );
        let p: Partition =
            serde_json::from_str(r#"{"carrier":{"labels":["x","y","z"]},"class_of":[4,1,4]}"#)
                .unwrap();
        assert_eq!(p.class_of(), &[0, 1, 0]);
        assert!(serde_json::from_str::<FinFn>(
            r#"{"dom":{"labels":["0"]},"cod":{"labels":[]},"table":[0]}"#
        )
        .is_err());
    }
}
