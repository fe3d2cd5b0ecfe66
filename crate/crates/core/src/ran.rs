//! Relational analytica: functions out of a base ordered by refinement of
//! their kernels, with relations closing the triangle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::{enumerate_fns, kernel_partition, refines, FinFn, FinRel, FinSet, Partition};

pub const MAX_BASE: usize = 3;
pub const MAX_COD: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawRAnObj")]
pub struct RAnObj {
    arrow: FinFn,
    #[serde(skip)]
    kernel: Partition,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRAnObj {
    arrow: FinFn,
}

impl From<RawRAnObj> for RAnObj {
    fn from(raw: RawRAnObj) -> Self {
        RAnObj::new(raw.arrow)
    }
}

impl RAnObj {
    pub fn new(arrow: FinFn) -> Self {
        RAnObj {
            kernel: kernel_partition(&arrow),
            arrow,
        }
    }

    pub fn arrow(&self) -> &FinFn {
        &self.arrow
    }

    pub fn kernel(&self) -> &Partition {
        &self.kernel
    }

    pub fn base(&self) -> &FinSet {
        self.arrow.dom()
    }
}

/// A morphism exists iff the source kernel refines the target kernel.
pub fn ran_hom_exists(src: &RAnObj, dst: &RAnObj) -> Result<bool> {
    if src.base() != dst.base() {
        return Err(Error::CarrierMismatch(format!(
            "analytica over {} and {}",
            src.base(),
            dst.base()
        )));
    }
    refines(&src.kernel, &dst.kernel)
}

/// `R = {(k a, h a)}`, which satisfies `R ∘ graph(k) = graph(h)` exactly
/// when the kernel of `k` refines that of `h`.
pub fn closing_relation(src: &RAnObj, dst: &RAnObj) -> Result<FinRel> {
    if !ran_hom_exists(src, dst)? {
        return Err(Error::RefinementViolation(
            "two points identified by the source are separated by the target".into(),
        ));
    }
    let (k, h) = (src.arrow(), dst.arrow());
    let mut pairs: Vec<(usize, usize)> = (0..k.dom().len())
        .map(|a| (k.apply(a), h.apply(a)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    FinRel::new(k.cod().clone(), h.cod().clone(), pairs)
}

/// Whether `r ∘ graph(k) = graph(h)`.
pub fn closes(r: &FinRel, k: &FinFn, h: &FinFn) -> Result<bool> {
    Ok(r.after(&k.graph())? == h.graph())
}

/// A pair related in relational analytica with no function `f` such that
/// `f ∘ k = h`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationOnlyWitness {
    pub src: RAnObj,
    pub dst: RAnObj,
    pub closing_relation: FinRel,
    pub functions_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RAnReport {
    pub max_base: usize,
    pub max_cod: usize,
    pub pairs_checked: usize,
    /// Pairs closed by some function.
    pub function_closed: usize,
    /// Function-closed pairs whose kernels fail to refine.
    pub function_implies_refinement_violations: usize,
    /// Refining pairs closed by no function, by base size.
    pub relation_only_by_base: Vec<usize>,
    pub witness: Option<RelationOnlyWitness>,
    pub closing_relations_checked: usize,
    pub closing_relation_failures: usize,
    pub relations_checked: usize,
    pub converse_violations: usize,
    pub preorder_violations: usize,
}

impl RAnReport {
    pub fn passed(&self) -> bool {
        self.function_implies_refinement_violations == 0
            && self.witness.is_some()
            && self.closing_relation_failures == 0
            && self.converse_violations == 0
            && self.preorder_violations == 0
    }
}

fn objects_over(a: usize, max_cod: usize) -> Vec<RAnObj> {
    let base = FinSet::numbered(a);
    (0..=max_cod)
        .flat_map(|x| {
            let cod = FinSet::numbered(x);
            enumerate_fns(&base, &cod)
                .map(RAnObj::new)
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Whether the relation `mask` on `x × y` (bit `i*y + j`) sends every `k a`
/// exactly to `{h a}`.
fn mask_closes(mask: u32, y: usize, k: &[usize], h: &[usize]) -> bool {
    k.iter().zip(h).all(|(&ka, &ha)| {
        let row = (mask >> (ka * y)) & ((1u32 << y) - 1);
        row == 1 << ha
    })
}

/// Exhaustive comparison of function closure, kernel refinement and
/// relational closure over every base `|A| ≤ max_base` and codomains of at
/// most `max_cod` points. Pairs are scanned by base size, then source and
/// target in enumeration order; the witness is the first one found.
pub fn an_implies_ran_check(max_base: usize, max_cod: usize) -> Result<RAnReport> {
    if max_base > MAX_BASE || max_cod > MAX_COD {
        return Err(Error::BoundExceeded {
            what: "relational analytica base/codomain".into(),
            requested: max_base.max(max_cod),
            limit: MAX_BASE.min(MAX_COD),
            estimate: format!(
                "{} pairs x {} relations",
                (0..=max_base)
                    .map(|a| (0..=max_cod).map(|x| x.pow(a as u32)).sum::<usize>().pow(2))
                    .sum::<usize>(),
                1usize << (max_cod * max_cod)
            ),
        });
    }
    let mut report = RAnReport {
        max_base,
        max_cod,
        pairs_checked: 0,
        function_closed: 0,
        function_implies_refinement_violations: 0,
        relation_only_by_base: vec![0; max_base + 1],
        witness: None,
        closing_relations_checked: 0,
        closing_relation_failures: 0,
        relations_checked: 0,
        converse_violations: 0,
        preorder_violations: 0,
    };
    for a in 0..=max_base {
        let objs = objects_over(a, max_cod);
        let n = objs.len();
        let mut hom = vec![false; n * n];
        for (i, src) in objs.iter().enumerate() {
            for (j, dst) in objs.iter().enumerate() {
                report.pairs_checked += 1;
                let (k, h) = (src.arrow(), dst.arrow());
                let related = ran_hom_exists(src, dst)?;
                hom[i * n + j] = related;
                let candidates: Vec<FinFn> = enumerate_fns(k.cod(), h.cod()).collect();
                let closed_by_function = candidates
                    .iter()
                    .any(|f| f.after(k).map(|fk| fk == *h).unwrap_or(false));
                if closed_by_function {
                    report.function_closed += 1;
                    if !related {
                        report.function_implies_refinement_violations += 1;
                    }
                }
                if related {
                    report.closing_relations_checked += 1;
                    let r = closing_relation(src, dst)?;
                    if !closes(&r, k, h)? {
                        report.closing_relation_failures += 1;
                    }
                    if !closed_by_function {
                        report.relation_only_by_base[a] += 1;
                        if report.witness.is_none() {
                            report.witness = Some(RelationOnlyWitness {
                                src: src.clone(),
                                dst: dst.clone(),
                                closing_relation: r,
                                functions_checked: candidates.len(),
                            });
                        }
                    }
                }
                let (x, y) = (k.cod().len(), h.cod().len());
                for mask in 0..1u32 << (x * y) {
                    report.relations_checked += 1;
                    if mask_closes(mask, y, k.table(), h.table()) && !related {
                        report.converse_violations += 1;
                    }
                }
            }
        }
        for i in 0..n {
            if !hom[i * n + i] {
                report.preorder_violations += 1;
            }
            for j in 0..n {
                for l in 0..n {
                    if hom[i * n + j] && hom[j * n + l] && !hom[i * n + l] {
                        report.preorder_violations += 1;
                    }
                }
            }
        }
    }
    if let Some(w) = &report.witness {
        verify_witness(w)?;
    }
    Ok(report)
}

/// Re-checks a relation-only witness from scratch.
pub fn verify_witness(w: &RelationOnlyWitness) -> Result<()> {
    let (k, h) = (w.src.arrow(), w.dst.arrow());
    let by_function =
        enumerate_fns(k.cod(), h.cod()).any(|f| f.after(k).map(|fk| fk == *h).unwrap_or(false));
    if !ran_hom_exists(&w.src, &w.dst)? || by_function || !closes(&w.closing_relation, k, h)? {
        return Err(Error::Defect(
            "relation-only witness failed re-verification".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(n: usize, m: usize, t: &[usize]) -> RAnObj {
        RAnObj::new(FinFn::new(FinSet::numbered(n), FinSet::numbered(m), t.to_vec()).unwrap())
    }

    #[test]
    fn hom_existence_examples() {
        let k = obj(2, 2, &[0, 1]);
        let c = obj(2, 1, &[0, 0]);
        assert!(ran_hom_exists(&k, &k).unwrap());
        assert!(ran_hom_exists(&k, &c).unwrap());
        assert!(!ran_hom_exists(&c, &k).unwrap());
        assert!(matches!(
            ran_hom_exists(&k, &obj(1, 1, &[0])),
            Err(Error::CarrierMismatch(_))
        ));
    }

    #[test]
    fn closing_relation_examples() {
        let k = obj(3, 3, &[2, 0, 2]);
        let r = closing_relation(&k, &k).unwrap();
        assert_eq!(
            r.pairs().iter().copied().collect::<Vec<_>>(),
            vec![(0, 0), (2, 2)]
        );
        let inj = obj(2, 3, &[2, 0]);
        let h = obj(2, 2, &[1, 1]);
        let r = closing_relation(&inj, &h).unwrap();
        assert_eq!(
            r.pairs().iter().copied().collect::<Vec<_>>(),
            vec![(0, 1), (2, 1)]
        );
        assert!(closes(&r, inj.arrow(), h.arrow()).unwrap());
        assert!(matches!(
            closing_relation(&obj(2, 1, &[0, 0]), &obj(2, 2, &[0, 1])),
            Err(Error::RefinementViolation(_))
        ));
    }

    #[test]
    fn json_carries_only_the_arrow() {
        let k = obj(2, 2, &[1, 1]);
        let v = serde_json::to_value(&k).unwrap();
        assert_eq!(
            v.as_object().unwrap().keys().collect::<Vec<_>>(),
            vec!["arrow"]
        );
        let back: RAnObj = serde_json::from_value(v).unwrap();
        assert_eq!(back, k);
        assert_eq!(back.kernel().num_classes(), 1);
    }

    #[test]
    fn small_check_passes() {
        let r = an_implies_ran_check(2, 2).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
