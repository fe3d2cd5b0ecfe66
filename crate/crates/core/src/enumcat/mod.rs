//! Categories whose objects (up to a bound) and hom-sets can be listed, and
//! brute-force checkers for universal properties over them.
//!
//! Every checker quantifies only over the instance's enumerated test
//! objects; a `true` answer means "no counterexample up to the bound".

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub mod audit;
pub mod posets;
pub mod sets;

pub use audit::{
    audit_regularity, Audit, AuditStats, RegularityChecks, RegularityReport, UnstableSquare,
};
pub use posets::{PosCat, PosMor};
pub use sets::{SetCat, SetMor};

/// A span `left: apex -> X`, `right: apex -> Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span<O, M> {
    pub apex: O,
    pub left: M,
    pub right: M,
}

pub trait EnumCat: Sync {
    type Obj: Clone + Eq + Hash + Debug + Send + Sync;
    type Mor: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;

    fn bound(&self) -> usize;

    /// Test objects, one per isomorphism class up to the bound, in
    /// canonical order.
    fn objects(&self) -> &[Self::Obj];

    /// Size measure used to order audits so smaller witnesses come first.
    fn level(&self, a: &Self::Obj) -> usize;

    /// All morphisms `a -> b` in a deterministic order. Must work for any
    /// objects, not only enumerated ones.
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;

    fn cod(&self, f: &Self::Mor) -> Self::Obj;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    fn identity(&self, a: &Self::Obj) -> Self::Mor;

    /// A constructed pullback of the cospan `f, g`, when the instance has one.
    fn pullback(&self, _f: &Self::Mor, _g: &Self::Mor) -> Option<Span<Self::Obj, Self::Mor>> {
        None
    }

    /// A constructed coequalizer map out of `cod(f)`.
    fn coequalizer(&self, _f: &Self::Mor, _g: &Self::Mor) -> Option<Self::Mor> {
        None
    }

    /// All `u` with `u ∘ q = h`.
    fn factor_through(&self, q: &Self::Mor, h: &Self::Mor) -> Vec<Self::Mor> {
        self.hom(&self.cod(q), &self.cod(h))
            .into_iter()
            .filter(|u| self.compose(u, q) == *h)
            .collect()
    }

    fn is_iso(&self, f: &Self::Mor) -> bool {
        let (a, b) = (self.dom(f), self.cod(f));
        let (ida, idb) = (self.identity(&a), self.identity(&b));
        self.hom(&b, &a)
            .iter()
            .any(|g| self.compose(g, f) == ida && self.compose(f, g) == idb)
    }

    /// Epi against the test objects.
    fn is_epi(&self, f: &Self::Mor) -> bool {
        let b = self.cod(f);
        self.objects().iter().all(|t| {
            let mut seen = HashSet::new();
            self.hom(&b, t)
                .iter()
                .all(|h| seen.insert(self.compose(h, f)))
        })
    }

    /// The kernel-pair regular-epi verdict. Instances may override this
    /// with a computation that avoids materializing large kernel pairs, as
    /// long as it decides the same comparison.
    fn kernel_pair_regular(&self, f: &Self::Mor) -> Option<bool>
    where
        Self: Sized,
    {
        regular_epi_by_kernel_pair(self, f)
    }

    /// Test objects used when an audit verifies its own constructions.
    /// Defaults to every test object.
    fn probes(&self) -> &[Self::Obj] {
        self.objects()
    }

    /// Instance parameters for reports.
    fn parameters(&self) -> Value {
        Value::Object(Default::default())
    }

    fn describe_obj(&self, a: &Self::Obj) -> Value;

    fn describe_mor(&self, f: &Self::Mor) -> Value;
}

fn shape_error(msg: &str) -> Error {
    Error::ShapeMismatch(msg.into())
}

/// Whether `q` is a coequalizer of the parallel pair `f, g`.
pub fn is_coequalizer<C: EnumCat>(cat: &C, f: &C::Mor, g: &C::Mor, q: &C::Mor) -> Result<bool> {
    is_coequalizer_against(cat, cat.objects(), f, g, q)
}

/// [`is_coequalizer`] quantifying over the given test objects only.
pub fn is_coequalizer_against<C: EnumCat>(
    cat: &C,
    tests: &[C::Obj],
    f: &C::Mor,
    g: &C::Mor,
    q: &C::Mor,
) -> Result<bool> {
    let y = cat.cod(f);
    if cat.dom(f) != cat.dom(g) || y != cat.cod(g) {
        return Err(shape_error("coequalizer candidates need a parallel pair"));
    }
    if cat.dom(q) != y {
        return Err(shape_error(
            "the coequalizing map must start at the pair's codomain",
        ));
    }
    if cat.compose(q, f) != cat.compose(q, g) {
        return Ok(false);
    }
    let qcod = cat.cod(q);
    for t in tests {
        let cocones = cat
            .hom(&y, t)
            .iter()
            .filter(|h| cat.compose(h, f) == cat.compose(h, g))
            .count();
        let mediators = cat.hom(&qcod, t);
        if mediators.len() != cocones {
            return Ok(false);
        }
        let mut seen = HashSet::new();
        if !mediators.iter().all(|u| seen.insert(cat.compose(u, q))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `span` is a pullback of the cospan `f: X -> Z <- Y: g`.
pub fn is_pullback<C: EnumCat>(
    cat: &C,
    f: &C::Mor,
    g: &C::Mor,
    span: &Span<C::Obj, C::Mor>,
) -> Result<bool> {
    is_pullback_against(cat, cat.objects(), f, g, span)
}

/// [`is_pullback`] quantifying over the given test objects only.
pub fn is_pullback_against<C: EnumCat>(
    cat: &C,
    tests: &[C::Obj],
    f: &C::Mor,
    g: &C::Mor,
    span: &Span<C::Obj, C::Mor>,
) -> Result<bool> {
    let (x, y, z) = (cat.dom(f), cat.dom(g), cat.cod(f));
    if cat.cod(g) != z {
        return Err(shape_error("pullback needs a cospan"));
    }
    if cat.dom(&span.left) != span.apex
        || cat.dom(&span.right) != span.apex
        || cat.cod(&span.left) != x
        || cat.cod(&span.right) != y
    {
        return Err(shape_error("span legs do not match the cospan"));
    }
    if cat.compose(f, &span.left) != cat.compose(g, &span.right) {
        return Err(Error::NonCommuting("the candidate pullback square".into()));
    }
    for t in tests {
        let mut by_image: HashMap<C::Mor, usize> = HashMap::new();
        for a in cat.hom(t, &x) {
            *by_image.entry(cat.compose(f, &a)).or_default() += 1;
        }
        let cones: usize = cat
            .hom(t, &y)
            .iter()
            .map(|b| by_image.get(&cat.compose(g, b)).copied().unwrap_or(0))
            .sum();
        let mediators = cat.hom(t, &span.apex);
        if mediators.len() != cones {
            return Ok(false);
        }
        let mut seen = HashSet::new();
        if !mediators
            .iter()
            .all(|u| seen.insert((cat.compose(&span.left, u), cat.compose(&span.right, u))))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `i1: X -> S`, `i2: Y -> S` is a coproduct cocone.
pub fn is_coproduct<C: EnumCat>(cat: &C, i1: &C::Mor, i2: &C::Mor) -> Result<bool> {
    let s = cat.cod(i1);
    if cat.cod(i2) != s {
        return Err(shape_error("coproduct injections need a common codomain"));
    }
    let (x, y) = (cat.dom(i1), cat.dom(i2));
    for t in cat.objects() {
        let pairs = cat.hom(&x, t).len() * cat.hom(&y, t).len();
        let mediators = cat.hom(&s, t);
        if mediators.len() != pairs {
            return Ok(false);
        }
        let mut seen = HashSet::new();
        if !mediators
            .iter()
            .all(|u| seen.insert((cat.compose(u, i1), cat.compose(u, i2))))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegEpiMethod {
    KernelPair,
    ParallelPairSearch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegEpiVerdict {
    pub regular: bool,
    pub method: RegEpiMethod,
}

/// `f` is regular iff the comparison from the coequalizer of its kernel
/// pair is an isomorphism. `None` when the instance cannot construct the
/// kernel pair or its coequalizer.
pub fn regular_epi_by_kernel_pair<C: EnumCat>(cat: &C, f: &C::Mor) -> Option<bool> {
    let kp = cat.pullback(f, f)?;
    let q = cat.coequalizer(&kp.left, &kp.right)?;
    let comparisons = cat.factor_through(&q, f);
    Some(comparisons.len() == 1 && cat.is_iso(&comparisons[0]))
}

/// Searches parallel pairs out of every test object for one that `f`
/// coequalizes universally.
pub fn regular_epi_by_search<C: EnumCat>(cat: &C, f: &C::Mor) -> bool {
    find_presenting_pair(cat, f).is_some()
}

/// A parallel pair `(a, b)` with `f` as its coequalizer, searched over
/// the test objects in canonical order.
pub fn find_presenting_pair<C: EnumCat>(cat: &C, f: &C::Mor) -> Option<(C::Mor, C::Mor)> {
    if !cat.is_epi(f) {
        return None;
    }
    let x = cat.dom(f);
    for w in cat.objects() {
        let maps = cat.hom(w, &x);
        for (i, a) in maps.iter().enumerate() {
            let fa = cat.compose(f, a);
            for b in &maps[i..] {
                if cat.compose(f, b) == fa && is_coequalizer(cat, a, b, f).unwrap_or(false) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
    }
    None
}

/// Regular-epi verdict, by kernel pairs when the instance constructs them
/// and by parallel-pair search otherwise.
pub fn is_regular_epi_in<C: EnumCat>(cat: &C, f: &C::Mor) -> RegEpiVerdict {
    match regular_epi_by_kernel_pair(cat, f) {
        Some(regular) => RegEpiVerdict {
            regular,
            method: RegEpiMethod::KernelPair,
        },
        None => RegEpiVerdict {
            regular: regular_epi_by_search(cat, f),
            method: RegEpiMethod::ParallelPairSearch,
        },
    }
}

/// Spot-checks identities and associativity on every composable triple of
/// enumerated morphisms.
pub fn check_axioms<C: EnumCat>(cat: &C) -> Result<()> {
    let objs = cat.objects();
    for a in objs {
        let ida = cat.identity(a);
        if cat.dom(&ida) != *a || cat.cod(&ida) != *a {
            return Err(Error::Defect(format!(
                "identity on {a:?} has the wrong ends"
            )));
        }
        for b in objs {
            for f in cat.hom(a, b) {
                if cat.compose(&f, &ida) != f || cat.compose(&cat.identity(b), &f) != f {
                    return Err(Error::Defect(format!("unit law fails for {f:?}")));
                }
                for c in objs {
                    for g in cat.hom(b, c) {
                        let gf = cat.compose(&g, &f);
                        if cat.dom(&gf) != *a || cat.cod(&gf) != *c {
                            return Err(Error::Defect(format!(
                                "composite {gf:?} has the wrong ends"
                            )));
                        }
                        for d in objs {
                            for h in cat.hom(c, d) {
                                if cat.compose(&h, &gf) != cat.compose(&cat.compose(&h, &g), &f) {
                                    return Err(Error::Defect(format!(
                                        "associativity fails for {f:?}, {g:?}, {h:?}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
