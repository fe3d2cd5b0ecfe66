//! The poset counterexample lifted into the comma category, the two proof
//! obligations on lifted diagrams, and the coproduct the name embedding
//! fails to preserve.

use std::sync::Arc;

use serde::Serialize;

use super::coslice::{CoslObj, CosliceCat, Under, UnderMor};
use super::syn::{name_embedding, CommaCat, Indexed, IndexedMor, SynMor, SynObj};
use crate::enumcat::{
    is_coequalizer, is_coproduct, is_pullback, is_regular_epi_in, regular_epi_by_kernel_pair,
    regular_epi_by_search, EnumCat, RegEpiVerdict, Span,
};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::order::{kernel_pair_pos, pos_counterexample, FinPoset, MonotoneMap, Order};

fn indexed(x: &SynObj) -> Arc<Indexed> {
    Arc::new(x.to_indexed())
}

fn lift_mor(f: &SynMor) -> IndexedMor {
    IndexedMor {
        dom: indexed(f.src()),
        cod: indexed(f.dst()),
        table: f.map().table().to_vec(),
    }
}

/// Decorates `f` with the given objects; the decorations must make every
/// triangle commute strictly.
fn decorate(f: &MonotoneMap, src: &SynObj, dst: &SynObj) -> Result<SynMor> {
    SynMor::new(src.clone(), dst.clone(), f.clone())
}

fn check_base(cat: &CommaCat, x: &SynObj) -> Result<()> {
    if x.base().len() != cat.base() {
        return Err(Error::CarrierMismatch(format!(
            "decoration over a base of {} points in a comma instance over {}",
            x.base().len(),
            cat.base()
        )));
    }
    Ok(())
}

/// The comma-level counterexample square, every poset decorated by the
/// constant functor at `id_A`.
#[derive(Clone, Debug, Serialize)]
pub struct LiftedBundle {
    pub base: FinSet,
    pub a: SynObj,
    pub b: SynObj,
    pub c: SynObj,
    pub p: SynMor,
    pub i: SynMor,
    pub pullback: SynObj,
    pub to_a: SynMor,
    pub u_prime: SynMor,
    pub p_regular: RegEpiVerdict,
    pub u_prime_epi: bool,
    pub u_prime_regular_by_kernel_pair: bool,
    pub u_prime_regular_by_parallel_pair_search: bool,
    pub square_is_pullback: bool,
    pub projection_matches: bool,
}

pub fn lift_counterexample(base: &FinSet, cat: &CommaCat) -> Result<LiftedBundle> {
    if base.len() != cat.base() {
        return Err(Error::CarrierMismatch(
            "the instance is over a different base".into(),
        ));
    }
    if cat.max_shape() < 4 {
        return Err(Error::BoundExceeded {
            what: "comma shape size for the lifted square".into(),
            requested: 4,
            limit: cat.max_shape(),
            estimate: "the square needs a 4-element shape".into(),
        });
    }
    let pos = pos_counterexample();
    let point = CoslObj::identity_on(base);
    let deco = |p: &FinPoset| SynObj::constant(p.clone(), &point);
    let (a, b, c) = (deco(&pos.a), deco(&pos.b), deco(&pos.c));
    let p = decorate(&pos.p, &a, &b)?;
    let i = decorate(&pos.i, &c, &b)?;
    let (lp, li) = (lift_mor(&p), lift_mor(&i));
    let span = cat
        .pullback(&lp, &li)
        .ok_or_else(|| Error::Defect("comma pullback not constructed".into()))?;
    let square_is_pullback = is_pullback(cat, &lp, &li, &span)?;
    let pullback = deco(&pos.pullback);
    let to_a = decorate(&pos.to_a, &pullback, &a)?;
    let u_prime = decorate(&pos.u_prime, &pullback, &c)?;
    // the constructed square projects onto the poset square
    let projection_matches = *span.apex.shape == *pos.pullback.order()
        && span.left.table == pos.to_a.table()
        && span.right.table == pos.u_prime.table()
        && span.apex == indexed(&pullback);
    let lu = lift_mor(&u_prime);
    let bundle = LiftedBundle {
        base: base.clone(),
        p_regular: is_regular_epi_in(cat, &lp),
        u_prime_epi: cat.is_epi(&lu),
        u_prime_regular_by_kernel_pair: regular_epi_by_kernel_pair(cat, &lu).unwrap_or(true),
        u_prime_regular_by_parallel_pair_search: regular_epi_by_search(cat, &lu),
        square_is_pullback,
        projection_matches,
        a,
        b,
        c,
        p,
        i,
        pullback,
        to_a,
        u_prime,
    };
    Ok(bundle)
}

impl LiftedBundle {
    /// Regular `p`, epi but not regular `u'`, a genuine pullback square
    /// projecting onto the poset one.
    pub fn verified(&self) -> bool {
        self.p_regular.regular
            && self.u_prime_epi
            && !self.u_prime_regular_by_kernel_pair
            && !self.u_prime_regular_by_parallel_pair_search
            && self.square_is_pullback
            && self.projection_matches
    }
}

/// Whether the decorated parallel pair `f, g: X ⇒ Y` and map `q: Y -> Q`
/// form a coequalizer in the comma instance.
pub fn check_c1(
    cat: &CommaCat,
    (f, g, q): (&MonotoneMap, &MonotoneMap, &MonotoneMap),
    [x, y, z]: [&SynObj; 3],
) -> Result<bool> {
    for d in [x, y, z] {
        check_base(cat, d)?;
    }
    let (f, g, q) = (decorate(f, x, y)?, decorate(g, x, y)?, decorate(q, y, z)?);
    is_coequalizer(cat, &lift_mor(&f), &lift_mor(&g), &lift_mor(&q))
}

/// Whether the decorated square with legs `l: P -> X`, `r: P -> Y` over the
/// cospan `f: X -> Z <- Y: g` is a pullback in the comma instance.
pub fn check_c2(
    cat: &CommaCat,
    (f, g, l, r): (&MonotoneMap, &MonotoneMap, &MonotoneMap, &MonotoneMap),
    [p, x, y, z]: [&SynObj; 4],
) -> Result<bool> {
    for d in [p, x, y, z] {
        check_base(cat, d)?;
    }
    let f = decorate(f, x, z)?;
    let g = decorate(g, y, z)?;
    let l = decorate(l, p, x)?;
    let r = decorate(r, p, y)?;
    let span = Span {
        apex: indexed(p),
        left: lift_mor(&l),
        right: lift_mor(&r),
    };
    is_pullback(cat, &lift_mor(&f), &lift_mor(&g), &span)
}

/// The kernel-pair coequalizer and the pullback square of the
/// counterexample, constantly decorated, as inputs for the two checks.
pub struct ProofDiagrams {
    pub kernel: FinPoset,
    pub k0: MonotoneMap,
    pub k1: MonotoneMap,
    pub p: MonotoneMap,
    pub a: FinPoset,
    pub b: FinPoset,
    pub c: FinPoset,
    pub i: MonotoneMap,
    pub pullback: FinPoset,
    pub to_a: MonotoneMap,
    pub u_prime: MonotoneMap,
}

pub fn proof_diagrams() -> Result<ProofDiagrams> {
    let pos = pos_counterexample();
    let (kernel, k0, k1) = kernel_pair_pos(&pos.p)?;
    Ok(ProofDiagrams {
        kernel,
        k0,
        k1,
        p: pos.p,
        a: pos.a,
        b: pos.b,
        c: pos.c,
        i: pos.i,
        pullback: pos.pullback,
        to_a: pos.to_a,
        u_prime: pos.u_prime,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoproductWitness {
    pub summands: [CoslObj; 2],
    /// The pushout under the base, with its injections.
    pub coslice_coproduct: CoslObj,
    pub coslice_injections: [FinFn; 2],
    pub coslice_coproduct_verified: bool,
    pub name_of_coproduct: SynObj,
    pub comma_coproduct: SynObj,
    pub comma_coproduct_verified: bool,
    pub name_shape_size: usize,
    pub comma_shape_size: usize,
    /// Whether some comma morphism between the two is an isomorphism.
    pub isomorphic: bool,
}

/// Two copies of `id_A`: their coproduct under `A` is `id_A` again, a one
/// point shape after naming, while the comma coproduct of the names is a
/// two-point antichain.
pub fn coproduct_nonpreservation_witness(base: &FinSet, bound: usize) -> Result<CoproductWitness> {
    let n = base.len();
    let coslice = CosliceCat::new(n, bound.max(n))?;
    let comma = CommaCat::with_limits(n, bound, 2, n.max(1))?;
    let id = Under {
        size: n,
        arrow: (0..n).collect(),
    };
    let inj = UnderMor {
        dom: id.clone(),
        cod: id.clone(),
        table: (0..n).collect(),
    };
    // the pushout of id_A and id_A under A, by coequalizing the two copies
    let coslice_coproduct_verified = is_coproduct(&coslice, &inj, &inj)?;

    let summand = CoslObj::identity_on(base);
    let name = name_embedding(&summand);
    let antichain = FinPoset::numbered(Order::discrete(2))?;
    let comma_coproduct = SynObj::constant(antichain, &summand);
    let (one, two) = (indexed(&name), indexed(&comma_coproduct));
    let i1 = IndexedMor {
        dom: one.clone(),
        cod: two.clone(),
        table: vec![0],
    };
    let i2 = IndexedMor {
        dom: one.clone(),
        cod: two.clone(),
        table: vec![1],
    };
    let comma_coproduct_verified = is_coproduct(&comma, &i1, &i2)?;
    let isomorphic = comma
        .hom(&one, &two)
        .iter()
        .chain(comma.hom(&two, &one).iter())
        .any(|f| comma.is_iso(f));
    let id_fn = FinFn::identity(base);
    Ok(CoproductWitness {
        summands: [summand.clone(), summand.clone()],
        coslice_coproduct: summand,
        coslice_injections: [id_fn.clone(), id_fn],
        coslice_coproduct_verified,
        name_shape_size: name.shape().len(),
        comma_shape_size: comma_coproduct.shape().len(),
        name_of_coproduct: name,
        comma_coproduct,
        comma_coproduct_verified,
        isomorphic,
    })
}

impl CoproductWitness {
    pub fn verified(&self) -> bool {
        self.coslice_coproduct_verified
            && self.comma_coproduct_verified
            && self.name_shape_size == 1
            && self.comma_shape_size == 2
            && !self.isomorphic
    }
}
