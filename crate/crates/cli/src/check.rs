//! `nogo check`: constructions and classifications on user-supplied data,
//! each re-verified by the brute-force checkers before it is printed.

use serde::Deserialize;
use serde_json::{json, Value};

use nogo_core::comma::fiber_as_coslice_check;
use nogo_core::enumcat::{
    is_coequalizer, is_pullback, regular_epi_by_kernel_pair, EnumCat, PosCat, PosMor, SetCat,
    SetMor, Span,
};
use nogo_core::finset::{classify_fn, coequalizer_fn, pullback_fn, FinFn, FinSet};
use nogo_core::order::{classify_pos, coequalizer_pos, pullback_pos, FinPoset, MonotoneMap};
use nogo_core::ran::{closes, closing_relation, ran_hom_exists, RAnObj};
use nogo_core::{Error, Result};

/// Test-object bound for re-verification of user constructions.
const VERIFY_BOUND: usize = 2;

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Query {
    Pullback,
    Coequalizer,
    Classify,
    Fibers,
    Ran,
}

#[derive(Deserialize)]
#[serde(tag = "category", rename_all = "lowercase", deny_unknown_fields)]
enum PairInput {
    Finset { f: FinFn, g: FinFn },
    Finpos { f: MonotoneMap, g: MonotoneMap },
}

#[derive(Deserialize)]
#[serde(tag = "category", rename_all = "lowercase", deny_unknown_fields)]
enum ArrowInput {
    Finset { f: FinFn },
    Finpos { f: MonotoneMap },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberInput {
    shape: FinPoset,
    base: FinSet,
    #[serde(default = "default_values")]
    max_values: usize,
}

fn default_values() -> usize {
    2
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RanInput {
    src: RAnObj,
    dst: RAnObj,
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, query: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::ShapeMismatch(format!("input does not fit the {query} query: {e}")))
}

fn verified(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Defect(format!("{what} failed re-verification")))
    }
}

pub fn run(query: Query, text: &str) -> Result<Value> {
    match query {
        Query::Pullback => pullback(parse(text, "pullback")?),
        Query::Coequalizer => coequalizer(parse(text, "coequalizer")?),
        Query::Classify => classify(parse(text, "classify")?),
        Query::Fibers => fibers(parse(text, "fibers")?),
        Query::Ran => ran(parse(text, "ran")?),
    }
}

fn pullback(input: PairInput) -> Result<Value> {
    match input {
        PairInput::Finset { f, g } => {
            let (apex, l, r) = pullback_fn(&f, &g)?;
            let cat = SetCat::new(VERIFY_BOUND)?;
            let span = Span {
                apex: apex.len(),
                left: SetMor::from(&l),
                right: SetMor::from(&r),
            };
            verified(
                is_pullback(&cat, &SetMor::from(&f), &SetMor::from(&g), &span)?,
                "pullback",
            )?;
            Ok(
                json!({"query": "pullback", "category": "finset", "apex": apex, "left": l, "right": r,
                "verified_against_sets_up_to": VERIFY_BOUND}),
            )
        }
        PairInput::Finpos { f, g } => {
            let (apex, l, r) = pullback_pos(&f, &g)?;
            let cat = PosCat::new(VERIFY_BOUND)?;
            let (pl, pr) = (PosMor::from(&l), PosMor::from(&r));
            let span = Span {
                apex: pl.dom.clone(),
                left: pl,
                right: pr,
            };
            verified(
                is_pullback(&cat, &PosMor::from(&f), &PosMor::from(&g), &span)?,
                "pullback",
            )?;
            Ok(
                json!({"query": "pullback", "category": "finpos", "apex": apex, "left": l, "right": r,
                "verified_against_posets_up_to": VERIFY_BOUND}),
            )
        }
    }
}

fn coequalizer(input: PairInput) -> Result<Value> {
    match input {
        PairInput::Finset { f, g } => {
            let (q_set, q) = coequalizer_fn(&f, &g)?;
            let cat = SetCat::new(VERIFY_BOUND)?;
            let m = SetMor::from(&q);
            verified(
                is_coequalizer(&cat, &SetMor::from(&f), &SetMor::from(&g), &m)?,
                "coequalizer",
            )?;
            Ok(
                json!({"query": "coequalizer", "category": "finset", "object": q_set,
                "projection": q, "projection_is_iso": q.is_bijective(),
                "verified_against_sets_up_to": VERIFY_BOUND}),
            )
        }
        PairInput::Finpos { f, g } => {
            let (q_pos, q) = coequalizer_pos(&f, &g)?;
            let cat = PosCat::new(VERIFY_BOUND)?;
            let m = PosMor::from(&q);
            verified(
                is_coequalizer(&cat, &PosMor::from(&f), &PosMor::from(&g), &m)?,
                "coequalizer",
            )?;
            Ok(
                json!({"query": "coequalizer", "category": "finpos", "object": q_pos,
                "projection": q, "projection_is_iso": q.is_isomorphism(),
                "verified_against_posets_up_to": VERIFY_BOUND}),
            )
        }
    }
}

/// Rebuilds the kernel pair and its coequalizer through the enumerated
/// instance, checks both universal properties, and compares verdicts.
fn recheck<C: EnumCat>(cat: &C, f: &C::Mor, regular: bool) -> Result<()> {
    let kp = cat
        .pullback(f, f)
        .ok_or_else(|| Error::Defect("kernel pair not constructed".into()))?;
    verified(is_pullback(cat, f, f, &kp)?, "kernel pair")?;
    let q = cat
        .coequalizer(&kp.left, &kp.right)
        .ok_or_else(|| Error::Defect("kernel-pair coequalizer not constructed".into()))?;
    verified(
        is_coequalizer(cat, &kp.left, &kp.right, &q)?,
        "kernel-pair coequalizer",
    )?;
    verified(
        regular_epi_by_kernel_pair(cat, f) == Some(regular),
        "regular-epi classification",
    )
}

fn classify(input: ArrowInput) -> Result<Value> {
    match input {
        ArrowInput::Finset { f } => {
            let c = classify_fn(&f);
            recheck(
                &SetCat::new(VERIFY_BOUND)?,
                &SetMor::from(&f),
                c.regular_epi,
            )?;
            Ok(
                json!({"query": "classify", "category": "finset", "mono": c.mono, "epi": c.epi,
                "regular_epi": c.regular_epi}),
            )
        }
        ArrowInput::Finpos { f } => {
            let c = classify_pos(&f)?;
            recheck(
                &PosCat::new(VERIFY_BOUND)?,
                &PosMor::from(&f),
                c.regular_epi,
            )?;
            Ok(
                json!({"query": "classify", "category": "finpos", "epi": c.epi,
                "regular_epi": c.regular_epi}),
            )
        }
    }
}

fn fibers(input: FiberInput) -> Result<Value> {
    let report = fiber_as_coslice_check(&input.shape, &input.base, input.max_values)?;
    let mut v = json!({"query": "fibers"});
    v.as_object_mut().expect("object").extend(
        serde_json::to_value(&report)
            .expect("serializable")
            .as_object()
            .cloned()
            .unwrap_or_default(),
    );
    Ok(v)
}

fn ran(input: RanInput) -> Result<Value> {
    let (src, dst) = (&input.src, &input.dst);
    let related = ran_hom_exists(src, dst)?;
    let (k, h) = (src.arrow(), dst.arrow());
    let closing_function = nogo_core::finset::enumerate_fns(k.cod(), h.cod())
        .find(|f| f.after(k).map(|fk| fk == *h).unwrap_or(false));
    let relation = if related {
        let r = closing_relation(src, dst)?;
        verified(closes(&r, k, h)?, "closing relation")?;
        Some(r)
    } else {
        None
    };
    Ok(
        json!({"query": "ran", "hom_exists": related, "closing_relation": relation,
        "closing_function": closing_function}),
    )
}
