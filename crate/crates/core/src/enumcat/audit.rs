//! The regularity audit: kernel pairs exist, their coequalizers exist, and
//! pullbacks of regular epimorphisms are regular. Scanned level by level in
//! canonical order, stopping at the first violation.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{
    find_presenting_pair, is_coequalizer_against, is_pullback, is_pullback_against,
    regular_epi_by_kernel_pair, regular_epi_by_search, EnumCat, Span,
};
use crate::error::{Error, Result};

pub const VERDICT_CLEAN: &str = "no violation up to bound";
pub const VERDICT_VIOLATION: &str = "violation found";

/// `None` marks a check the audit stopped before reaching.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RegularityChecks {
    pub kernel_pairs_exist: Option<bool>,
    pub kernel_pair_coequalizers_exist: Option<bool>,
    pub regular_epi_pullback_stable: Option<bool>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditStats {
    pub objects: usize,
    pub probes: usize,
    pub arrows: usize,
    pub regular_epis: usize,
    pub squares_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityReport {
    pub instance: String,
    pub bound: usize,
    pub checks: RegularityChecks,
    pub verdict: String,
    pub witness: Option<Value>,
    pub parameters: Value,
    pub stats: AuditStats,
}

impl RegularityReport {
    pub fn is_clean(&self) -> bool {
        self.witness.is_none()
    }
}

/// The failing square: `pulled_back` is the pullback of `regular_epi`
/// along `along`, with `projection` the other leg out of `apex`.
#[derive(Clone, Debug)]
pub struct UnstableSquare<C: EnumCat> {
    pub regular_epi: C::Mor,
    pub along: C::Mor,
    pub apex: C::Obj,
    pub projection: C::Mor,
    pub pulled_back: C::Mor,
}

#[derive(Clone, Debug)]
pub struct Audit<C: EnumCat> {
    pub report: RegularityReport,
    pub square: Option<UnstableSquare<C>>,
}

enum Examined {
    NoKernelPair,
    NoCoequalizer(Value),
    Done { regular: bool },
}

fn describe_span<C: EnumCat>(cat: &C, s: &Span<C::Obj, C::Mor>) -> Value {
    json!({
        "apex": cat.describe_obj(&s.apex),
        "left": cat.describe_mor(&s.left),
        "right": cat.describe_mor(&s.right),
    })
}

/// Kernel pair and its coequalizer, each verified against the probes, and
/// the kernel-pair regular-epi verdict built from them.
fn examine<C: EnumCat>(cat: &C, f: &C::Mor) -> Result<Examined> {
    let Some(kp) = cat.pullback(f, f) else {
        return Ok(Examined::NoKernelPair);
    };
    let defect = |what: &str| {
        Error::Defect(format!(
            "the constructed {what} of {} fails its universal property",
            cat.describe_mor(f)
        ))
    };
    if !is_pullback_against(cat, cat.probes(), f, f, &kp).map_err(|_| defect("kernel pair"))? {
        return Err(defect("kernel pair"));
    }
    let Some(q) = cat.coequalizer(&kp.left, &kp.right) else {
        return Ok(Examined::NoCoequalizer(describe_span(cat, &kp)));
    };
    if !is_coequalizer_against(cat, cat.probes(), &kp.left, &kp.right, &q)
        .map_err(|_| defect("kernel-pair coequalizer"))?
    {
        return Err(defect("kernel-pair coequalizer"));
    }
    let comparisons = cat.factor_through(&q, f);
    Ok(Examined::Done {
        regular: comparisons.len() == 1 && cat.is_iso(&comparisons[0]),
    })
}

enum Stability<C: EnumCat> {
    Unstable(Span<C::Obj, C::Mor>),
    MissingPullback,
}

fn stability<C: EnumCat>(cat: &C, u: &C::Mor, q: &C::Mor) -> Option<Stability<C>> {
    let Some(span) = cat.pullback(u, q) else {
        return Some(Stability::MissingPullback);
    };
    let regular = match cat.kernel_pair_regular(&span.left) {
        Some(r) => r,
        None => regular_epi_by_search(cat, &span.left),
    };
    (!regular).then_some(Stability::Unstable(span))
}

pub fn audit_regularity<C: EnumCat>(cat: &C) -> Result<Audit<C>> {
    let objs = cat.objects();
    let index: HashMap<&C::Obj, usize> = objs.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let levels: Vec<usize> = objs.iter().map(|o| cat.level(o)).collect();
    let max_level = levels.iter().copied().max().unwrap_or(0);

    let mut checks = RegularityChecks::default();
    let mut stats = AuditStats {
        objects: objs.len(),
        probes: cat.probes().len(),
        ..AuditStats::default()
    };
    let mut arrows: Vec<C::Mor> = Vec::new();
    let mut arrow_level: Vec<usize> = Vec::new();
    let mut regular_into: Vec<Vec<usize>> = vec![Vec::new(); objs.len()];
    let finish = |checks, witness: Option<Value>, stats, square| Audit {
        report: RegularityReport {
            instance: cat.name(),
            bound: cat.bound(),
            checks,
            verdict: if witness.is_some() {
                VERDICT_VIOLATION
            } else {
                VERDICT_CLEAN
            }
            .into(),
            witness,
            parameters: cat.parameters(),
            stats,
        },
        square,
    };

    for level in 0..=max_level {
        let pairs: Vec<(usize, usize)> = (0..objs.len())
            .flat_map(|a| (0..objs.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| levels[a].max(levels[b]) == level)
            .collect();
        let new: Vec<C::Mor> = pairs
            .par_iter()
            .map(|&(a, b)| cat.hom(&objs[a], &objs[b]))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        let examined: Vec<Examined> = new
            .par_iter()
            .map(|f| examine(cat, f))
            .collect::<Result<_>>()?;
        let first_base = arrows.len();
        stats.arrows += new.len();

        if let Some(i) = examined
            .iter()
            .position(|e| matches!(e, Examined::NoKernelPair))
        {
            checks.kernel_pairs_exist = Some(false);
            let f = cat.describe_mor(&new[i]);
            let witness = json!({
                "kind": "missing_kernel_pair",
                "level": level,
                "cospan": { "left": f, "right": f },
            });
            return Ok(finish(checks, Some(witness), stats, None));
        }
        if let Some((i, kp)) = examined.iter().enumerate().find_map(|(i, e)| match e {
            Examined::NoCoequalizer(kp) => Some((i, kp)),
            _ => None,
        }) {
            checks.kernel_pairs_exist = Some(true);
            checks.kernel_pair_coequalizers_exist = Some(false);
            let witness = json!({
                "kind": "missing_coequalizer",
                "level": level,
                "arrow": cat.describe_mor(&new[i]),
                "kernel_pair": kp,
            });
            return Ok(finish(checks, Some(witness), stats, None));
        }

        for (k, (f, e)) in new.into_iter().zip(examined).enumerate() {
            if let Examined::Done { regular: true } = e {
                regular_into[index[&cat.cod(&f)]].push(first_base + k);
                stats.regular_epis += 1;
            }
            arrows.push(f);
            arrow_level.push(level);
        }

        // squares whose largest object sits at this level, ordered by
        // (along, regular epi)
        let square_count = |u: usize| {
            let into = &regular_into[index[&cat.cod(&arrows[u])]];
            into.iter()
                .filter(|&&q| arrow_level[u].max(arrow_level[q]) == level)
                .count()
        };
        let found = (0..arrows.len()).into_par_iter().find_map_first(|u| {
            let into = &regular_into[index[&cat.cod(&arrows[u])]];
            into.iter()
                .filter(|&&q| arrow_level[u].max(arrow_level[q]) == level)
                .find_map(|&q| stability(cat, &arrows[u], &arrows[q]).map(|s| (u, q, s)))
        });
        match found {
            None => {
                stats.squares_checked += (0..arrows.len()).map(square_count).sum::<usize>();
            }
            Some((u, q, Stability::MissingPullback)) => {
                return Err(Error::Defect(format!(
                    "the instance constructs kernel pairs but not the pullback of {} along {}",
                    cat.describe_mor(&arrows[q]),
                    cat.describe_mor(&arrows[u])
                )));
            }
            Some((u, q, Stability::Unstable(span))) => {
                let into = &regular_into[index[&cat.cod(&arrows[u])]];
                stats.squares_checked += (0..u).map(square_count).sum::<usize>()
                    + into
                        .iter()
                        .filter(|&&r| arrow_level[u].max(arrow_level[r]) == level && r <= q)
                        .count();
                checks.kernel_pairs_exist = Some(true);
                checks.kernel_pair_coequalizers_exist = Some(true);
                checks.regular_epi_pullback_stable = Some(false);
                let square = UnstableSquare {
                    regular_epi: arrows[q].clone(),
                    along: arrows[u].clone(),
                    apex: span.apex,
                    projection: span.right,
                    pulled_back: span.left,
                };
                let witness = describe_unstable(cat, &square, level)?;
                return Ok(finish(checks, Some(witness), stats, Some(square)));
            }
        }
    }
    checks.kernel_pairs_exist = Some(true);
    checks.kernel_pair_coequalizers_exist = Some(true);
    checks.regular_epi_pullback_stable = Some(true);
    Ok(finish(checks, None, stats, None))
}

/// Re-verifies an unstable square with the full checkers and both
/// regular-epi methods, and describes it. Any disagreement is a defect.
pub fn describe_unstable<C: EnumCat>(
    cat: &C,
    sq: &UnstableSquare<C>,
    level: usize,
) -> Result<Value> {
    let span = Span {
        apex: sq.apex.clone(),
        left: sq.pulled_back.clone(),
        right: sq.projection.clone(),
    };
    let square_is_pullback = is_pullback(cat, &sq.along, &sq.regular_epi, &span)?;
    let presenting = find_presenting_pair(cat, &sq.regular_epi);
    let verification = json!({
        "square_is_pullback": square_is_pullback,
        "regular_epi_by_kernel_pair": regular_epi_by_kernel_pair(cat, &sq.regular_epi),
        "regular_epi_by_parallel_pair_search": presenting.is_some(),
        "pulled_back_is_epi": cat.is_epi(&sq.pulled_back),
        "pulled_back_regular_by_kernel_pair": regular_epi_by_kernel_pair(cat, &sq.pulled_back),
        "pulled_back_regular_by_parallel_pair_search": regular_epi_by_search(cat, &sq.pulled_back),
    });
    let expected = json!({
        "square_is_pullback": true,
        "regular_epi_by_kernel_pair": true,
        "regular_epi_by_parallel_pair_search": true,
        "pulled_back_is_epi": true,
        "pulled_back_regular_by_kernel_pair": false,
        "pulled_back_regular_by_parallel_pair_search": false,
    });
    if verification != expected {
        return Err(Error::Defect(format!(
            "witness failed re-verification: {verification}"
        )));
    }
    let (a, b) = presenting.expect("verified above");
    Ok(json!({
        "kind": "unstable_regular_epi",
        "level": level,
        "regular_epi": cat.describe_mor(&sq.regular_epi),
        "along": cat.describe_mor(&sq.along),
        "pullback": cat.describe_obj(&sq.apex),
        "projection": cat.describe_mor(&sq.projection),
        "pulled_back": cat.describe_mor(&sq.pulled_back),
        "presenting_pair": [cat.describe_mor(&a), cat.describe_mor(&b)],
        "verification": verification,
    }))
}
