//! Composes the coslice and comma audits into the no-go report, and renders
//! reports as indented text mirroring their JSON field order.

use serde::Serialize;
use serde_json::Value;

use crate::comma::{CommaCat, CosliceCat};
use crate::enumcat::{audit_regularity, RegularityReport};
use crate::error::Result;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    ObstructionCertifiedAtBound,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NoGoBounds {
    pub base_size: usize,
    pub coslice_bound: usize,
    pub comma_bound: usize,
}

impl Default for NoGoBounds {
    fn default() -> Self {
        NoGoBounds {
            base_size: 1,
            coslice_bound: 3,
            comma_bound: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoGoReport {
    pub engine_version: String,
    pub bounds: NoGoBounds,
    pub coslice_audit: RegularityReport,
    pub comma_audit: RegularityReport,
    pub conclusion: Conclusion,
    pub statement: String,
}

pub fn conclude(coslice: &RegularityReport, comma: &RegularityReport) -> Conclusion {
    if coslice.is_clean() && !comma.is_clean() {
        Conclusion::ObstructionCertifiedAtBound
    } else {
        Conclusion::Inconclusive
    }
}

fn statement(b: &NoGoBounds, conclusion: Conclusion) -> String {
    match conclusion {
        Conclusion::ObstructionCertifiedAtBound => format!(
            "certified at bound: the coslice instance (base {}, carriers <= {}) shows no regularity \
             violation up to bound, while the comma instance (base {}, bound {}) has a regular \
             epimorphism whose pullback is not regular. These are the ingredients of the \
             obstruction, checked at bound only; no unbounded claim is made.",
            b.base_size, b.coslice_bound, b.base_size, b.comma_bound
        ),
        Conclusion::Inconclusive => format!(
            "inconclusive at bound: the audits (base {}, coslice bound {}, comma bound {}) did not \
             produce a clean coslice report together with a comma witness.",
            b.base_size, b.coslice_bound, b.comma_bound
        ),
    }
}

pub fn nogo(bounds: NoGoBounds) -> Result<NoGoReport> {
    let coslice = CosliceCat::new(bounds.base_size, bounds.coslice_bound)?;
    let comma = CommaCat::new(bounds.base_size, bounds.comma_bound)?;
    let coslice_audit = audit_regularity(&coslice)?.report;
    let comma_audit = audit_regularity(&comma)?.report;
    let conclusion = conclude(&coslice_audit, &comma_audit);
    Ok(NoGoReport {
        engine_version: ENGINE_VERSION.into(),
        bounds,
        statement: statement(&bounds, conclusion),
        coslice_audit,
        comma_audit,
        conclusion,
    })
}

/// Indented `key: value` lines in JSON field order; arrays of scalars stay
/// on one line.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn render_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, item) in m {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(out, item, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(out, item, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
