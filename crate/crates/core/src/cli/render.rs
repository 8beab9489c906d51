//! Text, CSV, JSON and plot renderings of command results.
//!
//! JSON documents go through `serde_json::Value`, whose objects keep their
//! keys sorted, so field order never depends on construction order.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::SCHEMA_VERSION;
use crate::domain::{format_rational, RationalAngle, TorusKnot};
use crate::identities::IdentityReport;
use crate::lattice::{AnnulusCount, StepFunction};
use crate::maxsig::{DistanceKind, MaxSignature};
use crate::verify::{SuiteSummary, VerifyConfig};

fn document(command: &str, mut body: Value) -> String {
    let map = body.as_object_mut().expect("documents are objects");
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    let mut text = serde_json::to_string_pretty(&body).expect("JSON values serialize");
    text.push('\n');
    text
}

fn knot_json(knot: &TorusKnot) -> Value {
    json!({ "p": knot.p(), "q": knot.q() })
}

pub(super) fn sig_text(
    knot: &TorusKnot,
    t: &RationalAngle,
    sigma: i64,
    c: &AnnulusCount,
) -> String {
    format!("knot={knot}\nt={t}\ninside={}\nsigma={sigma}\n", c.inside)
}

pub(super) fn sig_json(
    knot: &TorusKnot,
    t: &RationalAngle,
    sigma: i64,
    c: &AnnulusCount,
) -> String {
    document(
        "sig",
        json!({
            "knot": knot_json(knot),
            "t": t.to_string(),
            "sigma": sigma,
            "annulus": {
                "inside": c.inside,
                "outside": c.outside,
                "boundary": c.boundary,
            },
        }),
    )
}

pub(super) fn max_text(a: &MaxSignature) -> String {
    let order: Vec<String> = a.sequence.labels.iter().map(|l| l.to_string()).collect();
    format!(
        "knot={}\nsigma={}\nprofile={}\norder={}\nsequence={}\nM={}\nsigma_hat={}\ng4_lb={}\n",
        a.knot,
        a.sigma,
        a.profile,
        order.join(" "),
        a.sequence,
        a.m,
        a.sigma_hat,
        a.g4_lower_bound
    )
}

pub(super) fn max_json(a: &MaxSignature) -> String {
    let side = |m: &std::collections::BTreeMap<i64, i64>| -> Vec<Value> {
        m.iter()
            .map(|(&index, &distance)| json!({ "index": index, "distance": distance }))
            .collect()
    };
    let order: Vec<Value> = a
        .sequence
        .labels
        .iter()
        .map(|l| {
            let kind = match l.kind {
                DistanceKind::Lower => "D",
                DistanceKind::Upper => "d",
            };
            json!({ "kind": kind, "index": l.index, "distance": l.distance })
        })
        .collect();
    document(
        "max",
        json!({
            "knot": knot_json(&a.knot),
            "sigma": a.sigma,
            "profile": { "lower": side(&a.profile.lower), "upper": side(&a.profile.upper) },
            "order": order,
            "sequence": a.sequence.entries,
            "M": a.m,
            "sigma_hat": a.sigma_hat,
            "g4_lb": a.g4_lower_bound,
        }),
    )
}

fn csv_block(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}

/// Intervals, a blank line, then breakpoints.
pub(super) fn sweep_csv(sf: &StepFunction) -> String {
    let intervals = csv_block(
        &["t_lo", "t_hi", "sigma"],
        sf.intervals()
            .map(|(lo, hi, v)| vec![format_rational(&lo), format_rational(&hi), v.to_string()]),
    );
    let points = csv_block(
        &["t", "sigma"],
        sf.breakpoints
            .iter()
            .zip(&sf.breakpoint_values)
            .map(|(t, v)| vec![t.to_string(), v.to_string()]),
    );
    format!("{intervals}\n{points}")
}

pub(super) fn sweep_json(sf: &StepFunction) -> String {
    let intervals: Vec<Value> = sf
        .intervals()
        .map(|(lo, hi, v)| {
            json!({ "t_lo": format_rational(&lo), "t_hi": format_rational(&hi), "sigma": v })
        })
        .collect();
    let points: Vec<Value> = sf
        .breakpoints
        .iter()
        .zip(&sf.breakpoint_values)
        .map(|(t, v)| json!({ "t": t.to_string(), "sigma": v }))
        .collect();
    document(
        "sweep",
        json!({
            "knot": knot_json(&sf.knot),
            "intervals": intervals,
            "breakpoints": points,
            "max": sf.max(),
            "min": sf.min(),
        }),
    )
}

fn decimal(r: &BigRational) -> String {
    format!("{:.12}", r.to_f64().expect("angles in [0, 1] convert"))
}

/// Each interval contributes its two endpoints, so every jump shows up as a
/// repeated abscissa.
pub(super) fn sweep_plot(sf: &StepFunction) -> String {
    let mut text = format!("# {} t sigma\n", sf.knot);
    for (lo, hi, v) in sf.intervals() {
        let _ = writeln!(text, "{} {v}", decimal(&lo));
        let _ = writeln!(text, "{} {v}", decimal(&hi));
    }
    text
}

fn knots_label(r: &IdentityReport) -> String {
    let names: Vec<String> = r
        .knot_params
        .iter()
        .map(|(p, q)| format!("T({p},{q})"))
        .collect();
    names.join(",")
}

pub(super) fn verify_text(summaries: &[SuiteSummary]) -> String {
    let mut text = String::new();
    let (mut checked, mut failed) = (0, 0);
    for s in summaries {
        checked += s.checked;
        failed += s.failed;
        let _ = writeln!(
            text,
            "suite={} checked={} passed={} failed={}",
            s.suite, s.checked, s.passed, s.failed
        );
        for r in &s.failures {
            let _ = write!(
                text,
                "  FAIL {} {} expected={} computed={}",
                r.identity_name,
                knots_label(r),
                r.expected,
                r.computed
            );
            for (k, v) in &r.details {
                let _ = write!(text, " {k}={v}");
            }
            text.push('\n');
        }
    }
    let verdict = if failed == 0 { "pass" } else { "fail" };
    let _ = writeln!(
        text,
        "total checked={checked} passed={} failed={failed}\nresult={verdict}",
        checked - failed
    );
    text
}

pub(super) fn verify_json(cfg: &VerifyConfig, summaries: &[SuiteSummary]) -> String {
    let suites: Vec<Value> = summaries
        .iter()
        .map(|s| serde_json::to_value(s).expect("summaries serialize"))
        .collect();
    document(
        "verify",
        json!({
            "config": {
                "p_max": cfg.p_max,
                "q_max": cfg.q_max,
                "tolerance": cfg.tolerance,
                "samples": cfg.samples,
            },
            "suites": suites,
            "pass": summaries.iter().all(SuiteSummary::all_passed),
        }),
    )
}

pub(super) fn table_csv(rows: &[MaxSignature]) -> String {
    csv_block(
        &["p", "q", "sigma", "M", "sigma_hat", "g4_lb"],
        rows.iter().map(|r| {
            [
                r.knot.p() as i64,
                r.knot.q() as i64,
                r.sigma,
                r.m,
                r.sigma_hat,
                r.g4_lower_bound,
            ]
            .iter()
            .map(i64::to_string)
            .collect()
        }),
    )
}

pub(super) fn table_json(rows: &[MaxSignature]) -> String {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "p": r.knot.p(),
                "q": r.knot.q(),
                "sigma": r.sigma,
                "M": r.m,
                "sigma_hat": r.sigma_hat,
                "g4_lb": r.g4_lower_bound,
            })
        })
        .collect();
    document("table", json!({ "rows": rows }))
}
