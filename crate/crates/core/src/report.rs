//! Human- and machine-readable renderings of classification results.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::analysis::{Classification, DiagonalReport, FitError, RuleReport, Witness};
use crate::format::integer_to_json;
use crate::triangle::GrtParams;

pub fn params_json(params: &GrtParams) -> Value {
    json!({
        "c": integer_to_json(&params.c),
        "d": integer_to_json(&params.d),
        "d1": integer_to_json(&params.d1),
        "d2": integer_to_json(&params.d2),
    })
}

/// Integers as JSON integers, proper fractions as `"p/q"` strings.
pub fn rational_json(value: &BigRational) -> Value {
    if value.is_integer() {
        integer_to_json(&value.to_integer())
    } else {
        Value::String(value.to_string())
    }
}

fn witness_json(w: &Witness) -> Value {
    let (south_r, south_k) = w.south();
    json!({
        "top_r": w.diamond.top_r(),
        "top_k": w.diamond.top_k(),
        "south_r": south_r,
        "south_k": south_k,
        "implied": integer_to_json(&w.implied),
    })
}

fn rule_json(report: &RuleReport) -> Value {
    json!({
        "rule": report.rule.to_string(),
        "constant": report.constant().map(integer_to_json),
        "witnesses": report.witnesses().map(|ws| ws.iter().map(witness_json).collect::<Vec<_>>()),
    })
}

fn diagonal_json(report: &DiagonalReport) -> Value {
    json!({
        "kind": report.kind.to_string(),
        "index": report.index,
        "len": report.len,
        "first_term": integer_to_json(&report.first_term),
        "common_difference": report.common_difference.as_ref().map(integer_to_json),
        "under_determined": report.under_determined,
        "first_violation": report.first_violation.as_ref().map(|v| json!({
            "position": v.position,
            "expected": integer_to_json(&v.expected),
            "actual": integer_to_json(&v.actual),
        })),
    })
}

fn fit_failure_json(err: &FitError) -> Value {
    match err {
        FitError::UnderDetermined { rows } => json!({ "under_determined": true, "rows": rows }),
        FitError::NotGrt { r, k, expected, actual } => json!({
            "r": r,
            "k": k,
            "expected": integer_to_json(expected),
            "actual": integer_to_json(actual),
        }),
    }
}

pub fn classification_json(cls: &Classification) -> Value {
    json!({
        "verdict": cls.verdict.name(),
        "params": cls.params().map(params_json),
        "addition": rule_json(&cls.addition),
        "multiplication": rule_json(&cls.multiplication),
        "fit_failure": cls.fit_failure.as_ref().map(fit_failure_json),
        "diagonals": cls.diagonal_reports.iter().map(diagonal_json).collect::<Vec<_>>(),
    })
}

fn describe_rule(out: &mut String, report: &RuleReport) {
    match (report.constant(), report.witnesses()) {
        (Some(c), _) => {
            let _ = writeln!(out, "{}: constant {c}", report.rule);
        }
        (None, Some([a, b])) => {
            let _ = writeln!(
                out,
                "{}: no common constant; {} implies {}, {} implies {}",
                report.rule, a.diamond, a.implied, b.diamond, b.implied
            );
        }
        (None, None) => unreachable!("a rule report carries a constant or witnesses"),
    }
}

pub fn classification_text(cls: &Classification) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", cls.verdict.name());
    match cls.params() {
        Some(p) => {
            let _ = writeln!(out, "params: c={} d={} d1={} d2={}", p.c, p.d, p.d1, p.d2);
        }
        None => {
            if let Some(err) = &cls.fit_failure {
                let _ = writeln!(out, "fit: {err}");
            }
        }
    }
    describe_rule(&mut out, &cls.addition);
    describe_rule(&mut out, &cls.multiplication);
    out.push_str("diagonals:\n");
    for d in &cls.diagonal_reports {
        let _ = write!(out, "  {} {}: first {}", d.kind, d.index, d.first_term);
        match (&d.common_difference, &d.first_violation) {
            (Some(diff), _) => {
                let _ = write!(out, ", difference {diff}");
                if d.under_determined {
                    out.push_str(" (under-determined)");
                }
            }
            (None, Some(v)) => {
                let _ = write!(
                    out,
                    ", not arithmetic at position {} (expected {}, found {})",
                    v.position, v.expected, v.actual
                );
            }
            (None, None) => {}
        }
        out.push('\n');
    }
    out
}

fn opt(value: Option<&BigInt>) -> String {
    value.map(ToString::to_string).unwrap_or_default()
}

/// One record per diagonal.
pub fn classification_csv(cls: &Classification) -> String {
    let mut out =
        String::from("kind,index,len,first_term,common_difference,under_determined,violation_position,expected,actual\n");
    for d in &cls.diagonal_reports {
        let v = d.first_violation.as_ref();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            d.kind,
            d.index,
            d.len,
            d.first_term,
            opt(d.common_difference.as_ref()),
            d.under_determined,
            v.map(|v| v.position.to_string()).unwrap_or_default(),
            opt(v.map(|v| &v.expected)),
            opt(v.map(|v| &v.actual)),
        );
    }
    out
}
