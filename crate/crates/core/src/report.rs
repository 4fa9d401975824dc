//! Serialization of campaign reports.
//!
//! JSONL: one object per record, then one summary object. Integers that can
//! exceed `2^53` are written as decimal strings.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::search_campaigns::{Campaign, CampaignReport, CandidatePair, StageCount, Verdict};

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Survivor => "survivor",
        Verdict::Rejected => "rejected",
    }
}

pub fn record_json(campaign: &str, p: &CandidatePair) -> Value {
    let mut obj = Map::new();
    obj.insert("campaign".into(), json!(campaign));
    obj.insert("stage".into(), json!(p.stage));
    obj.insert("k".into(), json!(p.k.to_string()));
    obj.insert("n".into(), json!(p.n.to_string()));
    obj.insert("r".into(), json!(p.r.to_string()));
    obj.insert("m".into(), json!(p.m.to_string()));
    if let Some(a) = p.a {
        obj.insert("a".into(), json!(a.to_string()));
    }
    obj.insert("verdict".into(), json!(verdict_name(p.verdict)));
    obj.insert("flags".into(), json!(p.flags));
    Value::Object(obj)
}

pub fn summary_json(report: &CampaignReport) -> Value {
    let mut obj = Map::new();
    obj.insert("campaign".into(), json!(report.campaign.name()));
    obj.insert("stage".into(), json!("summary"));
    obj.insert("ranges".into(), json!(report.ranges));
    let stages: Vec<Value> = report
        .stage_counts
        .iter()
        .map(|s| json!({"name": s.name, "count": s.count.to_string()}))
        .collect();
    obj.insert("stage_counts".into(), Value::Array(stages));
    let tallies: Map<String, Value> = report
        .tallies
        .iter()
        .map(|(k, v)| (k.clone(), json!(v.to_string())))
        .collect();
    obj.insert("tallies".into(), Value::Object(tallies));
    obj.insert("survivors".into(), json!(report.survivor_count().to_string()));
    obj.insert("notes".into(), json!(report.notes));
    if let Some(t) = report.elapsed_seconds {
        obj.insert("elapsed_seconds".into(), json!(t));
    }
    Value::Object(obj)
}

pub fn to_jsonl(report: &CampaignReport) -> String {
    let name = report.campaign.name();
    let mut out = String::new();
    for p in &report.records {
        out.push_str(&record_json(name, p).to_string());
        out.push('\n');
    }
    out.push_str(&summary_json(report).to_string());
    out.push('\n');
    out
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn str_u64(v: &Value, field: &str) -> Result<u64> {
    match v.get(field).and_then(Value::as_str) {
        Some(s) => s.parse().or_else(|_| parse_err(format!("{field} is not an integer: {s}"))),
        None => parse_err(format!("missing string field {field}")),
    }
}

fn parse_record(v: &Value) -> Result<CandidatePair> {
    let verdict = match v.get("verdict").and_then(Value::as_str) {
        Some("survivor") => Verdict::Survivor,
        Some("rejected") => Verdict::Rejected,
        other => return parse_err(format!("unknown verdict {other:?}")),
    };
    let flags: BTreeMap<String, bool> = serde_json::from_value(v.get("flags").cloned().unwrap_or(json!({})))
        .or_else(|e| parse_err(e.to_string()))?;
    Ok(CandidatePair {
        k: str_u64(v, "k")?,
        n: str_u64(v, "n")?,
        r: str_u64(v, "r")?,
        m: str_u64(v, "m")?,
        a: if v.get("a").is_some() { Some(str_u64(v, "a")?) } else { None },
        stage: v.get("stage").and_then(Value::as_str).unwrap_or_default().to_string(),
        verdict,
        flags,
    })
}

/// Reads back the output of [`to_jsonl`].
pub fn from_jsonl(text: &str) -> Result<CampaignReport> {
    let mut records = Vec::new();
    let mut summary = None;
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        if summary.is_some() {
            return parse_err(format!("line {}: data after the summary", i + 1));
        }
        let v: Value = serde_json::from_str(line).or_else(|e| parse_err(format!("line {}: {e}", i + 1)))?;
        if v.get("stage").and_then(Value::as_str) == Some("summary") {
            summary = Some(v);
        } else {
            records.push(parse_record(&v)?);
        }
    }
    let Some(s) = summary else {
        return parse_err("no summary line");
    };
    let campaign: Campaign = serde_json::from_value(s["campaign"].clone()).or_else(|e| parse_err(e.to_string()))?;
    let ranges: BTreeMap<String, Value> =
        serde_json::from_value(s["ranges"].clone()).or_else(|e| parse_err(e.to_string()))?;
    let mut stage_counts = Vec::new();
    for st in s["stage_counts"].as_array().map(Vec::as_slice).unwrap_or_default() {
        stage_counts.push(StageCount {
            name: st["name"].as_str().unwrap_or_default().to_string(),
            count: str_u64(st, "count")?,
        });
    }
    let mut tallies = BTreeMap::new();
    if let Some(obj) = s["tallies"].as_object() {
        for name in obj.keys() {
            tallies.insert(name.clone(), str_u64(&s["tallies"], name)?);
        }
    }
    let notes: Vec<String> = serde_json::from_value(s["notes"].clone()).unwrap_or_default();
    Ok(CampaignReport {
        campaign,
        ranges,
        stage_counts,
        tallies,
        records,
        notes,
        elapsed_seconds: s.get("elapsed_seconds").and_then(Value::as_f64),
    })
}

pub const CSV_HEADER: [&str; 8] = ["campaign", "stage", "k", "n", "r", "m", "a", "verdict"];

/// Scalar columns of each record, in [`CSV_HEADER`] order.
pub fn csv_rows(report: &CampaignReport) -> Vec<[String; 8]> {
    report
        .records
        .iter()
        .map(|p| {
            [
                report.campaign.name().to_string(),
                p.stage.clone(),
                p.k.to_string(),
                p.n.to_string(),
                p.r.to_string(),
                p.m.to_string(),
                p.a.map(|a| a.to_string()).unwrap_or_default(),
                verdict_name(p.verdict).to_string(),
            ]
        })
        .collect()
}

pub fn to_human(report: &CampaignReport) -> String {
    let mut out = format!("campaign {}\n", report.campaign.name());
    for (k, v) in &report.ranges {
        out.push_str(&format!("  {k} = {v}\n"));
    }
    for s in &report.stage_counts {
        out.push_str(&format!("  {:<28} {}\n", s.name, s.count));
    }
    for (k, v) in &report.tallies {
        out.push_str(&format!("  {k}: {v}\n"));
    }
    for p in &report.records {
        let a = p.a.map(|a| format!(" a={a}")).unwrap_or_default();
        out.push_str(&format!(
            "  {} k={} n={} r={} m={}{}\n",
            verdict_name(p.verdict),
            p.k,
            p.n,
            p.r,
            p.m,
            a
        ));
    }
    for note in &report.notes {
        out.push_str(&format!("  note: {note}\n"));
    }
    out.push_str(&format!("  survivors: {}\n", report.survivor_count()));
    if let Some(t) = report.elapsed_seconds {
        out.push_str(&format!("  elapsed: {t:.3}s\n"));
    }
    out
}
