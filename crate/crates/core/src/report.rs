//! Serialising a [`JokeAnalysis`].

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::defaults::Degree;
use crate::error::Error;
use crate::humor::{JokeAnalysis, NormRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::InvalidInput(format!(
                "unknown report format `{other}`"
            ))),
        }
    }
}

/// Always `p/q`, also for `0/1` and `1/1`.
pub fn render_degree(d: &Degree) -> String {
    format!("{}/{}", d.numer(), d.denom())
}

fn norm_json(norm: &NormRef) -> Value {
    json!({ "kind": norm.kind.as_str(), "index": norm.index })
}

pub fn report_json(analysis: &JokeAnalysis) -> Value {
    let w = &analysis.witnesses;
    json!({
        "surprising": analysis.surprising,
        "revealing": analysis.revealing,
        "potentially_funny": analysis.potentially_funny,
        "surprise_level": render_degree(&analysis.levels.surprise_level),
        "revealing_level": analysis.levels.revealing_level.as_ref().map(render_degree),
        "incongruous_norms": analysis.incongruous_norms.iter().map(norm_json).collect::<Vec<_>>(),
        "non_violable_norms": analysis.non_violable_norms.iter().map(norm_json).collect::<Vec<_>>(),
        "witnesses": {
            "context": w.context,
            "context_and_punchline": w.context_and_punchline,
            "punchline": w.punchline,
        },
    })
}

pub fn render_report(analysis: &JokeAnalysis, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(&report_json(analysis))
                .expect("report values are always serialisable");
            out.push('\n');
            out
        }
        ReportFormat::Text => render_text(analysis),
    }
}

/// A JSON array holding one report per cascade step.
pub fn render_cascade_json(steps: &[JokeAnalysis]) -> String {
    let all: Vec<Value> = steps.iter().map(report_json).collect();
    let mut out =
        serde_json::to_string_pretty(&all).expect("report values are always serialisable");
    out.push('\n');
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn model_list(models: &[String]) -> String {
    if models.is_empty() {
        "(none)".to_string()
    } else {
        models.join(", ")
    }
}

fn norm_list(norms: &[NormRef]) -> String {
    if norms.is_empty() {
        "(none)".to_string()
    } else {
        norms
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn render_text(a: &JokeAnalysis) -> String {
    let mut out = String::new();
    let surprising = if a.surprise_applicable {
        yes_no(a.surprising).to_string()
    } else {
        "not applicable".to_string()
    };
    let _ = writeln!(out, "order:             {}", a.method);
    let _ = writeln!(out, "surprising:        {surprising}");
    let _ = writeln!(out, "revealing:         {}", yes_no(a.revealing));
    let _ = writeln!(out, "potentially funny: {}", yes_no(a.potentially_funny));
    let _ = writeln!(
        out,
        "surprise level:    {}",
        render_degree(&a.levels.surprise_level)
    );
    let revealing_level = a
        .levels
        .revealing_level
        .as_ref()
        .map(render_degree)
        .unwrap_or_else(|| "undefined".to_string());
    let _ = writeln!(out, "revealing level:   {revealing_level}");
    let _ = writeln!(
        out,
        "incongruous norms: {}",
        norm_list(&a.incongruous_norms)
    );
    let _ = writeln!(
        out,
        "non-violable:      {}",
        norm_list(&a.non_violable_norms)
    );
    let _ = writeln!(
        out,
        "K∘α:               {}",
        model_list(&a.witnesses.context)
    );
    let _ = writeln!(
        out,
        "K∘(α∧β):           {}",
        model_list(&a.witnesses.context_and_punchline)
    );
    let _ = writeln!(
        out,
        "K∘β:               {}",
        model_list(&a.witnesses.punchline)
    );
    for f in &a.findings {
        let _ = writeln!(
            out,
            "norm {} [{}]: violated={} revealed={}",
            f.norm,
            f.rule,
            yes_no(f.violated),
            yes_no(f.revealed)
        );
        let _ = writeln!(
            out,
            "  preferred without it: {}",
            model_list(&f.violation_models)
        );
    }
    for note in &a.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}
