//! Report rendering: JSON (default), CSV rows, or terse text.

use clap::ValueEnum;
use dualfun::counting::CountReport;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn render_value(v: &serde_json::Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable"),
        Format::Csv => {
            // Scalar fields only, alphabetical, as a two-line table.
            let obj = v.as_object().cloned().unwrap_or_default();
            let mut keys: Vec<&String> = obj
                .iter()
                .filter(|(_, v)| !v.is_object() && !v.is_array())
                .map(|(k, _)| k)
                .collect();
            keys.sort();
            let header = keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(",");
            let row = keys
                .iter()
                .map(|k| scalar_text(&obj[k.as_str()]))
                .collect::<Vec<_>>()
                .join(",");
            format!("{header}\n{row}")
        }
        Format::Text => {
            let mut out = String::new();
            flatten_text(v, "", &mut out);
            out.trim_end().to_string()
        }
    }
}

fn scalar_text(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten_text(v: &serde_json::Value, prefix: &str, out: &mut String) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_text(val, &key, out);
            }
        }
        serde_json::Value::Array(items) => {
            let rendered: Vec<String> = items.iter().map(scalar_text).collect();
            out.push_str(&format!("{prefix}: [{}]\n", rendered.join(", ")));
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar_text(other))),
    }
}

pub fn render_report(report: &CountReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable"),
        Format::Csv => format!("{}\n{}", csv_header(), csv_row(report)),
        Format::Text => text_row(report),
    }
}

pub fn render_reports(rows: &[CountReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("serializable"),
        Format::Csv => render_reports_csv(rows),
        Format::Text => rows.iter().map(text_row).collect::<Vec<_>>().join("\n"),
    }
}

pub fn render_reports_csv(rows: &[CountReport]) -> String {
    let mut out = csv_header();
    for row in rows {
        out.push('\n');
        out.push_str(&csv_row(row));
    }
    out
}

pub fn csv_header() -> String {
    "ring,k,quantity,formula,enum,match,seconds".to_string()
}

fn value_cell(value: &Option<String>, error: &Option<String>) -> String {
    match (value, error) {
        (Some(v), _) => v.clone(),
        (None, Some(code)) if code == "budget_exceeded" => "skipped:budget".into(),
        (None, Some(code)) => format!("error:{code}"),
        (None, None) => String::new(),
    }
}

pub fn csv_row(report: &CountReport) -> String {
    format!(
        "{},{},{},{},{},{},{:.6}",
        report.ring,
        report.k,
        report.quantity,
        value_cell(&report.formula, &report.error),
        value_cell(&report.enumeration, &report.error),
        report
            .matches
            .map(|m| m.to_string())
            .unwrap_or_default(),
        report.seconds
    )
}

fn text_row(report: &CountReport) -> String {
    let mut line = format!(
        "{} k={} {}: formula={} enum={} match={}",
        report.ring,
        report.k,
        report.quantity,
        value_cell(&report.formula, &report.error),
        value_cell(&report.enumeration, &report.error),
        report
            .matches
            .map(|m| m.to_string())
            .unwrap_or_else(|| "-".into()),
    );
    if let Some(note) = &report.note {
        line.push_str(&format!(" note={note:?}"));
    }
    line.push_str(&format!(" ({:.3}s)", report.seconds));
    line
}
