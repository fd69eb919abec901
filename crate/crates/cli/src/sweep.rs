//! Batch sweeps: a config file drives a deterministic grid of count
//! reports; per-cell errors land in the row and the run continues.

use serde::Deserialize;

use dualfun::counting::{self, CountReport, Quantity, ReportMethod};
use dualfun::exhaust::EnumLimits;

use crate::render::{self, Format};
use crate::{CliError, SweepArgs};

#[derive(Deserialize)]
struct SweepConfig {
    rings: Vec<String>,
    k: Vec<u32>,
    quantities: Vec<String>,
    #[serde(default)]
    method: Option<String>,
    #[serde(default)]
    budget: Option<u64>,
    #[serde(default)]
    workers: Option<usize>,
}

pub fn run(args: &SweepArgs, base_limits: &EnumLimits, format: Format) -> Result<String, CliError> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| CliError {
        code: "config_error".into(),
        message: format!("cannot read {}: {e}", args.config.display()),
    })?;
    let config: SweepConfig = serde_json::from_str(&text).map_err(|e| CliError {
        code: "config_error".into(),
        message: format!("bad sweep config: {e}"),
    })?;
    let limits = EnumLimits {
        budget: config.budget.unwrap_or(base_limits.budget),
        workers: config.workers.unwrap_or(base_limits.workers),
    };
    let method: ReportMethod = config.method.as_deref().unwrap_or("both").parse()?;

    let mut rows: Vec<CountReport> = Vec::new();
    for ring_text in &config.rings {
        for &k in &config.k {
            for quantity_text in &config.quantities {
                rows.push(cell(ring_text, k, quantity_text, method, &limits));
            }
        }
    }
    Ok(render::render_reports(&rows, format))
}

fn cell(
    ring_text: &str,
    k: u32,
    quantity_text: &str,
    method: ReportMethod,
    limits: &EnumLimits,
) -> CountReport {
    let error_row = |code: String| CountReport {
        ring: ring_text.to_string(),
        k,
        quantity: quantity_text.to_string(),
        formula: None,
        enumeration: None,
        matches: None,
        seconds: 0.0,
        note: None,
        error: Some(code),
    };
    let ring = match crate::resolve_ring(ring_text, None) {
        Ok((ring, 0)) => ring,
        Ok(_) => return error_row("parse_error".into()),
        Err(e) => return error_row(e.code),
    };
    let quantity: Quantity = match quantity_text.parse() {
        Ok(q) => q,
        Err(e) => return error_row(dualfun::error::Error::code(&e).to_string()),
    };
    match counting::count_report(&ring, k, quantity, method, limits) {
        Ok(report) => report,
        Err(e) => error_row(e.code().to_string()),
    }
}
