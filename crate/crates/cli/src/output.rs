//! Number formatting and the manifest attached to every report.

use std::collections::BTreeMap;

use serde::Serialize;

/// 12 significant digits, trailing zeros trimmed, `.` decimal separator.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("scientific form parses");
    let exp10 = rounded.abs().log10().floor() as i32;
    let decimals = (11 - exp10).max(0) as usize;
    let s = format!("{:.*}", decimals, rounded);
    let trimmed = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s.as_str()
    };
    if trimmed == "-0" {
        "0".to_string()
    } else {
        trimmed.to_string()
    }
}

/// Rounds to 12 significant digits so JSON numbers and CSV cells agree.
pub fn round_sig(x: f64) -> f64 {
    fmt_sig(x).parse().unwrap_or(x)
}

/// Identifies a run well enough to reproduce its numeric output; only the
/// timestamp is outside the determinism contract.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub tool_version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, seed: u64, parameters: BTreeMap<String, String>) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}
