//! Check reports and their JSON/CSV serializations.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::config::{ConfigEcho, Format};
use crate::CliError;

/// Timing metadata; the only nondeterministic part of a report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub wall_time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

impl Timing {
    pub fn elapsed(d: Duration) -> Self {
        Timing { wall_time_ms: d.as_millis() as u64, timestamp_unix: None }
    }
}

/// Outcome of one named verification. A failure always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub dims: BTreeMap<String, Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub timing: Timing,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            passed: true,
            constants: BTreeMap::new(),
            dims: BTreeMap::new(),
            witness: None,
            detail: None,
            timing: Timing::default(),
        }
    }

    pub fn fail(check: impl Into<String>, witness: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport {
            passed: false,
            witness: Some(witness.into()),
            detail: Some(detail.into()),
            ..CheckReport::pass(check)
        }
    }

    /// Pass if `witness` is `None`, fail with it otherwise.
    pub fn from_witness(check: impl Into<String>, witness: Option<String>, detail: impl Into<String>) -> Self {
        match witness {
            None => CheckReport::pass(check),
            Some(w) => CheckReport::fail(check, w, detail),
        }
    }

    pub fn constant(mut self, key: &str, value: impl ToString) -> Self {
        self.constants.insert(key.to_string(), value.to_string());
        self
    }

    pub fn dims(mut self, key: &str, dims: Vec<usize>) -> Self {
        self.dims.insert(key.to_string(), dims);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let consts: Vec<String> = self.constants.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!("{status} {}", self.check);
        if !consts.is_empty() {
            line.push_str(&format!(" [{}]", consts.join(", ")));
        }
        if !self.passed {
            if let Some(d) = &self.detail {
                line.push_str(&format!(": {d}"));
            }
        }
        line
    }
}

/// A dimension table; the first column is the weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DimTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<usize>>,
}

impl DimTable {
    pub fn column(&self, name: &str) -> Option<Vec<usize>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Everything a command produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: ConfigEcho,
    pub passed: bool,
    pub reports: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<DimTable>,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(command: &str, config: ConfigEcho, reports: Vec<CheckReport>, table: Option<DimTable>) -> Self {
        RunReport {
            tool: "voa".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            passed: reports.iter().all(|r| r.passed),
            reports,
            table,
            timing: Timing::default(),
        }
    }

    pub fn stamp(&mut self, elapsed: Duration) {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        self.timing = Timing { wall_time_ms: elapsed.as_millis() as u64, timestamp_unix: Some(now) };
    }

    /// The report with all timing fields zeroed, for comparisons.
    pub fn without_timing(&self) -> RunReport {
        let mut r = self.clone();
        r.timing = Timing::default();
        for c in &mut r.reports {
            c.timing = Timing::default();
        }
        r
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// CSV rendering: the dimension table if present, else one row per check.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        match &self.table {
            Some(t) => {
                w.write_record(&t.columns).map_err(io)?;
                for row in &t.rows {
                    w.write_record(row.iter().map(|x| x.to_string())).map_err(io)?;
                }
            }
            None => {
                w.write_record(["check", "passed", "constants", "dims", "witness", "detail"]).map_err(io)?;
                for r in &self.reports {
                    let consts: Vec<String> = r.constants.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    let dims: Vec<String> = r
                        .dims
                        .iter()
                        .map(|(k, v)| {
                            let xs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                            format!("{k}={}", xs.join(" "))
                        })
                        .collect();
                    w.write_record([
                        r.check.clone(),
                        r.passed.to_string(),
                        consts.join(";"),
                        dims.join(";"),
                        r.witness.clone().unwrap_or_default(),
                        r.detail.clone().unwrap_or_default(),
                    ])
                    .map_err(io)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write_to(&self, out: &mut impl Write, format: Format) -> Result<(), CliError> {
        out.write_all(self.render(format)?.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
    }
}
