//! Report documents: records with per-record status, JSON and CSV encodings.

use crate::error::{exit, CliError, Result};
use genset_lab_core::check::Check;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const ARTIFACT: &str = "genset-lab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Why a record was skipped; decides the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    Cap,
    Precondition,
    Input,
}

/// What a record computes: its checks, the raw data behind them, and
/// whether a search stopped early on a budget.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub data: Value,
    pub partial: bool,
}

impl Outcome {
    pub fn new(checks: Vec<Check>, data: impl Serialize) -> Self {
        Self {
            checks,
            data: serde_json::to_value(data).expect("report data serializes"),
            partial: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    /// Acceptance criteria the record contributes to; the first is the
    /// one it is run for.
    pub criteria: Vec<u8>,
    /// The statement the record checks.
    pub anchor: String,
    pub kind: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub partial: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<SkipReason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    pub checks: Vec<Check>,
    pub data: Value,
}

impl Record {
    pub fn from_result(
        id: impl Into<String>,
        criteria: &[u8],
        anchor: impl Into<String>,
        kind: impl Into<String>,
        result: Result<Outcome>,
    ) -> Self {
        let (status, partial, skip_reason, note, checks, data) = match result {
            Ok(o) => {
                let status = if !o.checks.is_empty() && o.checks.iter().all(|c| c.passed) {
                    Status::Pass
                } else {
                    Status::Fail
                };
                let note = o.partial.then(|| "search budget exhausted; values are lower bounds".to_string());
                (status, o.partial, None, note, o.checks, o.data)
            }
            Err(e) => {
                let reason = match e.exit_code() {
                    exit::CAP => SkipReason::Cap,
                    exit::PRECONDITION => SkipReason::Precondition,
                    _ => SkipReason::Input,
                };
                (Status::Skipped, false, Some(reason), Some(e.to_string()), Vec::new(), Value::Null)
            }
        };
        Self {
            id: id.into(),
            criteria: criteria.to_vec(),
            anchor: anchor.into(),
            kind: kind.into(),
            status,
            partial,
            skip_reason,
            note,
            elapsed_ms: None,
            checks,
            data,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub partial: usize,
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "summary: {} records, {} passed, {} failed, {} skipped",
            self.records, self.passed, self.failed, self.skipped
        )?;
        if self.partial > 0 {
            write!(f, ", {} partial", self.partial)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub artifact: String,
    pub version: String,
    pub input: Value,
    pub records: Vec<Record>,
    pub summary: Summary,
}

pub const CSV_HEADER: [&str; 11] = [
    "id",
    "criteria",
    "anchor",
    "kind",
    "status",
    "partial",
    "skip_reason",
    "note",
    "elapsed_ms",
    "checks",
    "data",
];

impl ReportDocument {
    pub fn new(input: Value, records: Vec<Record>) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        let summary = Summary {
            records: records.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
            partial: records.iter().filter(|r| r.partial).count(),
        };
        Self {
            artifact: ARTIFACT.into(),
            version: VERSION.into(),
            input,
            records,
            summary,
        }
    }

    /// 0 when every record passed; otherwise failures win over skips, and
    /// cap-related skips or partial searches over precondition skips.
    pub fn exit_code(&self) -> u8 {
        let reasons: Vec<SkipReason> = self.records.iter().filter_map(|r| r.skip_reason).collect();
        if self.summary.failed > 0 {
            exit::FAIL
        } else if reasons.contains(&SkipReason::Cap) || self.summary.partial > 0 {
            exit::CAP
        } else if reasons.contains(&SkipReason::Precondition) {
            exit::PRECONDITION
        } else if reasons.contains(&SkipReason::Input) {
            exit::PARSE
        } else {
            exit::PASS
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self).map_err(|e| CliError::Encode(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Encode(e.to_string()))
    }

    /// One row per record. `checks` and `data` hold compact JSON, so the
    /// CSV carries exactly the records of the JSON encoding.
    pub fn to_csv(&self) -> Result<String> {
        let enc = |e: &dyn std::fmt::Display| CliError::Encode(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).map_err(|e| enc(&e))?;
        for r in &self.records {
            let criteria = r.criteria.iter().map(u8::to_string).collect::<Vec<_>>().join(";");
            let status = serde_json::to_value(r.status).map_err(|e| enc(&e))?;
            let reason = r
                .skip_reason
                .map(|s| serde_json::to_value(s).map_err(|e| enc(&e)))
                .transpose()?;
            let checks = serde_json::to_string(&r.checks).map_err(|e| enc(&e))?;
            let data = serde_json::to_string(&r.data).map_err(|e| enc(&e))?;
            w.write_record([
                r.id.as_str(),
                &criteria,
                &r.anchor,
                &r.kind,
                status.as_str().unwrap_or_default(),
                if r.partial { "true" } else { "false" },
                reason.as_ref().and_then(Value::as_str).unwrap_or(""),
                r.note.as_deref().unwrap_or(""),
                &r.elapsed_ms.map(|t| t.to_string()).unwrap_or_default(),
                &checks,
                &data,
            ])
            .map_err(|e| enc(&e))?;
        }
        let bytes = w.into_inner().map_err(|e| enc(&e))?;
        String::from_utf8(bytes).map_err(|e| enc(&e))
    }

    /// Records back from [`ReportDocument::to_csv`] output.
    pub fn records_from_csv(text: &str) -> Result<Vec<Record>> {
        let dec = |e: &dyn std::fmt::Display| CliError::Encode(e.to_string());
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let mut out = Vec::new();
        for row in rd.records() {
            let row = row.map_err(|e| dec(&e))?;
            let field = |i: usize| row.get(i).unwrap_or("");
            let opt = |i: usize| Some(field(i).to_string()).filter(|s| !s.is_empty());
            let tag = |i: usize| Value::String(field(i).into());
            out.push(Record {
                id: field(0).into(),
                criteria: field(1)
                    .split(';')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|e| dec(&e)))
                    .collect::<Result<_>>()?,
                anchor: field(2).into(),
                kind: field(3).into(),
                status: serde_json::from_value(tag(4)).map_err(|e| dec(&e))?,
                partial: field(5) == "true",
                skip_reason: opt(6)
                    .map(|_| serde_json::from_value(tag(6)).map_err(|e| dec(&e)))
                    .transpose()?,
                note: opt(7),
                elapsed_ms: opt(8).map(|s| s.parse().map_err(|e| dec(&e))).transpose()?,
                checks: serde_json::from_str(field(9)).map_err(|e| dec(&e))?,
                data: serde_json::from_str(field(10)).map_err(|e| dec(&e))?,
            });
        }
        Ok(out)
    }
}
