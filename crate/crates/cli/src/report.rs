use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub max_abs_error: Option<f64>,
    pub max_rel_error: Option<f64>,
    pub seed: Option<u64>,
    /// Wall-clock time; recorded only on request so reports stay reproducible.
    pub elapsed_ms: Option<u64>,
    pub details: Vec<String>,
    /// Enough to rerun the failing instance: seed and indices or generators.
    pub reproducer: Option<String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        CheckRecord {
            name: name.into(),
            status,
            max_abs_error: None,
            max_rel_error: None,
            seed: None,
            elapsed_ms: None,
            details: Vec::new(),
            reproducer: None,
        }
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        CheckRecord { details: vec![why.into()], ..CheckRecord::new(name, Status::Skipped) }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_errors(mut self, abs: f64, rel: f64) -> Self {
        self.max_abs_error = Some(abs);
        self.max_rel_error = Some(rel);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    /// SHA-256 of the canonical spec and run options.
    pub input_hash: String,
    pub tolerance: f64,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(input: &str, tolerance: f64, checks: Vec<CheckRecord>) -> Self {
        let mut summary = Summary { total: checks.len(), ..Summary::default() };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report {
            tool: "dqp".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input_hash: hex::encode(Sha256::digest(input.as_bytes())),
            tolerance,
            checks,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

fn num(x: Option<f64>) -> String {
    x.map(|v| format!("{v:e}")).unwrap_or_default()
}

/// Serializes a report. Equal reports give equal bytes.
pub fn emit_report(report: &Report, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Text => {
            let mut s = format!("{} {}  input {}\n", report.tool, report.version, &report.input_hash[..16]);
            for c in &report.checks {
                s += &format!("{:<7} {}", c.status.name().to_uppercase(), c.name);
                if let Some(seed) = c.seed {
                    s += &format!("  seed={seed}");
                }
                if let Some(r) = c.max_rel_error {
                    s += &format!("  rel={r:e}");
                }
                s.push('\n');
                if c.status != Status::Pass {
                    for d in &c.details {
                        s += &format!("        {d}\n");
                    }
                    if let Some(r) = &c.reproducer {
                        s += &format!("        reproduce: {r}\n");
                    }
                }
            }
            let m = &report.summary;
            s += &format!("{} checks: {} passed, {} failed, {} skipped\n", m.total, m.passed, m.failed, m.skipped);
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["name", "status", "seed", "max_abs_error", "max_rel_error", "elapsed_ms", "details", "reproducer"])?;
            for c in &report.checks {
                w.write_record([
                    c.name.clone(),
                    c.status.name().into(),
                    c.seed.map(|s| s.to_string()).unwrap_or_default(),
                    num(c.max_abs_error),
                    num(c.max_rel_error),
                    c.elapsed_ms.map(|s| s.to_string()).unwrap_or_default(),
                    c.details.join(" | "),
                    c.reproducer.clone().unwrap_or_default(),
                ])?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
    }
}
