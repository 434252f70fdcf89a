//! Command output: verification reports and plain tables, rendered as CSV,
//! JSON or aligned text.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::Duration;

use lambert_core::Execution;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

/// One identity checked over a range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    /// Name of the identity being exercised.
    pub anchor: String,
    pub range: String,
    pub passed: bool,
    /// The first failing instance, always present when `passed` is false.
    pub counterexample: Option<String>,
}

impl Check {
    /// Runs `f` over `range`; `f` returns a description of the failure, if
    /// any. Reports the smallest failing index whatever the scheduling.
    pub fn sweep<F>(
        id: &str,
        anchor: &str,
        var: &str,
        range: RangeInclusive<u64>,
        exec: Execution,
        f: F,
    ) -> Self
    where
        F: Fn(u64) -> Option<String> + Sync + Send,
    {
        let label = format!("{var}={}..={}", range.start(), range.end());
        let failure = exec.first_failure(range, f);
        Self {
            id: id.into(),
            anchor: anchor.into(),
            range: label,
            passed: failure.is_none(),
            counterexample: failure.map(|(i, why)| format!("{var}={i}: {why}")),
        }
    }

    /// A single yes/no check.
    pub fn single(id: &str, anchor: &str, range: &str, failure: Option<String>) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            range: range.into(),
            passed: failure.is_none(),
            counterexample: failure,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// Wall time. Reported on stderr only so payloads stay reproducible.
    pub elapsed: Duration,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

/// A rectangular table of already-formatted cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    checks: &'a [Check],
    command: &'a str,
    failures: usize,
    parameters: &'a BTreeMap<String, String>,
    passed: bool,
}

#[derive(Serialize)]
struct TableJson<'a> {
    columns: &'a [String],
    command: &'a str,
    parameters: &'a BTreeMap<String, String>,
    rows: &'a [Vec<String>],
}

fn to_json<T: Serialize>(value: &T) -> String {
    // Round-trip through Value so every object has sorted keys.
    let v = serde_json::to_value(value).expect("plain data serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("plain data serializes");
    s.push('\n');
    s
}

fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn pretty_grid(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let _ = write!(s, "{c:>w$}", w = widths[i]);
        }
        s.trim_end().to_owned() + "\n"
    };
    let mut out = line(columns);
    let rule: usize = widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1);
    out.push_str(&"-".repeat(rule));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

pub fn render_report(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => to_json(&ReportJson {
            checks: &report.checks,
            command: &report.command,
            failures: report.failures(),
            parameters: &report.parameters,
            passed: report.all_passed(),
        }),
        Format::Csv => to_csv(
            &["id", "anchor", "range", "status", "counterexample"],
            report.checks.iter().map(|c| {
                vec![
                    c.id.clone(),
                    c.anchor.clone(),
                    c.range.clone(),
                    status(c.passed).into(),
                    c.counterexample.clone().unwrap_or_default(),
                ]
            }),
        ),
        Format::Pretty => {
            let mut out = report.command.to_string();
            for (k, v) in &report.parameters {
                let _ = write!(out, " {k}={v}");
            }
            out.push('\n');
            for c in &report.checks {
                let _ = writeln!(
                    out,
                    "[{}] {} ({}; {})",
                    status(c.passed),
                    c.id,
                    c.anchor,
                    c.range
                );
                if let Some(ce) = &c.counterexample {
                    let _ = writeln!(out, "       counterexample: {ce}");
                }
            }
            let _ = writeln!(
                out,
                "{} of {} checks passed",
                report.checks.len() - report.failures(),
                report.checks.len()
            );
            out
        }
    }
}

pub fn render_table(table: &Table, format: Format) -> String {
    match format {
        Format::Json => to_json(&TableJson {
            columns: &table.columns,
            command: &table.command,
            parameters: &table.parameters,
            rows: &table.rows,
        }),
        Format::Csv => {
            let header: Vec<&str> = table.columns.iter().map(String::as_str).collect();
            to_csv(&header, table.rows.iter().cloned())
        }
        Format::Pretty => pretty_grid(&table.columns, &table.rows),
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}
