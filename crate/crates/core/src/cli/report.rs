//! Machine-readable and text renderings of check results.

use std::fmt::Write as _;

use serde::Serialize;

use super::document::{element_terms, TermDoc};
use crate::catalog::{ClaimRow, ClaimsMatrix};
use crate::liecore::{CheckReport, Counterexample};

pub const TOOL: &str = "bunchcheck";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleDoc {
    pub clause: Option<String>,
    pub indices: Vec<i64>,
    pub lhs: Vec<TermDoc>,
    pub rhs: Vec<TermDoc>,
    pub note: Option<String>,
}

impl From<&Counterexample> for CounterexampleDoc {
    fn from(cx: &Counterexample) -> Self {
        Self {
            clause: cx.clause.clone(),
            indices: cx.indices.clone(),
            lhs: element_terms(&cx.lhs),
            rhs: element_terms(&cx.rhs),
            note: cx.note.clone(),
        }
    }
}

/// A check verdict. `counterexample` is the first failure; `counterexamples`
/// lists every failure only when requested and is empty otherwise.
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub identity: String,
    pub holds: bool,
    pub tuples_checked: usize,
    pub failure_count: usize,
    pub counterexample: Option<CounterexampleDoc>,
    pub counterexamples: Vec<CounterexampleDoc>,
    pub clauses: Vec<CheckEntry>,
}

impl CheckEntry {
    pub fn new(r: &CheckReport, all: bool) -> Self {
        Self {
            identity: r.identity.clone(),
            holds: r.holds,
            tuples_checked: r.tuples_checked,
            failure_count: r.failures.len(),
            counterexample: r.counterexample().map(Into::into),
            counterexamples: if all {
                r.failures.iter().map(Into::into).collect()
            } else {
                Vec::new()
            },
            clauses: r.clauses.iter().map(|c| CheckEntry::new(c, all)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimEntry {
    pub claim: String,
    pub statement: String,
    pub instance: String,
    pub asserted: Option<bool>,
    pub flag: String,
    pub check: Option<CheckEntry>,
}

impl ClaimEntry {
    fn new(row: &ClaimRow, all: bool) -> Self {
        Self {
            claim: row.claim.clone(),
            statement: row.statement.clone(),
            instance: row.instance.clone(),
            asserted: row.asserted,
            flag: row.flag.to_string(),
            check: row.report.as_ref().map(|r| CheckEntry::new(r, all)),
        }
    }
}

/// Top-level JSON report of a `check` or `claims` run.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub holds: bool,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<ClaimEntry>>,
    pub elapsed_ms: u64,
}

impl ReportDocument {
    pub fn new(
        command: Vec<String>,
        checks: &[CheckReport],
        claims: Option<&ClaimsMatrix>,
        all: bool,
        elapsed_ms: u64,
    ) -> Self {
        let holds = checks.iter().all(|c| c.holds)
            && claims.is_none_or(|m| m.contradictions().next().is_none());
        Self {
            tool: TOOL,
            version: VERSION,
            command,
            holds,
            checks: checks.iter().map(|c| CheckEntry::new(c, all)).collect(),
            claims: claims.map(|m| m.rows.iter().map(|r| ClaimEntry::new(r, all)).collect()),
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn render_check(out: &mut String, r: &CheckReport, depth: usize, all: bool) {
    let pad = "  ".repeat(depth);
    let _ = writeln!(out, "{pad}{r}");
    if all && r.clauses.is_empty() {
        for cx in r.failures.iter().skip(1) {
            let _ = writeln!(
                out,
                "{pad}  also at {:?}: lhs = {}, rhs = {}",
                cx.indices, cx.lhs, cx.rhs
            );
        }
    }
    for c in &r.clauses {
        render_check(out, c, depth + 1, all);
    }
}

pub fn render_checks(checks: &[CheckReport], all: bool) -> String {
    let mut out = String::new();
    for c in checks {
        render_check(&mut out, c, 0, all);
    }
    let verdict = if checks.iter().all(|c| c.holds) {
        "HOLDS"
    } else {
        "VIOLATED"
    };
    let _ = writeln!(out, "verdict: {verdict}");
    out
}

pub fn render_claims(m: &ClaimsMatrix) -> String {
    let mut out = String::new();
    for row in &m.rows {
        let _ = write!(
            out,
            "{:<12} {:<32} {:<28}",
            row.flag.to_string(),
            row.claim,
            row.instance
        );
        match &row.report {
            Some(r) => {
                let _ = writeln!(out, " {r}");
            }
            None => {
                let _ = writeln!(out, " {}", row.statement);
            }
        }
    }
    let n = m.contradictions().count();
    let _ = writeln!(out, "{} rows, {n} contradicted", m.rows.len());
    out
}
