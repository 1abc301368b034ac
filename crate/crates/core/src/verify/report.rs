use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    SkippedBudget,
    ReportOnly,
    Exceptional,
    Inapplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::SkippedBudget => "skipped-budget",
            Verdict::ReportOnly => "report-only",
            Verdict::Exceptional => "exceptional",
            Verdict::Inapplicable => "inapplicable",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Rank used when several verdicts are folded into one: a failure
    /// dominates everything, a pass is dominated by everything.
    fn severity(self) -> u8 {
        match self {
            Verdict::Fail => 5,
            Verdict::SkippedBudget => 4,
            Verdict::Exceptional => 3,
            Verdict::Inapplicable => 2,
            Verdict::ReportOnly => 1,
            Verdict::Pass => 0,
        }
    }

    pub fn worst(a: Verdict, b: Verdict) -> Verdict {
        if b.severity() > a.severity() {
            b
        } else {
            a
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one clause for one `(n, p)` task, or for a whole prime or
/// range when `n` or `p` is absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub clause: String,
    pub n: Option<i64>,
    pub p: Option<u64>,
    pub verdict: Verdict,
    pub observed: String,
    pub expected: String,
    pub note: String,
}

impl VerdictRecord {
    pub fn new(clause: &str, n: Option<i64>, p: Option<u64>, verdict: Verdict) -> Self {
        VerdictRecord {
            clause: clause.to_string(),
            n,
            p,
            verdict,
            observed: String::new(),
            expected: String::new(),
            note: String::new(),
        }
    }

    pub fn observed(mut self, s: impl fmt::Display) -> Self {
        self.observed = s.to_string();
        self
    }

    pub fn expected(mut self, s: impl fmt::Display) -> Self {
        self.expected = s.to_string();
        self
    }

    pub fn note(mut self, s: impl fmt::Display) -> Self {
        self.note = s.to_string();
        self
    }

    /// `clause[n=..,p=..]`
    pub fn task_id(&self) -> String {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(p) = self.p {
            parts.push(format!("p={p}"));
        }
        format!("{}[{}]", self.clause, parts.join(","))
    }
}

/// One CSV line: the data of one `(n, p)` model and the folded verdict of
/// every clause evaluated on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaskRow {
    pub p: u64,
    pub n: i64,
    pub mod_np: u64,
    #[serde(rename = "s_A")]
    pub s_a: u32,
    pub delta: i64,
    pub unit: u64,
    pub profile: String,
    pub matched_row: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    /// `key=value` description of the run, in a fixed order.
    pub parameters: Vec<(String, String)>,
    pub records: Vec<VerdictRecord>,
    pub rows: Vec<TaskRow>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.count(Verdict::Fail)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == v).count()
    }

    /// `(clause, verdict) -> count`, ordered.
    pub fn tally(&self) -> BTreeMap<(String, Verdict), usize> {
        let mut t = BTreeMap::new();
        for r in &self.records {
            *t.entry((r.clause.clone(), r.verdict)).or_default() += 1;
        }
        t
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "p",
            "n",
            "mod_np",
            "s_A",
            "delta",
            "unit",
            "profile",
            "matched_row",
            "verdict",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.p.to_string(),
                r.n.to_string(),
                r.mod_np.to_string(),
                r.s_a.to_string(),
                r.delta.to_string(),
                r.unit.to_string(),
                r.profile.clone(),
                r.matched_row.clone(),
                r.verdict.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("# Verification report\n\n## Parameters\n\n");
        for (k, v) in &self.parameters {
            writeln!(out, "- `{k}` = `{v}`").unwrap();
        }
        out.push_str("\n## Summary\n\n| clause | verdict | count |\n|---|---|---|\n");
        for ((clause, v), c) in self.tally() {
            writeln!(out, "| {clause} | {v} | {c} |").unwrap();
        }
        let total = self.records.len();
        writeln!(
            out,
            "\n{total} records: {} pass, {} fail, {} skipped-budget, {} report-only, {} exceptional, {} inapplicable.",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::SkippedBudget),
            self.count(Verdict::ReportOnly),
            self.count(Verdict::Exceptional),
            self.count(Verdict::Inapplicable),
        )
        .unwrap();
        for (title, v) in [
            ("Failures", Verdict::Fail),
            ("Skipped for budget", Verdict::SkippedBudget),
            ("Exceptional", Verdict::Exceptional),
            ("Inapplicable", Verdict::Inapplicable),
            ("Report-only evidence", Verdict::ReportOnly),
        ] {
            let recs: Vec<_> = self.records.iter().filter(|r| r.verdict == v).collect();
            if recs.is_empty() {
                continue;
            }
            writeln!(out, "\n## {title}\n").unwrap();
            out.push_str("| task | observed | expected | note |\n|---|---|---|---|\n");
            for r in recs {
                writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    r.task_id(),
                    md_cell(&r.observed),
                    md_cell(&r.expected),
                    md_cell(&r.note)
                )
                .unwrap();
            }
        }
        out.push_str("\n## Models\n\n| p | n | mod | s_A | delta | unit | profile | row | verdict |\n|---|---|---|---|---|---|---|---|---|\n");
        for r in &self.rows {
            writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | `{}` | {} | {} |",
                r.p, r.n, r.mod_np, r.s_a, r.delta, r.unit, r.profile, r.matched_row, r.verdict
            )
            .unwrap();
        }
        out
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            parameters: vec![("nmax".into(), "1".into())],
            records: vec![
                VerdictRecord::new("C4.1", Some(1), Some(2), Verdict::Pass).observed("x^4"),
                VerdictRecord::new("C4.tables", Some(2), Some(3), Verdict::Fail)
                    .observed("[1:2,2:2]")
                    .expected("p3/2a: [1:1,2:1]"),
            ],
            rows: vec![TaskRow {
                p: 3,
                n: 2,
                mod_np: 2,
                s_a: 1,
                delta: 0,
                unit: 1,
                profile: "2 3 1 0 1 | 1:2,2:2 | -".into(),
                matched_row: String::new(),
                verdict: Verdict::Fail,
            }],
        }
    }

    #[test]
    fn folding() {
        assert_eq!(Verdict::worst(Verdict::Pass, Verdict::Fail), Verdict::Fail);
        assert_eq!(
            Verdict::worst(Verdict::Exceptional, Verdict::ReportOnly),
            Verdict::Exceptional
        );
        assert_eq!(Verdict::worst(Verdict::Pass, Verdict::Pass), Verdict::Pass);
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("p,n,mod_np,s_A,delta,unit,profile,matched_row,verdict")
        );
        assert_eq!(
            lines.next(),
            Some("3,2,2,1,0,1,\"2 3 1 0 1 | 1:2,2:2 | -\",,fail")
        );
    }

    #[test]
    fn markdown_and_json() {
        let r = sample();
        let md = r.to_markdown();
        assert!(md.contains("## Failures"));
        assert!(md.contains("C4.tables[n=2,p=3]"));
        assert_eq!(r.failures(), 1);
        let json: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(json["records"][1]["verdict"], "fail");
        assert_eq!(json["rows"][0]["s_A"], 1);
    }
}
