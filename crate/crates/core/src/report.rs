//! JSON and CSV emission of verification results.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::livne::LivneReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub p: u64,
    pub count: i64,
    pub h: i64,
    pub trace: i64,
    pub reference: Option<i64>,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportChecks {
    #[serde(rename = "L1a")]
    pub l1a: bool,
    #[serde(rename = "L1b")]
    pub l1b: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub family: String,
    pub primes: Vec<u64>,
    pub records: Vec<ReportRecord>,
    pub checks: ReportChecks,
    pub verdict: Verdict,
}

impl From<&LivneReport> for ReportDocument {
    fn from(r: &LivneReport) -> Self {
        let records = r
            .records
            .iter()
            .map(|c| ReportRecord {
                p: c.record.p,
                count: c.record.count,
                h: c.record.h_extracted,
                trace: c.record.trace_v,
                reference: c.reference_trace.or(c.eta_coefficient),
                matched: c.matched,
            })
            .collect();
        let mut notes = r.checks.notes.clone();
        notes.extend(r.failures.iter().cloned());
        ReportDocument {
            family: r.family.clone(),
            primes: r.prime_set.clone(),
            records,
            checks: ReportChecks { l1a: r.checks.l1a, l1b: r.checks.l1b, notes },
            verdict: if r.verdict { Verdict::Pass } else { Verdict::Fail },
        }
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Io(e.to_string()))
    }
}

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    family: &'a str,
    p: u64,
    count: i64,
    h: i64,
    trace: i64,
    reference: Option<i64>,
    #[serde(rename = "match")]
    matched: bool,
}

/// One row per record, in prime-set order, for every document.
pub fn write_csv<W: Write>(docs: &[ReportDocument], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for d in docs {
        for r in &d.records {
            w.serialize(CsvRow {
                family: &d.family,
                p: r.p,
                count: r.count,
                h: r.h,
                trace: r.trace,
                reference: r.reference,
                matched: r.matched,
            })
            .map_err(|e| Error::Io(e.to_string()))?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportDocument {
        ReportDocument {
            family: "x1".into(),
            primes: vec![17, 103],
            records: vec![
                ReportRecord { p: 17, count: 23400, h: 60, trace: -126, reference: Some(-126), matched: true },
                ReportRecord { p: 103, count: 1735320, h: 60, trace: 128, reference: None, matched: false },
            ],
            checks: ReportChecks { l1a: true, l1b: true, notes: vec!["n".into()] },
            verdict: Verdict::Fail,
        }
    }

    #[test]
    fn json_round_trip() {
        let d = sample();
        let s = d.to_json().unwrap();
        assert!(s.contains("\"match\": true") && s.contains("\"L1a\"") && s.contains("\"fail\""));
        assert_eq!(ReportDocument::from_json(&s).unwrap(), d);
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&[sample()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "family,p,count,h,trace,reference,match");
        assert_eq!(lines[1], "x1,17,23400,60,-126,-126,true");
        assert_eq!(lines[2], "x1,103,1735320,60,128,,false");
    }
}
