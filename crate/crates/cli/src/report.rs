//! Verification records: one JSON object per line plus a summary object,
//! or CSV.

use std::fmt::Display;
use std::io::{self, Write};

use frobenius_core::PadicNumber;
use serde::Serialize;

/// One side of a comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Side {
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<i64>,
}

impl Side {
    /// An integer with its `p`-adic valuation (absent for 0).
    pub fn integer(x: i64, p: u64) -> Self {
        let valuation = (x != 0).then(|| {
            let mut v = 0;
            let mut y = x;
            while y % p as i64 == 0 {
                y /= p as i64;
                v += 1;
            }
            v
        });
        Self {
            value: x.to_string(),
            valuation,
        }
    }

    pub fn padic(x: &PadicNumber) -> Self {
        Self {
            value: x.to_string(),
            valuation: x.valuation(),
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Self {
            value: s.into(),
            valuation: None,
        }
    }

    pub fn error(e: impl Display) -> Self {
        Self::text(format!("error: {e}"))
    }

    /// A computed integer, or the error that stopped it.
    pub fn result<E: Display>(r: &Result<i64, E>, p: u64) -> Self {
        match r {
            Ok(x) => Self::integer(*x, p),
            Err(e) => Self::error(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub task: String,
    pub prime: u64,
    pub subject: String,
    pub lhs: Side,
    pub rhs: Side,
    #[serde(rename = "match")]
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Only filled in when timing is requested, so default output stays
    /// byte-identical between runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub summary: bool,
    pub task: String,
    pub records: usize,
    pub mismatches: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub precision: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub task: String,
    pub precision: u32,
    pub seed: Option<u64>,
    pub records: Vec<Record>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    task: &'a str,
    prime: u64,
    subject: &'a str,
    lhs: &'a str,
    lhs_valuation: Option<i64>,
    rhs: &'a str,
    rhs_valuation: Option<i64>,
    matched: bool,
    note: Option<&'a str>,
    elapsed_ms: Option<f64>,
}

impl VerificationReport {
    pub fn new(task: impl Into<String>, precision: u32, seed: Option<u64>) -> Self {
        Self {
            task: task.into(),
            precision,
            seed,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, prime: u64, subject: impl Into<String>, lhs: Side, rhs: Side, matched: bool) -> &mut Record {
        self.records.push(Record {
            task: self.task.clone(),
            prime,
            subject: subject.into(),
            lhs,
            rhs,
            matched,
            note: None,
            elapsed_ms: None,
        });
        self.records.last_mut().unwrap()
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    pub fn mismatches(&self) -> usize {
        self.records.iter().filter(|r| !r.matched).count()
    }

    pub fn passed(&self) -> bool {
        self.mismatches() == 0
    }

    pub fn summary(&self) -> Summary {
        Summary {
            summary: true,
            task: self.task.clone(),
            records: self.records.len(),
            mismatches: self.mismatches(),
            status: if self.passed() { "pass" } else { "fail" },
            seed: self.seed,
            precision: self.precision,
        }
    }

    pub fn write_json_lines<W: Write>(&self, mut w: W) -> io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut w, r)?;
            writeln!(w)?;
        }
        serde_json::to_writer(&mut w, &self.summary())?;
        writeln!(w)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.records {
            out.serialize(CsvRow {
                task: &r.task,
                prime: r.prime,
                subject: &r.subject,
                lhs: &r.lhs.value,
                lhs_valuation: r.lhs.valuation,
                rhs: &r.rhs.value,
                rhs_valuation: r.rhs.valuation,
                matched: r.matched,
                note: r.note.as_deref(),
                elapsed_ms: r.elapsed_ms,
            })
            .map_err(io::Error::other)?;
        }
        out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_valuation() {
        assert_eq!(Side::integer(50, 5).valuation, Some(2));
        assert_eq!(Side::integer(-3, 5).valuation, Some(0));
        assert_eq!(Side::integer(0, 5).valuation, None);
    }

    #[test]
    fn empty_report_passes() {
        let r = VerificationReport::new("trace", 2, None);
        assert!(r.passed());
        let mut buf = Vec::new();
        r.write_json_lines(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.contains("\"status\":\"pass\""));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let mut r = VerificationReport::new("trace", 2, Some(7));
        r.push(5, "a=1,b=1", Side::integer(-3, 5), Side::integer(-3, 5), true);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("task,prime,subject"));
        assert_eq!(text.lines().count(), 2);
    }
}
