use super::experiment::Algorithm;
use super::io::{write_bytes, IoError};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// JSON schema of the report written by [`emit_report`].
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

/// Reals are written as JSON numbers; infinities as the strings `"inf"` and
/// `"-inf"`.
mod real {
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn to_text(v: f64) -> String {
        if v == f64::INFINITY {
            "inf".into()
        } else if v == f64::NEG_INFINITY {
            "-inf".into()
        } else {
            v.to_string()
        }
    }

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) if x.is_finite() => s.serialize_f64(*x),
            Some(x) => s.serialize_str(&to_text(*x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        match Option::<Repr>::deserialize(d)? {
            None => Ok(None),
            Some(Repr::Num(x)) => Ok(Some(x)),
            Some(Repr::Text(t)) => match t.as_str() {
                "inf" => Ok(Some(f64::INFINITY)),
                "-inf" => Ok(Some(f64::NEG_INFINITY)),
                other => Err(serde::de::Error::custom(format!("not a number: {other}"))),
            },
        }
    }
}

/// Outcome of one algorithm at one `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub k: usize,
    pub algorithm: Algorithm,
    /// `ok`, `infeasible` or `error`.
    pub status: String,
    pub message: Option<String>,
    #[serde(with = "real")]
    pub cost: Option<f64>,
    #[serde(with = "real")]
    pub pof: Option<f64>,
    #[serde(with = "real")]
    pub gf_violation: Option<f64>,
    pub ds_violation: Option<usize>,
    pub centers: Option<usize>,
    pub inactive_centers: Option<usize>,
    #[serde(with = "real")]
    pub socially_fair_cost: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub n: usize,
    pub m: usize,
    pub color_counts: Vec<usize>,
    pub delta: f64,
    pub theta: f64,
    pub p: u32,
    pub seed: u64,
    pub k_values: Vec<usize>,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

const CSV_HEADER: [&str; 11] = [
    "k",
    "algorithm",
    "status",
    "cost",
    "pof",
    "gf_violation",
    "ds_violation",
    "centers",
    "inactive_centers",
    "socially_fair_cost",
    "message",
];

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        let real = |v: Option<f64>| v.map(real::to_text).unwrap_or_default();
        let int = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.k.to_string(),
                r.algorithm.name().to_string(),
                r.status.clone(),
                real(r.cost),
                real(r.pof),
                real(r.gf_violation),
                int(r.ds_violation),
                int(r.centers),
                int(r.inactive_centers),
                real(r.socially_fair_cost),
                r.message.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    /// The row for `algorithm` at `k`, if present.
    pub fn row(&self, k: usize, algorithm: Algorithm) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.k == k && r.algorithm == algorithm)
    }
}

pub fn emit_report(report: &Report, path: &Path, format: ReportFormat) -> Result<(), IoError> {
    let text = match format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => report.to_csv(),
    };
    write_bytes(path, text.as_bytes())
}
