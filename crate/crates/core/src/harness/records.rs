use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::Method;
use crate::error::{Error, Result};
use crate::metrics::QualityReport;

/// Result of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub graph: String,
    pub method: Method,
    /// Percentile `p` for LR runs, exponent `k` for distance-adjusted runs,
    /// 0 otherwise.
    pub param: u32,
    pub seed: u64,
    pub elapsed_s: f64,
    pub report: QualityReport,
}

impl TrialRecord {
    pub fn key(&self) -> (&str, Method, u32, u64) {
        (&self.graph, self.method, self.param, self.seed)
    }
}

/// Column order of the CSV schema.
pub const COLUMNS: [&str; 14] =
    ["graph", "method", "param", "seed", "elapsed_s", "stress", "il", "np", "cn", "ca", "ar", "anr", "nr", "gb"];

/// Rounds to 9 significant digits.
pub fn round_sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

fn fmt_float(x: f64) -> String {
    format!("{:?}", round_sig9(x))
}

#[derive(Serialize, Deserialize)]
struct FlatRecord {
    graph: String,
    method: String,
    param: u32,
    seed: u64,
    elapsed_s: f64,
    stress: f64,
    il: f64,
    np: f64,
    cn: u64,
    ca: f64,
    ar: f64,
    anr: f64,
    nr: f64,
    gb: f64,
}

impl From<&TrialRecord> for FlatRecord {
    fn from(r: &TrialRecord) -> Self {
        let q = &r.report;
        Self {
            graph: r.graph.clone(),
            method: r.method.to_string(),
            param: r.param,
            seed: r.seed,
            elapsed_s: round_sig9(r.elapsed_s),
            stress: round_sig9(q.stress),
            il: round_sig9(q.ideal_edge_lengths),
            np: round_sig9(q.neighborhood_preservation),
            cn: q.crossing_number,
            ca: round_sig9(q.crossing_angle),
            ar: round_sig9(q.aspect_ratio),
            anr: round_sig9(q.angular_resolution),
            nr: round_sig9(q.node_resolution),
            gb: round_sig9(q.gabriel_property),
        }
    }
}

impl TryFrom<FlatRecord> for TrialRecord {
    type Error = Error;

    fn try_from(f: FlatRecord) -> Result<Self> {
        Ok(Self {
            graph: f.graph,
            method: f.method.parse()?,
            param: f.param,
            seed: f.seed,
            elapsed_s: f.elapsed_s,
            report: QualityReport {
                stress: f.stress,
                ideal_edge_lengths: f.il,
                neighborhood_preservation: f.np,
                crossing_number: f.cn,
                crossing_angle: f.ca,
                aspect_ratio: f.ar,
                angular_resolution: f.anr,
                node_resolution: f.nr,
                gabriel_property: f.gb,
            },
        })
    }
}

/// Output format for [`write_records`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFormat {
    Csv,
    Json,
}

impl RecordFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

impl std::str::FromStr for RecordFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Config(format!("unknown record format '{other}'"))),
        }
    }
}

/// Writes records with every float rounded to 9 significant digits, so a
/// read-write cycle reproduces the bytes exactly.
pub fn write_records<W: Write>(records: &[TrialRecord], format: RecordFormat, out: W) -> Result<()> {
    match format {
        RecordFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(COLUMNS)?;
            for r in records {
                let q = &r.report;
                let mut row = vec![
                    r.graph.clone(),
                    r.method.to_string(),
                    r.param.to_string(),
                    r.seed.to_string(),
                    fmt_float(r.elapsed_s),
                ];
                for (field, v) in QualityReport::FIELDS.iter().zip(q.values()) {
                    row.push(if *field == "cn" { q.crossing_number.to_string() } else { fmt_float(v) });
                }
                w.write_record(&row)?;
            }
            w.flush()?;
        }
        RecordFormat::Json => {
            let flat: Vec<FlatRecord> = records.iter().map(FlatRecord::from).collect();
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &flat)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn read_records<R: Read>(format: RecordFormat, input: R) -> Result<Vec<TrialRecord>> {
    match format {
        RecordFormat::Csv => {
            let mut rd = csv::Reader::from_reader(input);
            let header: Vec<String> = rd.headers()?.iter().map(str::to_owned).collect();
            if header != COLUMNS {
                return Err(Error::Records(format!("unexpected header {header:?}")));
            }
            rd.deserialize::<FlatRecord>().map(|row| TrialRecord::try_from(row?)).collect()
        }
        RecordFormat::Json => {
            let flat: Vec<FlatRecord> = serde_json::from_reader(input)?;
            flat.into_iter().map(TrialRecord::try_from).collect()
        }
    }
}
