//! CSV and JSON file formats.
//!
//! Every float goes through [`fmt_float`]: 17 significant digits, with
//! infinities written as `inf`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::IterationRecord;
use crate::format::{float17, fmt_float, parse_float};
use crate::kernels::{KernelFamily, KernelSpec};
use crate::oscillator::{OscillatorParams, SamplingPlan, TrainingSet};
use crate::risk::RiskReport;
use crate::scalar::Real;
use crate::srm::SelectionResult;

pub const TRAINING_CSV_HEADER: [&str; 3] = ["t", "y", "true_h"];
pub const RISK_CSV_HEADER: [&str; 8] = ["kernel", "n", "h", "p", "delta", "emp_risk", "bound", "clipped"];
pub const SPEC_CSV_COLUMNS: [&str; 5] = ["sigma_f", "length_scale", "m", "c", "k"];
pub const RECORDS_CSV_HEADER: [&str; 18] = [
    "n", "iteration", "seed", "family", "sigma_f", "length_scale", "m", "c", "k", "sigma_n",
    "emp_risk", "h", "p", "delta", "bound", "clipped", "degenerate", "true_mse",
];

/// CSV text with `\n` line endings.
pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn read_rows(text: &str, header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let got: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if got != header {
        return Err(Error::Parse(format!("unexpected CSV header {got:?}, expected {header:?}")));
    }
    r.records().map(|row| row.map_err(Error::from)).collect()
}

fn field(row: &csv::StringRecord, i: usize) -> Result<&str> {
    row.get(i).ok_or_else(|| Error::Parse(format!("missing column {i}")))
}

fn float_field(row: &csv::StringRecord, i: usize) -> Result<f64> {
    parse_float(field(row, i)?)
}

fn int_field<N: std::str::FromStr>(row: &csv::StringRecord, i: usize) -> Result<N> {
    let s = field(row, i)?;
    s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

fn bool_field(row: &csv::StringRecord, i: usize) -> Result<bool> {
    match field(row, i)? {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(Error::Parse(format!("bad boolean {other:?}"))),
    }
}

fn opt_float(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

/// `t,y,true_h` rows.
pub fn training_csv<T: Real>(set: &TrainingSet<T>) -> Result<String> {
    let rows = (0..set.len()).map(|i| {
        vec![
            fmt_float(set.t()[i].as_f64()),
            fmt_float(set.y()[i].as_f64()),
            fmt_float(set.true_h()[i].as_f64()),
        ]
    });
    csv_table(&TRAINING_CSV_HEADER, rows)
}

/// Parses `t,y,true_h` rows into three columns.
pub fn parse_training_csv(text: &str) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let mut cols = (Vec::new(), Vec::new(), Vec::new());
    for row in read_rows(text, &TRAINING_CSV_HEADER)? {
        cols.0.push(float_field(&row, 0)?);
        cols.1.push(float_field(&row, 1)?);
        cols.2.push(float_field(&row, 2)?);
    }
    Ok(cols)
}

/// JSON form of a training set with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingSetFile {
    pub params: OscillatorParams<f64>,
    pub plan: SamplingPlan,
    pub n: usize,
    #[serde(with = "float17")]
    pub sigma_n: f64,
    pub seed: u64,
    #[serde(with = "float17::vec")]
    pub t: Vec<f64>,
    #[serde(with = "float17::vec")]
    pub y: Vec<f64>,
    #[serde(with = "float17::vec")]
    pub true_h: Vec<f64>,
}

impl TrainingSetFile {
    pub fn new(set: &TrainingSet<f64>, params: &OscillatorParams<f64>, plan: &SamplingPlan) -> Self {
        Self {
            params: *params,
            plan: plan.clone(),
            n: set.len(),
            sigma_n: set.sigma_n(),
            seed: set.seed(),
            t: set.t().to_vec(),
            y: set.y().to_vec(),
            true_h: set.true_h().to_vec(),
        }
    }

    pub fn training_set(&self) -> Result<TrainingSet<f64>> {
        TrainingSet::new(self.t.clone(), self.y.clone(), self.true_h.clone(), self.sigma_n, self.seed)
    }
}

/// One row in the `kernel,n,h,p,delta,emp_risk,bound,clipped` format.
pub fn risk_row<T: Real>(kernel: &str, r: &RiskReport<T>) -> Vec<String> {
    vec![
        kernel.to_string(),
        r.n.to_string(),
        fmt_float(r.h.as_f64()),
        fmt_float(r.p.as_f64()),
        fmt_float(r.delta.as_f64()),
        fmt_float(r.empirical_risk.as_f64()),
        fmt_float(r.bound.as_f64()),
        r.clipped.to_string(),
    ]
}

pub fn risk_csv<T: Real>(kernel: &str, r: &RiskReport<T>) -> Result<String> {
    csv_table(&RISK_CSV_HEADER, [risk_row(kernel, r)])
}

fn spec_columns<T: Real>(spec: &KernelSpec<T>) -> Vec<String> {
    let osc = spec.oscillator();
    vec![
        fmt_float(spec.sigma_f().as_f64()),
        opt_float(spec.length_scale().map(Real::as_f64)),
        opt_float(osc.map(|p| p.m().as_f64())),
        opt_float(osc.map(|p| p.c().as_f64())),
        opt_float(osc.map(|p| p.k().as_f64())),
    ]
}

/// Selection traces: the risk row of every candidate followed by its
/// hyperparameters, structures in the order given.
pub fn trace_csv<T: Real>(results: &[SelectionResult<T>]) -> Result<String> {
    let header: Vec<&str> = RISK_CSV_HEADER.iter().chain(&SPEC_CSV_COLUMNS).copied().collect();
    let rows = results.iter().flat_map(|r| &r.trace).map(|e| {
        let mut row = risk_row(e.spec.family().as_str(), &e.report);
        row.extend(spec_columns(&e.spec));
        row
    });
    csv_table(&header, rows)
}

pub fn records_csv(records: &[IterationRecord]) -> Result<String> {
    let rows = records.iter().map(|r| {
        let mut row = vec![
            r.n.to_string(),
            r.iteration.to_string(),
            r.seed.to_string(),
            r.family.as_str().to_string(),
        ];
        row.extend(spec_columns(&r.chosen_spec));
        row.extend([
            fmt_float(r.sigma_n),
            fmt_float(r.emp_risk),
            fmt_float(r.h),
            fmt_float(r.p),
            fmt_float(r.delta),
            fmt_float(r.bound),
            r.clipped.to_string(),
            r.degenerate.to_string(),
            fmt_float(r.true_mse),
        ]);
        row
    });
    csv_table(&RECORDS_CSV_HEADER, rows)
}

/// Parses a records file. A file with a valid header but no rows is an error.
pub fn parse_records_csv(text: &str) -> Result<Vec<IterationRecord>> {
    let rows = read_rows(text, &RECORDS_CSV_HEADER)?;
    if rows.is_empty() {
        return Err(Error::Parse("records file holds no records (0 parsed)".into()));
    }
    rows.iter()
        .enumerate()
        .map(|(line, row)| parse_record(row).map_err(|e| Error::Parse(format!("record {}: {e}", line + 1))))
        .collect()
}

fn parse_record(row: &csv::StringRecord) -> Result<IterationRecord> {
    if row.len() != RECORDS_CSV_HEADER.len() {
        return Err(Error::Parse(format!("expected {} fields, got {}", RECORDS_CSV_HEADER.len(), row.len())));
    }
    let family: KernelFamily = field(row, 3)?.parse()?;
    let sigma_f = float_field(row, 4)?;
    let chosen_spec = match family {
        KernelFamily::Se => KernelSpec::se(sigma_f, float_field(row, 5)?)?,
        KernelFamily::Sdof => KernelSpec::sdof(
            sigma_f,
            OscillatorParams::new(float_field(row, 6)?, float_field(row, 7)?, float_field(row, 8)?)?,
        )?,
    };
    Ok(IterationRecord {
        n: int_field(row, 0)?,
        iteration: int_field(row, 1)?,
        seed: int_field(row, 2)?,
        family,
        chosen_spec,
        sigma_n: float_field(row, 9)?,
        emp_risk: float_field(row, 10)?,
        h: float_field(row, 11)?,
        p: float_field(row, 12)?,
        delta: float_field(row, 13)?,
        bound: float_field(row, 14)?,
        clipped: bool_field(row, 15)?,
        degenerate: bool_field(row, 16)?,
        true_mse: float_field(row, 17)?,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<S: Serialize>(value: &S) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, text)?;
    Ok(())
}
