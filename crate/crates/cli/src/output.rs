//! CSV and JSON payloads. CSV rows carry data only so they are byte-stable;
//! JSON adds run metadata, including wall time.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use cooccur::continuous::Estimate;
use cooccur::{CooccurrenceCurve, GapHistogram};
use serde::Serialize;

use crate::args::OutputKind;
use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct Meta<'a> {
    pub n: usize,
    pub items: &'a [String],
    pub algorithm: &'static str,
    pub wall_time_ms: f64,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Payload<'a> {
    Curve {
        #[serde(flatten)]
        meta: Meta<'a>,
        counts: &'a [u64],
    },
    Histogram {
        #[serde(flatten)]
        meta: Meta<'a>,
        buckets: BTreeMap<usize, i64>,
    },
    SingleCount {
        #[serde(flatten)]
        meta: Meta<'a>,
        window: usize,
        count: u64,
    },
    Probability {
        items: &'a [String],
        algorithm: &'static str,
        wall_time_ms: f64,
        estimate: f64,
        bound: f64,
        x: usize,
        t: f64,
        vacuous: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        exact: Option<f64>,
    },
}

/// `x,count` rows in ascending `x`, one per window length.
pub fn curve_csv(curve: &CooccurrenceCurve) -> String {
    let mut s = String::new();
    for (x, c) in curve.iter() {
        let _ = writeln!(s, "{x},{c}");
    }
    s
}

/// `k,H[k]` rows in ascending `k`, nonzero buckets only.
pub fn hist_csv(hist: &GapHistogram) -> String {
    let mut s = String::new();
    for (k, h) in hist.sorted() {
        let _ = writeln!(s, "{k},{h}");
    }
    s
}

fn emit(out: &mut dyn Write, payload: &Payload<'_>) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, payload).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

pub fn write_curve(
    out: &mut dyn Write,
    kind: OutputKind,
    meta: Meta<'_>,
    curve: &CooccurrenceCurve,
) -> Result<(), CliError> {
    match kind {
        OutputKind::Csv => Ok(out.write_all(curve_csv(curve).as_bytes())?),
        OutputKind::Json => emit(
            out,
            &Payload::Curve {
                meta,
                counts: curve.counts(),
            },
        ),
    }
}

pub fn write_hist(
    out: &mut dyn Write,
    kind: OutputKind,
    meta: Meta<'_>,
    hist: &GapHistogram,
) -> Result<(), CliError> {
    match kind {
        OutputKind::Csv => Ok(out.write_all(hist_csv(hist).as_bytes())?),
        OutputKind::Json => emit(
            out,
            &Payload::Histogram {
                meta,
                buckets: hist.sorted().into_iter().collect(),
            },
        ),
    }
}

pub fn write_count(
    out: &mut dyn Write,
    kind: OutputKind,
    meta: Meta<'_>,
    window: usize,
    count: u64,
) -> Result<(), CliError> {
    match kind {
        OutputKind::Csv => Ok(writeln!(out, "{count}")?),
        OutputKind::Json => emit(
            out,
            &Payload::SingleCount {
                meta,
                window,
                count,
            },
        ),
    }
}

pub fn write_probability(
    out: &mut dyn Write,
    kind: OutputKind,
    items: &[String],
    wall_time_ms: f64,
    est: &Estimate,
    exact: Option<f64>,
) -> Result<(), CliError> {
    match kind {
        OutputKind::Csv => {
            write!(out, "estimate,bound,x,t")?;
            if exact.is_some() {
                write!(out, ",exact")?;
            }
            write!(out, "\n{},{},{},{}", est.estimate, est.bound, est.x, est.t)?;
            if let Some(e) = exact {
                write!(out, ",{e}")?;
            }
            Ok(writeln!(out)?)
        }
        OutputKind::Json => emit(
            out,
            &Payload::Probability {
                items,
                algorithm: "grid_multi_awlco",
                wall_time_ms,
                estimate: est.estimate,
                bound: est.bound,
                x: est.x,
                t: est.t,
                vacuous: est.vacuous,
                exact,
            },
        ),
    }
}
