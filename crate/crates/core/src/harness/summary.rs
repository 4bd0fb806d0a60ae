use std::collections::BTreeMap;
use std::io::Write;

use super::{Method, TrialRecord};
use crate::error::Result;
use crate::metrics::QualityReport;

/// Five-number summary plus mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

/// Quantile with linear interpolation between order statistics
/// (`h = (n - 1) q`). `sorted` must be ascending and nonempty.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

impl BoxStats {
    /// `None` for an empty sample.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Some(Self {
            min: v[0],
            q1: quantile(&v, 0.25),
            median: quantile(&v, 0.5),
            q3: quantile(&v, 0.75),
            max: v[v.len() - 1],
            mean: v.iter().sum::<f64>() / v.len() as f64,
        })
    }
}

/// Statistics of every metric for one (graph, method, parameter) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionSummary {
    pub graph: String,
    pub method: Method,
    pub param: u32,
    pub count: usize,
    /// In [`QualityReport::FIELDS`] order.
    pub metrics: Vec<(&'static str, BoxStats)>,
}

impl ConditionSummary {
    pub fn stats(&self, field: &str) -> Option<&BoxStats> {
        self.metrics.iter().find(|(f, _)| *f == field).map(|(_, s)| s)
    }
}

/// Groups records by condition, sorted by (graph, method, param).
pub fn summarize(records: &[TrialRecord]) -> Vec<ConditionSummary> {
    let mut groups: BTreeMap<(&str, Method, u32), Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((&r.graph, r.method, r.param)).or_default().push(r);
    }
    groups
        .into_iter()
        .filter_map(|((graph, method, param), rs)| {
            let metrics: Option<Vec<_>> = QualityReport::FIELDS
                .iter()
                .enumerate()
                .map(|(k, &field)| {
                    let values: Vec<f64> = rs.iter().map(|r| r.report.values()[k]).collect();
                    BoxStats::from_values(&values).map(|s| (field, s))
                })
                .collect();
            if metrics.is_none() {
                log::warn!("no records for {graph}/{method}/{param}; omitted from summary");
            }
            Some(ConditionSummary { graph: graph.to_owned(), method, param, count: rs.len(), metrics: metrics? })
        })
        .collect()
}

pub fn write_summary_csv<W: Write>(summaries: &[ConditionSummary], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["graph", "method", "param", "metric", "count", "min", "q1", "median", "q3", "max", "mean"])?;
    for s in summaries {
        for (field, b) in &s.metrics {
            let mut row = vec![s.graph.clone(), s.method.to_string(), s.param.to_string(), field.to_string()];
            row.push(s.count.to_string());
            for v in [b.min, b.q1, b.median, b.q3, b.max, b.mean] {
                row.push(format!("{:?}", super::records::round_sig9(v)));
            }
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Median of one metric in one condition compared to the baseline
/// condition (parameter 0) of the same graph and method.
#[derive(Debug, Clone, PartialEq)]
pub struct Improvement {
    pub graph: String,
    pub method: Method,
    pub param: u32,
    pub metric: &'static str,
    pub baseline_median: f64,
    pub median: f64,
    /// Relative change in the metric's preferred direction; positive is
    /// better.
    pub relative_gain: f64,
    pub improved: bool,
}

/// Flags conditions whose median beats the parameter-0 median by at least
/// `threshold` (relative, e.g. 0.1 for 10%).
pub fn compare_to_baseline(summaries: &[ConditionSummary], threshold: f64) -> Vec<Improvement> {
    let mut out = Vec::new();
    for s in summaries.iter().filter(|s| s.param != 0) {
        let Some(base) = summaries.iter().find(|b| b.graph == s.graph && b.method == s.method && b.param == 0) else {
            continue;
        };
        for &(metric, stats) in &s.metrics {
            let Some(b) = base.stats(metric) else { continue };
            let delta =
                if QualityReport::higher_is_better(metric) { stats.median - b.median } else { b.median - stats.median };
            let relative_gain = if b.median != 0.0 {
                delta / b.median.abs()
            } else if delta > 0.0 {
                f64::INFINITY
            } else {
                0.0
            };
            out.push(Improvement {
                graph: s.graph.clone(),
                method: s.method,
                param: s.param,
                metric,
                baseline_median: b.median,
                median: stats.median,
                relative_gain,
                improved: relative_gain >= threshold,
            });
        }
    }
    out
}

pub fn write_improvements_csv<W: Write>(rows: &[Improvement], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["graph", "method", "param", "metric", "baseline_median", "median", "relative_gain", "improved"])?;
    for r in rows {
        w.write_record([
            r.graph.clone(),
            r.method.to_string(),
            r.param.to_string(),
            r.metric.to_string(),
            format!("{:?}", super::records::round_sig9(r.baseline_median)),
            format!("{:?}", super::records::round_sig9(r.median)),
            format!("{:?}", super::records::round_sig9(r.relative_gain)),
            r.improved.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
