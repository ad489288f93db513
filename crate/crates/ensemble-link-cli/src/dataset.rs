//! Sweep grids, CSV cells, and residual bookkeeping for scenario datasets.

use std::fmt::{self, Write as _};

use serde::Deserialize;

/// Inclusive linear grid over one swept variable.
///
/// `steps` counts the evaluation points; a single step collapses the grid to
/// its start value.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Range {
    /// Rejects non-finite endpoints, reversed bounds, and empty grids.
    pub fn validate(&self, name: &str) -> Result<(), String> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(format!("range `{name}`: endpoints must be finite"));
        }
        if self.stop < self.start {
            return Err(format!(
                "range `{name}`: stop {} below start {}",
                self.stop, self.start
            ));
        }
        if self.steps == 0 {
            return Err(format!("range `{name}`: steps must be at least 1"));
        }
        Ok(())
    }

    /// Grid point `index`, with the endpoints reproduced exactly.
    pub fn value(&self, index: usize) -> f64 {
        debug_assert!(index < self.steps);
        if self.steps == 1 || index == 0 {
            self.start
        } else if index == self.steps - 1 {
            self.stop
        } else {
            self.start + (self.stop - self.start) * index as f64 / (self.steps - 1) as f64
        }
    }

    /// Number of grid points.
    pub fn points(&self) -> usize {
        self.steps
    }

    /// All grid points in sweep order.
    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

/// One CSV field: a finite number, or the `undef` marker used for
/// conditional quantities that have no defined value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Value(f64),
    Undef,
}

impl Cell {
    /// Wraps a metric that is only sometimes defined; `None` and non-finite
    /// values both render as `undef`, keeping `NaN` and `inf` out of the
    /// output.
    pub fn optional(value: Option<f64>) -> Self {
        match value {
            Some(v) if v.is_finite() => Cell::Value(v),
            _ => Cell::Undef,
        }
    }

    /// Wraps an always-defined metric (still guarding against non-finite
    /// values).
    pub fn value(value: f64) -> Self {
        Cell::optional(Some(value))
    }

    /// Pass/fail flag column: 1 for pass, 0 for flagged.
    pub fn flag(ok: bool) -> Self {
        Cell::Value(if ok { 1.0 } else { 0.0 })
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Value(v) => write!(f, "{v}"),
            Cell::Undef => f.write_str("undef"),
        }
    }
}

/// Completed sweep: a metadata line, the column names, and one row of cells
/// per sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub metadata: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Dataset {
    /// Renders the dataset as CSV: a `#`-prefixed metadata line, a header
    /// row, and one line per sweep point, all LF-terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.metadata);
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{cell}");
            }
            out.push('\n');
        }
        out
    }
}

/// One oracle-vs-closed-form comparison taken from a single row.
#[derive(Debug, Clone)]
pub struct ResidualSample {
    /// Column-style metric name, e.g. `pnrd_p_herald`.
    pub metric: String,
    /// Absolute difference between the two routes.
    pub residual: f64,
    /// Bound the residual must not exceed.
    pub bound: f64,
}

impl ResidualSample {
    /// Whether the residual respects its bound; a `NaN` residual never does.
    pub fn within(&self) -> bool {
        self.residual <= self.bound
    }
}

/// Per-metric residual statistics accumulated across a sweep, in
/// first-seen metric order.
#[derive(Debug, Clone, Default)]
pub struct ResidualSummary {
    metrics: Vec<MetricStats>,
}

/// Residual statistics of one metric.
#[derive(Debug, Clone)]
pub struct MetricStats {
    pub metric: String,
    pub count: usize,
    pub max: f64,
    pub sum: f64,
    pub breaches: usize,
}

impl MetricStats {
    /// Mean residual over the recorded rows.
    pub fn mean(&self) -> f64 {
        self.sum / self.count as f64
    }
}

impl ResidualSummary {
    /// Folds one sample into the statistics of its metric.
    pub fn record(&mut self, sample: &ResidualSample) {
        let stats = match self.metrics.iter_mut().find(|m| m.metric == sample.metric) {
            Some(stats) => stats,
            None => {
                self.metrics.push(MetricStats {
                    metric: sample.metric.clone(),
                    count: 0,
                    max: 0.0,
                    sum: 0.0,
                    breaches: 0,
                });
                self.metrics.last_mut().expect("just pushed")
            }
        };
        stats.count += 1;
        stats.max = stats.max.max(sample.residual);
        stats.sum += sample.residual;
        if !sample.within() {
            stats.breaches += 1;
        }
    }

    /// Statistics per metric, in first-seen order.
    pub fn metrics(&self) -> &[MetricStats] {
        &self.metrics
    }

    /// Total bound violations across all metrics.
    pub fn breaches(&self) -> usize {
        self.metrics.iter().map(|m| m.breaches).sum()
    }
}
